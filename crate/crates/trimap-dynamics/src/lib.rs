//! Fixed-point location, spectral classification, and global-dynamics
//! checks for periodic triangular systems.
//!
//! The analysis pipeline: build a window composition with `trimap-core`,
//! locate its fixed points with the coordinate cascade
//! ([`cascade_fixed_points`]), read the spectrum off the lower-triangular
//! chain-rule Jacobian ([`jacobian`] + [`classify_spectrum`]), label each
//! orbit against the scenario taxonomy ([`find_periodic_orbits`],
//! [`scenario_classify`]), and decide global dynamics either by the
//! [`period2_absence_test`] or empirically by basin sampling
//! ([`verify_global_convergence`]).
//!
//! Everything is a pure function of immutable inputs; grid scans fan their
//! independent cells out to rayon and merge deterministically.

mod convergence;
mod cycles;
mod error;
mod jacobian;
mod matrix;
mod omega;
mod period2;
mod solver;
mod spectrum;

pub use convergence::{
    grid_samples, verify_global_convergence, verify_global_convergence_at, ConvergenceReport,
    ConvergenceSettings, SampleOutcome,
};
pub use cycles::{
    find_fixed_points, find_periodic_orbits, scenario_classify, subharmonic_window_residuals,
    CycleRecord, FixedPointScan, Scenario, PERIOD_MATCH_TOL,
};
pub use error::DynamicsError;
pub use jacobian::{jacobian, map_jacobian};
pub use matrix::LowerTriangular;
pub use omega::{omega_limit_estimate, OmegaCluster, OmegaEstimate};
pub use period2::{coppel_1d_test, period2_absence_test, CoppelVerdict, Period2Report, KNOWN_POINT_TOL};
pub use solver::{
    cascade_fixed_points, scalar_roots, CascadeOptions, CascadeScan, ScalarScan,
    DEFAULT_DEDUP_TOL, DEFAULT_NEWTON_TOL,
};
pub use spectrum::{classify_spectrum, SpectrumClassification, StabilityVerdict, DEFAULT_CENTER_TOL};
