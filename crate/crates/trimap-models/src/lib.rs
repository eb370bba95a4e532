//! The three worked models bundled as oracles: a periodic Leslie-Gower
//! competition model, a periodic triangular logistic-type map, and a
//! periodic Ricker-type model with a k-dimensional generalization.
//!
//! Each module exposes the system constructor, the closed-form fixed
//! points/cycles the model admits, the displayed spectra, and the
//! stability-region predicates the scans reproduce. Closed forms are the
//! reference values the numerical pipeline is tested against.

mod error;
mod kahan;
pub mod leslie_gower;
pub mod logistic;
pub mod ricker;

pub use error::ModelError;
pub use leslie_gower::{
    coexistence_margin, leslie_gower_cycles, leslie_gower_spectra, leslie_gower_system,
    saddle_quotient, LeslieGowerCycles, LeslieGowerParams, LeslieGowerSpectra,
};
pub use logistic::{
    delta1, delta2, individual_fixed_points, individual_regions, lambda_x, lambda_y_e1,
    lambda_y_e2, logistic_composition_fixed_points, logistic_spectra_and_regions,
    logistic_system, reality_polynomial, x_star, IndividualFixedPoints, IndividualRegions,
    LogisticFixedPoints, LogisticParams, LogisticReport, Provenance,
};
pub use ricker::{c_star, ricker_stability, ricker_system, CStarReport, RickerParams};
