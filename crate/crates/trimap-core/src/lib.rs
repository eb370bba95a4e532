//! Core types for p-periodic non-autonomous triangular maps.
//!
//! A map `F: R^k -> R^k` is triangular when its j-th coordinate function
//! depends only on the first j coordinates, so its Jacobian is lower
//! triangular. This crate represents such maps coordinate-by-coordinate
//! (each evaluator literally receives only its first j inputs), assembles
//! them into periodic systems `X_{n+1} = F_{n mod p}(X_n)`, folds window
//! compositions `Φ_{L,i}`, and iterates orbits with fiber-wise convergence
//! detection.
//!
//! All types are immutable after construction and evaluation is pure, so
//! everything here is safe to share across worker threads.

mod compose;
mod error;
mod map;
mod orbit;
mod point;
mod system;

pub use compose::{compose, CompositionOperator, Iterated, TriangularOperator};
pub use error::CoreError;
pub use map::{CoordFn, CoordinateMap, TriangularMap};
pub use orbit::{iterate_orbit, ConvergenceRule, Orbit, OrbitStatus};
pub use point::{max_norm_dist, DomainBox, Point};
pub use system::{system_period, SystemWarning, TriangularSystem};
