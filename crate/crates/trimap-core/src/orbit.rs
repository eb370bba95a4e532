//! Orbit iteration for the non-autonomous equation `X_{n+1} = F_{i+n}(X_n)`.

use serde::Serialize;

use crate::error::CoreError;
use crate::point::Point;
use crate::system::TriangularSystem;

/// Convergence is judged fiber-wise: the orbit has settled once `X_n` and
/// `X_{n+p}` agree within `tol` in max-norm, p the system period.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvergenceRule {
    pub tol: f64,
}

impl Default for ConvergenceRule {
    fn default() -> Self {
        ConvergenceRule { tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum OrbitStatus {
    /// `step` is the first index n with `‖X_{n+p} - X_n‖ < tol`; a constant
    /// orbit from a common fixed point converges at step 0.
    Converged { step: usize },
    /// Ran the full requested step budget without settling.
    MaxSteps,
    /// Left the domain box through a finite bound; the exiting point is the
    /// last trajectory entry. `step` and `coordinate` are 1-based.
    Escaped { step: usize, coordinate: usize },
    /// Iteration produced NaN/inf; the trajectory is truncated before the
    /// offending point.
    NumericalFailure { step: usize, coordinate: usize },
}

/// A finite trajectory together with how it ended.
#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    start_phase: usize,
    system_period: usize,
    trajectory: Vec<Point>,
    status: OrbitStatus,
}

impl Orbit {
    pub fn start_phase(&self) -> usize {
        self.start_phase
    }

    /// Period of the generating system (needed by tail analysis).
    pub fn system_period(&self) -> usize {
        self.system_period
    }

    pub fn trajectory(&self) -> &[Point] {
        &self.trajectory
    }

    pub fn status(&self) -> &OrbitStatus {
        &self.status
    }

    pub fn converged(&self) -> bool {
        matches!(self.status, OrbitStatus::Converged { .. })
    }

    pub fn escaped(&self) -> bool {
        matches!(
            self.status,
            OrbitStatus::Escaped { .. } | OrbitStatus::NumericalFailure { .. }
        )
    }

    pub fn last(&self) -> &Point {
        self.trajectory.last().expect("orbit stores x0")
    }
}

/// Iterate `x0` from `phase` for at most `steps` steps.
///
/// The starting point must lie in the domain box. Later exits through a
/// finite bound are flagged as escape; non-finite values as numerical
/// failure. Neither is an `Err`: both truncate the orbit.
pub fn iterate_orbit(
    system: &TriangularSystem,
    x0: &Point,
    phase: usize,
    steps: usize,
    rule: ConvergenceRule,
) -> Result<Orbit, CoreError> {
    if phase >= system.period() {
        return Err(CoreError::InvalidPhase {
            phase,
            period: system.period(),
        });
    }
    if x0.dim() != system.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: system.dimension(),
            got: x0.dim(),
        });
    }
    if let Some(coordinate) = system.domain().first_violation(x0) {
        return Err(CoreError::OutOfDomain { coordinate });
    }

    let p = system.period();
    let mut trajectory = Vec::with_capacity(steps.min(4096) + 1);
    trajectory.push(x0.clone());
    let mut status = OrbitStatus::MaxSteps;

    for n in 0..steps {
        let next = match system.map(phase + n).evaluate(&trajectory[n]) {
            Ok(pt) => pt,
            Err(CoreError::NonFinite { coordinate }) => {
                status = OrbitStatus::NumericalFailure {
                    step: n + 1,
                    coordinate,
                };
                break;
            }
            Err(e) => return Err(e),
        };
        if let Some(coordinate) = system.domain().first_violation(&next) {
            trajectory.push(next);
            status = OrbitStatus::Escaped {
                step: n + 1,
                coordinate,
            };
            break;
        }
        trajectory.push(next);
        let m = n + 1;
        if m >= p && trajectory[m].max_norm_dist(&trajectory[m - p]) < rule.tol {
            status = OrbitStatus::Converged { step: m - p };
            break;
        }
    }

    Ok(Orbit {
        start_phase: phase,
        system_period: p,
        trajectory,
        status,
    })
}
