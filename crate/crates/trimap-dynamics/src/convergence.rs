//! Empirical global-convergence verification by basin sampling.
//!
//! Grid cells are independent and fan out to rayon workers; results are
//! collected in cell order, so the report is reproducible regardless of
//! scheduling.

use rayon::prelude::*;
use serde::Serialize;
use trimap_core::{CoreError, DomainBox, Point, TriangularSystem};

use crate::cycles::CycleRecord;
use crate::error::DynamicsError;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvergenceSettings {
    pub max_iters: usize,
    /// Fiber-wise snapshot tolerance: converged once ‖X_{n} - X_{n-p}‖ < tol.
    pub tol: f64,
    /// Distance under which a settled orbit is matched to a target cycle
    /// point. The snapshot tolerance controls the Cauchy increment, not the
    /// distance to the limit, hence the looser default of sqrt(tol).
    pub assign_tol: f64,
}

impl ConvergenceSettings {
    pub fn new(max_iters: usize, tol: f64) -> Self {
        ConvergenceSettings {
            max_iters,
            tol,
            assign_tol: tol.sqrt(),
        }
    }
}

impl Default for ConvergenceSettings {
    fn default() -> Self {
        ConvergenceSettings::new(10_000, 1e-6)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SampleOutcome {
    /// Settled within `iterations` steps onto target cycle `target`
    /// (index into the target list).
    Assigned { target: usize, iterations: usize },
    /// Settled, but onto a point not within `assign_tol` of any target.
    ConvergedUnassigned { limit: Point, iterations: usize },
    NotConverged { last: Point },
    Escaped { step: usize },
    Failed { step: usize },
    /// Sample outside the system domain; excluded from the denominator.
    OutsideDomain,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub tol: f64,
    pub assign_tol: f64,
    pub max_iters: usize,
    /// One entry per sample, in cell order.
    pub outcomes: Vec<(Point, SampleOutcome)>,
    pub in_domain_samples: usize,
    /// (# samples assigned to a target) / (# samples in domain).
    pub converged_fraction: f64,
}

impl ConvergenceReport {
    pub fn non_convergent(&self) -> impl Iterator<Item = &(Point, SampleOutcome)> {
        self.outcomes.iter().filter(|(_, o)| {
            !matches!(o, SampleOutcome::Assigned { .. } | SampleOutcome::OutsideDomain)
        })
    }
}

fn iterate_sample(
    system: &TriangularSystem,
    targets: &[CycleRecord],
    start: &Point,
    phase: usize,
    settings: &ConvergenceSettings,
) -> SampleOutcome {
    if !system.domain().contains(start) {
        return SampleOutcome::OutsideDomain;
    }
    let p = system.period();
    // ring of the last p states, indexed by step mod p
    let mut ring: Vec<Point> = vec![start.clone(); p];
    let mut cur = start.clone();
    for n in 0..settings.max_iters {
        let next = match system.map(phase + n).evaluate(&cur) {
            Ok(pt) => pt,
            Err(CoreError::NonFinite { .. }) => return SampleOutcome::Failed { step: n + 1 },
            Err(_) => return SampleOutcome::Failed { step: n + 1 },
        };
        if !system.domain().contains(&next) {
            return SampleOutcome::Escaped { step: n + 1 };
        }
        let m = n + 1;
        if m >= p && next.max_norm_dist(&ring[m % p]) < settings.tol {
            let assigned = targets
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let d = t
                        .points
                        .iter()
                        .map(|c| c.max_norm_dist(&next))
                        .fold(f64::INFINITY, f64::min);
                    (i, d)
                })
                .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances"));
            return match assigned {
                Some((i, d)) if d <= settings.assign_tol => SampleOutcome::Assigned {
                    target: i,
                    iterations: m,
                },
                _ => SampleOutcome::ConvergedUnassigned {
                    limit: next,
                    iterations: m,
                },
            };
        }
        ring[m % p] = next.clone();
        cur = next;
    }
    SampleOutcome::NotConverged { last: cur }
}

/// Evenly spaced nodes over `sample_box`, row-major with the last axis
/// varying fastest.
pub fn grid_samples(sample_box: &DomainBox, density: &[usize]) -> Result<Vec<Point>, DynamicsError> {
    if density.len() != sample_box.dim() {
        return Err(DynamicsError::Dimension {
            expected: sample_box.dim(),
            got: density.len(),
        });
    }
    if !sample_box.is_bounded() {
        return Err(DynamicsError::UnboundedSearchBox);
    }
    let axes: Vec<Vec<f64>> = density
        .iter()
        .enumerate()
        .map(|(d, &n)| {
            let (lo, hi) = sample_box.interval(d);
            if n <= 1 {
                vec![0.5 * (lo + hi)]
            } else {
                (0..n)
                    .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                    .collect()
            }
        })
        .collect();
    let total: usize = axes.iter().map(Vec::len).product();
    let mut samples = Vec::with_capacity(total);
    let mut idx = vec![0usize; axes.len()];
    for _ in 0..total {
        samples.push(Point::new(
            idx.iter().enumerate().map(|(d, &i)| axes[d][i]).collect(),
        ));
        for d in (0..axes.len()).rev() {
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(samples)
}

/// Iterate explicit sample points and report how each settles relative to
/// the target cycles.
pub fn verify_global_convergence_at(
    system: &TriangularSystem,
    targets: &[CycleRecord],
    samples: &[Point],
    phase: usize,
    settings: &ConvergenceSettings,
) -> Result<ConvergenceReport, DynamicsError> {
    if !settings.tol.is_finite() || settings.tol <= 0.0 {
        return Err(DynamicsError::BadTolerance { got: settings.tol });
    }
    let outcomes: Vec<(Point, SampleOutcome)> = samples
        .par_iter()
        .map(|s| {
            (
                s.clone(),
                iterate_sample(system, targets, s, phase, settings),
            )
        })
        .collect();

    let in_domain = outcomes
        .iter()
        .filter(|(_, o)| !matches!(o, SampleOutcome::OutsideDomain))
        .count();
    let assigned = outcomes
        .iter()
        .filter(|(_, o)| matches!(o, SampleOutcome::Assigned { .. }))
        .count();
    Ok(ConvergenceReport {
        tol: settings.tol,
        assign_tol: settings.assign_tol,
        max_iters: settings.max_iters,
        outcomes,
        in_domain_samples: in_domain,
        converged_fraction: if in_domain == 0 {
            0.0
        } else {
            assigned as f64 / in_domain as f64
        },
    })
}

/// Grid-sampling wrapper over [`verify_global_convergence_at`].
pub fn verify_global_convergence(
    system: &TriangularSystem,
    targets: &[CycleRecord],
    sample_box: &DomainBox,
    density: &[usize],
    phase: usize,
    settings: &ConvergenceSettings,
) -> Result<ConvergenceReport, DynamicsError> {
    let samples = grid_samples(sample_box, density)?;
    verify_global_convergence_at(system, targets, &samples, phase, settings)
}
