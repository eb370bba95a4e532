//! Locating and labelling periodic orbits.

use num_integer::Integer;
use serde::Serialize;
use trimap_core::{compose, CompositionOperator, DomainBox, Point, TriangularOperator, TriangularSystem};

use crate::error::DynamicsError;
use crate::jacobian::jacobian;
use crate::solver::{cascade_fixed_points, CascadeOptions};
use crate::spectrum::{classify_spectrum, SpectrumClassification, DEFAULT_CENTER_TOL};

/// Tolerance used when comparing orbit points for period detection and for
/// the common-fixed-point check.
pub const PERIOD_MATCH_TOL: f64 = 1e-7;

/// The taxonomy of periodic behaviour in a p-periodic system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scenario {
    /// q = 1 and the point is fixed by every map of the sequence.
    CommonFixedPoint,
    /// Prime period q with mq = p for some m >= 2.
    Cycle { m: usize },
    /// Prime period q equal to the system period p.
    GeometricCycle,
    /// Prime period exceeding p (fixed point of a longer window).
    SuperPeriod,
    /// Outside the taxonomy: q < p with q not dividing p, or a fixed point
    /// of a window shorter than the full period that is not a system cycle.
    /// Arises only for degenerate period declarations or partial windows.
    Irregular,
}

/// A located periodic orbit: the phase it was solved at, the window length
/// of the composition it is a fixed point of, its detected prime period,
/// the orbit points with per-point residuals, and the spectrum of the
/// window composition at the first point.
#[derive(Clone, Debug, Serialize)]
pub struct CycleRecord {
    pub phase: usize,
    pub window: usize,
    pub period: usize,
    pub points: Vec<Point>,
    pub residuals: Vec<f64>,
    pub scenario: Scenario,
    pub spectrum: SpectrumClassification,
}

impl CycleRecord {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Representative point (phase slot 0).
    pub fn anchor(&self) -> &Point {
        &self.points[0]
    }
}

/// Result of a fixed-point search.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointScan {
    pub records: Vec<CycleRecord>,
    /// More than half the grid cells produced roots in some coordinate;
    /// `records` is a flagged partial list (identity-like operator).
    pub degenerate: bool,
    pub grid_density: usize,
}

/// Smallest divisor d of `window` such that the stored window trajectory
/// repeats with lag d everywhere (within `PERIOD_MATCH_TOL`). Ascending
/// order makes ties resolve toward the smaller period.
fn minimal_period(states: &[Point], window: usize) -> usize {
    let mut divisors: Vec<usize> = (1..=window).filter(|d| window.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    'outer: for &d in &divisors {
        for t in 0..states.len() - d {
            if states[t + d].max_norm_dist(&states[t]) > PERIOD_MATCH_TOL {
                continue 'outer;
            }
        }
        return d;
    }
    window
}

fn label_scenario(system: &TriangularSystem, q: usize, x: &Point) -> Scenario {
    let p = system.period();
    if q == 1 {
        let common = (0..p).all(|n| {
            system
                .map(n)
                .evaluate(x)
                .map(|y| y.max_norm_dist(x) < PERIOD_MATCH_TOL)
                .unwrap_or(false)
        });
        if common {
            return Scenario::CommonFixedPoint;
        }
        // fixed within the solved window but not by the whole sequence:
        // a window shorter than the full period saw only some of the maps
        return Scenario::Irregular;
    }
    if q == p {
        Scenario::GeometricCycle
    } else if q < p && p.is_multiple_of(q) {
        Scenario::Cycle { m: p / q }
    } else if q > p {
        Scenario::SuperPeriod
    } else {
        Scenario::Irregular
    }
}

/// Classify an already-located record against the system taxonomy.
pub fn scenario_classify(system: &TriangularSystem, record: &CycleRecord) -> Scenario {
    label_scenario(system, record.period, record.anchor())
}

fn build_record(
    op: &CompositionOperator,
    root: &Point,
    center_tol: f64,
) -> Result<CycleRecord, DynamicsError> {
    let system = op.system();
    let window = op.length();
    let states = op.trajectory(root)?;
    let q = minimal_period(&states, window);
    let points: Vec<Point> = states[..q].to_vec();
    let mut residuals = Vec::with_capacity(q);
    for (m, pt) in points.iter().enumerate() {
        let shifted = compose(system, (op.phase() + m) % system.period(), window)?;
        residuals.push(shifted.evaluate(pt)?.max_norm_dist(pt));
    }
    let scenario = label_scenario(system, q, root);
    let spectrum = classify_spectrum(&jacobian(op, root)?, center_tol);
    Ok(CycleRecord {
        phase: op.phase(),
        window,
        period: q,
        points,
        residuals,
        scenario,
        spectrum,
    })
}

/// Residuals of a subharmonic cycle's anchor under each of the m distinct
/// consecutive q-windows (phases i, i+q, ..., i+(m-1)q with mq = p): a
/// genuine q-cycle with mq = p is fixed by every one of them, not just the
/// full-period window. Returns `None` when the record is not a subharmonic
/// cycle.
pub fn subharmonic_window_residuals(
    system: &TriangularSystem,
    record: &CycleRecord,
) -> Result<Option<Vec<f64>>, DynamicsError> {
    let Scenario::Cycle { m } = record.scenario else {
        return Ok(None);
    };
    let q = record.period;
    let anchor = record.anchor();
    // q-periodicity puts the orbit back at the anchor when each window
    // starts, so every window is evaluated at the anchor itself
    let mut residuals = Vec::with_capacity(m);
    for j in 0..m {
        let window = compose(system, (record.phase + j * q) % system.period(), q)?;
        residuals.push(window.evaluate(anchor)?.max_norm_dist(anchor));
    }
    Ok(Some(residuals))
}

/// Locate all fixed points of a window composition inside `search` by the
/// coordinate cascade, and wrap each in a fully classified record.
pub fn find_fixed_points(
    op: &CompositionOperator,
    search: &DomainBox,
    opts: &CascadeOptions,
) -> Result<FixedPointScan, DynamicsError> {
    let scan = cascade_fixed_points(op, search, opts)?;
    let mut records = Vec::with_capacity(scan.points.len());
    for (root, _res) in &scan.points {
        records.push(build_record(op, root, DEFAULT_CENTER_TOL)?);
    }
    Ok(FixedPointScan {
        records,
        degenerate: scan.degenerate,
        grid_density: scan.grid_density,
    })
}

/// True when the two records describe the same orbit: equal periods and
/// point sets matching up to cyclic rotation.
fn same_cycle(a: &CycleRecord, b: &CycleRecord) -> bool {
    a.period == b.period
        && a.points.iter().all(|p| {
            b.points
                .iter()
                .any(|q| p.max_norm_dist(q) < PERIOD_MATCH_TOL)
        })
}

/// Locate orbits of prime period exactly `q` at `phase`: fixed points of
/// the window of length `lcm(q, p)` filtered by detected minimal period.
/// Each orbit is reported once even when several of its points are fixed by
/// the window (all of them are whenever the window length is a multiple of
/// q times the period).
pub fn find_periodic_orbits(
    system: &TriangularSystem,
    phase: usize,
    target_period: usize,
    search: &DomainBox,
    opts: &CascadeOptions,
) -> Result<FixedPointScan, DynamicsError> {
    if target_period == 0 {
        return Err(DynamicsError::ZeroTargetPeriod);
    }
    let window = target_period.lcm(&system.period());
    let op = compose(system, phase, window)?;
    let mut scan = find_fixed_points(&op, search, opts)?;
    scan.records.retain(|r| r.period == target_period);
    let mut unique: Vec<CycleRecord> = Vec::with_capacity(scan.records.len());
    for rec in scan.records.drain(..) {
        if !unique.iter().any(|kept| same_cycle(kept, &rec)) {
            unique.push(rec);
        }
    }
    scan.records = unique;
    Ok(scan)
}
