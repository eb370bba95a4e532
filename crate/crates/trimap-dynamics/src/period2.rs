//! The period-2 absence test and Coppel's 1D criterion.
//!
//! Both rest on the same observation: orbits converge globally exactly when
//! the second iterate has no fixed points beyond those of the map itself.
//! The tests here are the numerical surrogate for that computer-algebra
//! step: cascade root isolation on `op∘op = id` followed by deflation of
//! the known fixed points.

use serde::Serialize;
use trimap_core::{DomainBox, Iterated, Point, TriangularOperator};

use crate::error::DynamicsError;
use crate::solver::{cascade_fixed_points, scalar_roots, CascadeOptions};

/// Distance under which a root of the doubled operator is identified with a
/// supplied fixed point.
pub const KNOWN_POINT_TOL: f64 = 1e-7;

/// Outcome of `period2_absence_test`.
#[derive(Clone, Debug, Serialize)]
pub struct Period2Report {
    /// True when no genuine prime-period-2 orbit was found.
    pub absent: bool,
    /// Points w with `op(op(w)) = w` but `op(w) ≠ w`; both points of each
    /// 2-cycle appear.
    pub witnesses: Vec<Point>,
    /// Roots of the doubled equation that are fixed by `op` itself but were
    /// missing from the caller's `known_fixed` list.
    pub unlisted_fixed_points: Vec<Point>,
    /// Grid density used, reported so callers can escalate; absence is only
    /// as good as the grid that produced it.
    pub grid_density: usize,
    pub degenerate: bool,
}

/// Search for prime-period-2 orbits of `op` inside `search`: cascade-solve
/// `op∘op = id` and deflate against `known_fixed`.
pub fn period2_absence_test<T>(
    op: &T,
    known_fixed: &[Point],
    search: &DomainBox,
    opts: &CascadeOptions,
) -> Result<Period2Report, DynamicsError>
where
    T: TriangularOperator,
{
    let doubled = Iterated::new(op, 2);
    let scan = cascade_fixed_points(&doubled, search, opts)?;

    let mut witnesses = Vec::new();
    let mut unlisted = Vec::new();
    for (w, _res) in &scan.points {
        let known = known_fixed
            .iter()
            .any(|f| f.max_norm_dist(w) < KNOWN_POINT_TOL);
        if known {
            continue;
        }
        let image = op.evaluate(w)?;
        if image.max_norm_dist(w) > 10.0 * opts.newton_tol {
            witnesses.push(w.clone());
        } else {
            unlisted.push(w.clone());
        }
    }

    Ok(Period2Report {
        absent: witnesses.is_empty(),
        witnesses,
        unlisted_fixed_points: unlisted,
        grid_density: scan.grid_density,
        degenerate: scan.degenerate,
    })
}

/// Verdict of Coppel's criterion for a continuous interval self-map.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CoppelVerdict {
    /// `f∘f = id` has no roots beyond those of `f = id`: every orbit
    /// converges to a fixed point.
    ConvergesGlobally,
    /// Genuine period-2 points exist.
    Period2Exists { witnesses: Vec<f64> },
    /// Sampling found a point mapped outside the interval; the criterion's
    /// hypothesis fails before anything can be concluded.
    NotSelfMap { input: f64, output: f64 },
}

/// Coppel's test for `f` on `[lo, hi]`: dense root isolation of
/// `f(f(x)) = x`, keeping as witnesses the roots that `f` itself moves.
pub fn coppel_1d_test<F>(
    f: F,
    interval: (f64, f64),
    opts: &CascadeOptions,
) -> Result<CoppelVerdict, DynamicsError>
where
    F: Fn(f64) -> f64,
{
    let (lo, hi) = interval;
    if !lo.is_finite() || !hi.is_finite() || hi <= lo {
        return Err(DynamicsError::UnboundedSearchBox);
    }

    // hypothesis check by sampling, with a sliver of rounding slack
    let samples = (opts.grid_density * 16).max(1024);
    let slack = 1e-9 * (1.0 + (hi - lo).abs());
    for i in 0..=samples {
        let x = lo + (hi - lo) * i as f64 / samples as f64;
        let y = f(x);
        if !y.is_finite() || y < lo - slack || y > hi + slack {
            return Ok(CoppelVerdict::NotSelfMap { input: x, output: y });
        }
    }

    let g = |x: f64| -> Option<f64> {
        let y = f(f(x));
        y.is_finite().then_some(y - x)
    };
    let scan = scalar_roots(&g, lo, hi, opts);
    let mut witnesses = Vec::new();
    for r in scan.roots {
        if (f(r) - r).abs() > 10.0 * opts.newton_tol {
            witnesses.push(r);
        }
    }
    if witnesses.is_empty() {
        Ok(CoppelVerdict::ConvergesGlobally)
    } else {
        Ok(CoppelVerdict::Period2Exists { witnesses })
    }
}
