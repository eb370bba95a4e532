//! Cascade fixed-point solver.
//!
//! A window composition of triangular maps is itself triangular, so the
//! fixed-point system `Φ(x) = x` decomposes into a chain of scalar
//! equations: solve `φ_1(x_1) = x_1` on a grid, substitute each root, solve
//! coordinate 2 for each, and so on. This replaces general k-dimensional
//! Newton with bracketed 1D solves and is the reason the whole pipeline
//! stays robust near multiple roots on coordinate axes.

use trimap_core::{DomainBox, Point, TriangularOperator};

use crate::error::DynamicsError;

/// Residual required of an accepted root.
pub const DEFAULT_NEWTON_TOL: f64 = 1e-12;
/// Max-norm radius under which two located points count as one.
pub const DEFAULT_DEDUP_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug)]
pub struct CascadeOptions {
    /// Grid nodes per axis for bracketing (>= 2).
    pub grid_density: usize,
    /// Absolute residual bound on each scalar equation.
    pub newton_tol: f64,
    /// Iteration cap per bracketed solve.
    pub max_newton_iters: usize,
    /// Dedup radius in max-norm.
    pub dedup_tol: f64,
    /// Fraction of grid cells yielding roots beyond which the operator is
    /// treated as a degenerate continuum (identity-like).
    pub degenerate_fraction: f64,
    /// Roots kept per coordinate once degeneracy is flagged.
    pub degenerate_cap: usize,
}

impl Default for CascadeOptions {
    fn default() -> Self {
        CascadeOptions {
            grid_density: 64,
            newton_tol: DEFAULT_NEWTON_TOL,
            max_newton_iters: 64,
            dedup_tol: DEFAULT_DEDUP_TOL,
            degenerate_fraction: 0.5,
            degenerate_cap: 8,
        }
    }
}

impl CascadeOptions {
    pub fn with_grid_density(mut self, n: usize) -> Self {
        self.grid_density = n;
        self
    }

    pub fn with_newton_tol(mut self, tol: f64) -> Self {
        self.newton_tol = tol;
        self
    }

    fn validate(&self) -> Result<(), DynamicsError> {
        if self.grid_density < 2 {
            return Err(DynamicsError::GridTooCoarse {
                got: self.grid_density,
            });
        }
        if !self.newton_tol.is_finite() || self.newton_tol <= 0.0 {
            return Err(DynamicsError::BadTolerance {
                got: self.newton_tol,
            });
        }
        Ok(())
    }
}

/// Roots of one scalar equation over one interval.
#[derive(Clone, Debug, Default)]
pub struct ScalarScan {
    pub roots: Vec<f64>,
    pub degenerate: bool,
}

/// All located fixed points of a triangular operator inside `search`.
#[derive(Clone, Debug)]
pub struct CascadeScan {
    /// `(point, residual)` pairs, sorted lexicographically by coordinates.
    pub points: Vec<(Point, f64)>,
    /// Some coordinate hit the degenerate-continuum guard; the list is a
    /// flagged partial enumeration, not the full fixed-point set.
    pub degenerate: bool,
    pub grid_density: usize,
}

/// One bracketing sweep over `[lo, hi]` with `n` nodes: polish near-zero
/// nodes in place, run a safeguarded Newton (bisection fallback) inside
/// every sign-change cell. Returns the number of cells/nodes that produced
/// a root. `g` returns `None` where evaluation fails; such cells are
/// skipped silently, grid refinement being the caller's recourse.
fn scan_once<G>(g: &G, lo: f64, hi: f64, n: usize, opts: &CascadeOptions, out: &mut Vec<f64>) -> usize
where
    G: Fn(f64) -> Option<f64>,
{
    let step = (hi - lo) / (n - 1) as f64;
    let nodes: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    let values: Vec<Option<f64>> = nodes.iter().map(|&t| g(t)).collect();

    let mut hits = 0usize;
    for i in 0..n {
        if let Some(v) = values[i] {
            // grid node sitting (numerically) on a root: polish in place
            if v.abs() < 1e-9 * (1.0 + nodes[i].abs()) {
                if let Some(r) = polish(g, nodes[i], lo, hi, opts) {
                    out.push(r);
                    hits += 1;
                    continue;
                }
            }
        }
        if i + 1 < n {
            if let (Some(a), Some(b)) = (values[i], values[i + 1]) {
                if a != 0.0 && b != 0.0 && a.signum() != b.signum() {
                    if let Some(r) = bracketed_newton(g, nodes[i], nodes[i + 1], a, b, opts) {
                        out.push(r);
                        hits += 1;
                    }
                }
            }
        }
    }
    hits
}

/// Isolate roots of `g` on `[lo, hi]`.
///
/// A coarse sweep locates sign-change and on-node roots; a second, finer
/// sweep then re-scans the cells adjacent to each located root. The
/// refinement matters when two roots share a cell, which is the standard
/// situation in population models where an interior fixed point sits close
/// to an invariant axis: the axis root lands exactly on a grid node and the
/// neighbour hides in the same cell without flipping the endpoint signs.
pub fn scalar_roots<G>(g: &G, lo: f64, hi: f64, opts: &CascadeOptions) -> ScalarScan
where
    G: Fn(f64) -> Option<f64>,
{
    let n = opts.grid_density;
    let mut scan = ScalarScan::default();
    if hi <= lo || lo.is_nan() || hi.is_nan() {
        // collapsed interval: only candidate is the single point
        if let Some(glo) = g(lo) {
            if glo.abs() < opts.newton_tol {
                scan.roots.push(lo);
            }
        }
        return scan;
    }

    let step = (hi - lo) / (n - 1) as f64;
    let mut raw = Vec::new();
    let hits = scan_once(g, lo, hi, n, opts, &mut raw);
    if hits > (opts.degenerate_fraction * (n - 1) as f64) as usize {
        scan.degenerate = true;
    }

    if !scan.degenerate {
        let coarse = raw.clone();
        for r in coarse {
            let wlo = (r - step).max(lo);
            let whi = (r + step).min(hi);
            if whi > wlo {
                scan_once(g, wlo, whi, 64, opts, &mut raw);
            }
        }
    }

    raw.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    for r in raw {
        let dup = scan
            .roots
            .last()
            .is_some_and(|&prev| (r - prev).abs() < opts.dedup_tol * (1.0 + r.abs()));
        if !dup {
            scan.roots.push(r);
        }
    }
    if scan.degenerate {
        scan.roots.truncate(opts.degenerate_cap);
    }
    scan
}

fn polish<G>(g: &G, start: f64, lo: f64, hi: f64, opts: &CascadeOptions) -> Option<f64>
where
    G: Fn(f64) -> Option<f64>,
{
    let mut t = start;
    let mut best = (t, g(t)?.abs());
    for _ in 0..opts.max_newton_iters {
        let gt = g(t)?;
        if gt.abs() < opts.newton_tol {
            return Some(t);
        }
        if gt.abs() < best.1 {
            best = (t, gt.abs());
        }
        let h = f64::max(1e-7, 1e-7 * t.abs());
        let d = (g(t + h)? - g(t - h)?) / (2.0 * h);
        if !d.is_finite() || d == 0.0 {
            break;
        }
        let next = (t - gt / d).clamp(lo, hi);
        if next == t {
            break;
        }
        t = next;
    }
    (best.1 < opts.newton_tol).then_some(best.0)
}

fn bracketed_newton<G>(
    g: &G,
    mut a: f64,
    mut b: f64,
    mut ga: f64,
    _gb: f64,
    opts: &CascadeOptions,
) -> Option<f64>
where
    G: Fn(f64) -> Option<f64>,
{
    let mut t = 0.5 * (a + b);
    for _ in 0..opts.max_newton_iters {
        let gt = g(t)?;
        if gt.abs() < opts.newton_tol {
            return Some(t);
        }
        if gt.signum() == ga.signum() {
            a = t;
            ga = gt;
        } else {
            b = t;
        }
        let h = f64::max(1e-7, 1e-7 * t.abs());
        let d = match (g(t + h), g(t - h)) {
            (Some(p), Some(m)) => (p - m) / (2.0 * h),
            // derivative evaluation failed: fall back to pure bisection
            _ => f64::NAN,
        };
        let newton = t - gt / d;
        t = if d.is_finite() && d != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if (b - a).abs() < f64::EPSILON * (1.0 + a.abs().max(b.abs())) {
            break;
        }
    }
    // interval exhausted without meeting the residual bound: reject
    let gt = g(t)?;
    (gt.abs() < opts.newton_tol).then_some(t)
}

/// Cascade-solve `op(x) = x` inside the finite `search` box.
pub fn cascade_fixed_points<T>(
    op: &T,
    search: &DomainBox,
    opts: &CascadeOptions,
) -> Result<CascadeScan, DynamicsError>
where
    T: TriangularOperator + ?Sized,
{
    opts.validate()?;
    let k = op.dimension();
    if search.dim() != k {
        return Err(DynamicsError::Dimension {
            expected: k,
            got: search.dim(),
        });
    }
    if !search.is_bounded() {
        return Err(DynamicsError::UnboundedSearchBox);
    }

    let anchor = search.finite_anchor();
    let mut prefixes: Vec<Vec<f64>> = vec![Vec::new()];
    let mut degenerate = false;

    for j0 in 0..k {
        let (lo, hi) = search.interval(j0);
        let mut extended = Vec::new();
        for prefix in &prefixes {
            let g = |t: f64| -> Option<f64> {
                let mut x = Vec::with_capacity(k);
                x.extend_from_slice(prefix);
                x.push(t);
                x.extend_from_slice(&anchor.coords()[j0 + 1..]);
                op.evaluate(&Point::new(x)).ok().map(|y| y[j0] - t)
            };
            let scan = scalar_roots(&g, lo, hi, opts);
            degenerate |= scan.degenerate;
            for r in scan.roots {
                let mut next = prefix.clone();
                next.push(r);
                extended.push(next);
            }
        }
        // combinatorial guard: a continuum in an early coordinate would
        // otherwise multiply out
        if extended.len() > 4096 {
            degenerate = true;
            extended.truncate(4096);
        }
        prefixes = extended;
    }

    let mut points: Vec<(Point, f64)> = Vec::with_capacity(prefixes.len());
    for coords in prefixes {
        let p = Point::new(coords);
        let Ok(image) = op.evaluate(&p) else { continue };
        let residual = image.max_norm_dist(&p);
        if residual < opts.newton_tol * 10.0 {
            points.push((p, residual));
        }
    }

    points.sort_by(|a, b| {
        a.0.coords()
            .partial_cmp(b.0.coords())
            .expect("finite coordinates")
    });
    let mut deduped: Vec<(Point, f64)> = Vec::new();
    for (p, r) in points {
        match deduped
            .iter_mut()
            .find(|(q, _)| q.max_norm_dist(&p) < opts.dedup_tol)
        {
            Some(slot) => {
                if r < slot.1 {
                    *slot = (p, r);
                }
            }
            None => deduped.push((p, r)),
        }
    }

    Ok(CascadeScan {
        points: deduped,
        degenerate,
        grid_density: opts.grid_density,
    })
}
