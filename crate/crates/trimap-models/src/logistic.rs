//! The 2-periodic triangular logistic-type model on the unit square
//!
//!   F_n(x, y) = (μ_n x (1-x), ν_n y (1-y) x)
//!
//! with the radical closed form for the nonzero fixed point x* of the
//! composed first coordinate, the reality discriminant Δ_2, the spectra of
//! Φ_2 at E_0, E_1, E_2, and the stability-region predicates for both the
//! individual maps and the composition.

use serde::Serialize;
use trimap_core::{
    compose, CoordFn, CoordinateMap, DomainBox, Point, SystemWarning, TriangularMap,
    TriangularOperator, TriangularSystem,
};
use trimap_dynamics::{
    classify_spectrum, scalar_roots, CascadeOptions, LowerTriangular, SpectrumClassification,
    DEFAULT_CENTER_TOL,
};

use crate::error::ModelError;

use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogisticParams {
    pub mu: [f64; 2],
    pub nu: [f64; 2],
}

impl LogisticParams {
    pub fn new(mu: [f64; 2], nu: [f64; 2]) -> Result<Self, ModelError> {
        for (name, v) in [("mu0", mu[0]), ("mu1", mu[1]), ("nu0", nu[0]), ("nu1", nu[1])] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ModelError::InvalidParameter {
                    name: match name {
                        "mu0" => "mu0",
                        "mu1" => "mu1",
                        "nu0" => "nu0",
                        _ => "nu1",
                    },
                    value: v,
                    constraint: "positive and finite",
                });
            }
        }
        Ok(LogisticParams { mu, nu })
    }

    /// One-step self-map guarantee on the unit square: μ_n x(1-x) ≤ μ_n/4 and
    /// ν_n y(1-y) x ≤ ν_n/4, so the square is invariant when both stay ≤ 4.
    pub fn self_mapping(&self) -> bool {
        self.mu.iter().chain(&self.nu).all(|&v| v <= 4.0)
    }
}

fn member_map(m: f64, v: f64) -> TriangularMap {
    let f1 = CoordinateMap::new(1, move |x: &[f64]| m * x[0] * (1.0 - x[0]))
        .with_partials(vec![
            Arc::new(move |x: &[f64]| m * (1.0 - 2.0 * x[0])) as CoordFn
        ])
        .expect("one partial");
    let f2 = CoordinateMap::new(2, move |x: &[f64]| v * x[1] * (1.0 - x[1]) * x[0])
        .with_partials(vec![
            Arc::new(move |x: &[f64]| v * x[1] * (1.0 - x[1])) as CoordFn,
            Arc::new(move |x: &[f64]| v * x[0] * (1.0 - 2.0 * x[1])) as CoordFn,
        ])
        .expect("two partials");
    TriangularMap::new(vec![f1, f2], DomainBox::unit(2)).expect("valid 2d map")
}

/// Build the 2-periodic system; equal parameter pairs collapse to an
/// autonomous system with a warning.
pub fn logistic_system(p: &LogisticParams) -> TriangularSystem {
    let m0 = member_map(p.mu[0], p.nu[0]);
    if p.mu[0] == p.mu[1] && p.nu[0] == p.nu[1] {
        return TriangularSystem::autonomous(m0).with_warning(SystemWarning::PeriodCollapsed {
            declared: 2,
            effective: 1,
        });
    }
    let m1 = member_map(p.mu[1], p.nu[1]);
    TriangularSystem::new(vec![m0, m1], vec![2, 2]).expect("2-periodic by construction")
}

pub fn default_sample_box(_p: &LogisticParams) -> DomainBox {
    DomainBox::unit(2)
}

/// Δ_1 = 2 μ_1³ μ_0⁶ − 9 μ_1³ μ_0⁵ + 27 μ_1² μ_0⁴.
pub fn delta1(mu0: f64, mu1: f64) -> f64 {
    mu1 * mu1 * mu0.powi(4) * (2.0 * mu1 * mu0 * mu0 - 9.0 * mu1 * mu0 + 27.0)
}

/// The reality polynomial (4−μ_1) μ_1 μ_0² − 2 μ_1 (9−2μ_1) μ_0 + 27; x* is
/// real exactly on its nonnegative set.
pub fn reality_polynomial(mu0: f64, mu1: f64) -> f64 {
    (4.0 - mu1) * mu1 * mu0 * mu0 - 2.0 * mu1 * (9.0 - 2.0 * mu1) * mu0 + 27.0
}

/// Δ_2 = μ_0⁸ μ_1⁴ · reality polynomial.
pub fn delta2(mu0: f64, mu1: f64) -> f64 {
    mu0.powi(8) * mu1.powi(4) * reality_polynomial(mu0, mu1)
}

/// How the coordinates of a reported fixed point were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    ClosedForm,
    /// Solved by the cascade; never treat as a formula oracle.
    Numeric,
}

/// Evaluate the radical expression for x*. `None` when Δ_2 < 0.
///
/// For Δ_2 ≥ 0 the composed-coordinate cubic has a unique real root and the
/// expression selects it. The two Cardano cube roots are combined through
/// their product identity u·v = ∛4 μ_1² μ_0³ (μ_0−3), picking whichever of
/// Δ_1 ± 3√3·√Δ_2 has the larger magnitude: near μ_0 = 3, μ_1 > 3 the
/// displayed expression is 0/0 and naive evaluation loses every digit to
/// cancellation. Negative radicands take signed real cube roots.
///
/// For Δ_2 < 0 the cubic has three real roots (casus irreducibilis) and the
/// radical expression no longer picks a canonical one: which root appears
/// depends on the cube-root branch. E_1 and E_2 are reported absent on that
/// side of the reality boundary.
pub fn x_star(mu0: f64, mu1: f64) -> Option<f64> {
    let d1 = delta1(mu0, mu1);
    let d2 = delta2(mu0, mu1);
    if d2 < 0.0 {
        return None;
    }
    let cbrt4 = 4.0f64.cbrt();
    let s = (27.0 * d2).sqrt();
    let c_plus = d1 + s;
    let c_minus = d1 - s;
    let w = if c_plus.abs() >= c_minus.abs() {
        c_plus
    } else {
        c_minus
    };
    let u = w.cbrt();
    let uv = cbrt4 * mu1 * mu1 * mu0.powi(3) * (mu0 - 3.0);
    let v = if u == 0.0 { 0.0 } else { uv / u };
    Some(2.0 / 3.0 - cbrt4 * (u + v) / (6.0 * mu0 * mu0 * mu1))
}

/// Fixed points of the composition Φ_2 = F_1 ∘ F_0.
#[derive(Clone, Debug, Serialize)]
pub struct LogisticFixedPoints {
    pub e0: Point,
    pub delta1: f64,
    pub delta2: f64,
    /// The reality flag Δ_2 ≥ 0.
    pub x_star_real: bool,
    pub x_star: Option<f64>,
    pub e1: Option<Point>,
    /// Interior point (x*, y*). y* = Ψ has no usable closed form (the
    /// model omits it); it is produced by the 1D cascade given x*.
    pub e2: Option<Point>,
    pub e2_provenance: Provenance,
    /// All interior roots of the y-equation at x*; e2 carries the largest.
    pub interior_y_candidates: Vec<f64>,
}

pub fn logistic_composition_fixed_points(p: &LogisticParams) -> LogisticFixedPoints {
    let (mu0, mu1) = (p.mu[0], p.mu[1]);
    let d1 = delta1(mu0, mu1);
    let d2 = delta2(mu0, mu1);
    let xs = x_star(mu0, mu1);

    let mut e1 = None;
    let mut e2 = None;
    let mut candidates = Vec::new();
    if let Some(x) = xs {
        e1 = Some(Point::new(vec![x, 0.0]));
        // Ψ numerically: roots of φ_2(x*, y) = y. A window of length 2 is
        // Φ_2 whether or not the system collapsed to period 1.
        let system = logistic_system(p);
        if let Ok(op) = compose(&system, 0, 2) {
            let g = |y: f64| -> Option<f64> {
                op.evaluate(&Point::new(vec![x, y]))
                    .ok()
                    .map(|out| out[1] - y)
            };
            let scan = scalar_roots(&g, 0.0, 1.0, &CascadeOptions::default());
            candidates = scan
                .roots
                .into_iter()
                .filter(|&y| y > trimap_dynamics::DEFAULT_DEDUP_TOL)
                .collect();
            if let Some(&y) = candidates.last() {
                e2 = Some(Point::new(vec![x, y]));
            }
        }
    }

    LogisticFixedPoints {
        e0: Point::new(vec![0.0, 0.0]),
        delta1: d1,
        delta2: d2,
        x_star_real: d2 >= 0.0,
        x_star: xs,
        e1,
        e2,
        e2_provenance: Provenance::Numeric,
        interior_y_candidates: candidates,
    }
}

/// First eigenvalue of JΦ_2 at E_1/E_2 (shared x*), by the chain rule:
/// μ_0 μ_1 (1−2x*)(1 + 2 μ_0 x*(x*−1)).
pub fn lambda_x(p: &LogisticParams, x: f64) -> f64 {
    p.mu[0] * p.mu[1] * (1.0 - 2.0 * x) * (1.0 + 2.0 * p.mu[0] * x * (x - 1.0))
}

/// Second eigenvalue at E_1: μ_0 (x*)² (1−x*) ν_0 ν_1.
pub fn lambda_y_e1(p: &LogisticParams, x: f64) -> f64 {
    p.mu[0] * x * x * (1.0 - x) * p.nu[0] * p.nu[1]
}

/// Second eigenvalue at E_2: the E_1 value times (1−2Ψ)(1+2Ψ(Ψ−1)x*ν_0).
pub fn lambda_y_e2(p: &LogisticParams, x: f64, psi: f64) -> f64 {
    lambda_y_e1(p, x) * (1.0 - 2.0 * psi) * (1.0 + 2.0 * psi * (psi - 1.0) * x * p.nu[0])
}

/// Stability predicates for one individual map F_i (three rows of the
/// per-map region table).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IndividualRegions {
    /// μ_i ≤ 1.
    pub e0: bool,
    /// 1 < μ_i ≤ 3 and ((μ_i−1)/μ_i) ν_i ≤ 1.
    pub e1: bool,
    /// 1 < μ_i ≤ 3 and 1 < ((μ_i−1)/μ_i) ν_i ≤ 3.
    pub e2: bool,
}

pub fn individual_regions(p: &LogisticParams, i: usize) -> IndividualRegions {
    let m = p.mu[i];
    let v = p.nu[i];
    let growth = (m - 1.0) / m * v;
    IndividualRegions {
        e0: m <= 1.0,
        e1: 1.0 < m && m <= 3.0 && growth <= 1.0,
        e2: 1.0 < m && m <= 3.0 && 1.0 < growth && growth <= 3.0,
    }
}

/// Fixed points of one individual map F_i, with the interior y cross-checked
/// against the solved value. `e2_discrepancy` records |formula − numeric|
/// when both exist (a transcription guard on the displayed quotient).
#[derive(Clone, Debug, Serialize)]
pub struct IndividualFixedPoints {
    pub e0: Point,
    pub e1: Point,
    pub e2_formula: Point,
    pub e2_numeric: Option<f64>,
    pub e2_discrepancy: Option<f64>,
}

pub fn individual_fixed_points(p: &LogisticParams, i: usize) -> IndividualFixedPoints {
    let m = p.mu[i];
    let v = p.nu[i];
    let xbar = (m - 1.0) / m;
    let y_formula = (m + (1.0 - m) * v) / ((1.0 - m) * v);
    // nonzero fixed point of y -> ν y (1-y) x̄ by 1D root isolation
    let numeric = if xbar.abs() > 1e-12 {
        let g = |y: f64| -> Option<f64> {
            let out = v * y * (1.0 - y) * xbar - y;
            out.is_finite().then_some(out)
        };
        scalar_roots(&g, -10.0, 10.0, &CascadeOptions::default())
            .roots
            .into_iter()
            .find(|&y| y.abs() > 1e-6)
    } else {
        None
    };
    IndividualFixedPoints {
        e0: Point::new(vec![0.0, 0.0]),
        e1: Point::new(vec![xbar, 0.0]),
        e2_formula: Point::new(vec![xbar, y_formula]),
        e2_numeric: numeric,
        e2_discrepancy: numeric.map(|y| (y - y_formula).abs()),
    }
}

/// Everything the region scans need: spectra of Φ_2 at E_0, E_1, E_2 and
/// the composition-level stability predicates, plus the per-map rows.
#[derive(Clone, Debug, Serialize)]
pub struct LogisticReport {
    pub fixed_points: LogisticFixedPoints,
    pub e0_spectrum: SpectrumClassification,
    pub e1_spectrum: Option<SpectrumClassification>,
    pub e2_spectrum: Option<SpectrumClassification>,
    /// μ_0 μ_1 < 1.
    pub e0_stable: bool,
    /// |λ_x| < 1 and |λ_y(E_1)| < 1, when x* exists.
    pub e1_stable: Option<bool>,
    /// |λ_x| < 1 and |λ_y(E_2)| < 1, when E_2 exists.
    pub e2_stable: Option<bool>,
    pub individual: [IndividualRegions; 2],
}

fn diag2(a: f64, b: f64) -> LowerTriangular {
    let mut m = LowerTriangular::zeros(2);
    m.set(0, 0, a);
    m.set(1, 1, b);
    m
}

pub fn logistic_spectra_and_regions(p: &LogisticParams) -> LogisticReport {
    let fixed_points = logistic_composition_fixed_points(p);
    let (mu0, mu1) = (p.mu[0], p.mu[1]);

    let e0_spectrum = classify_spectrum(&diag2(mu0 * mu1, 0.0), DEFAULT_CENTER_TOL);
    let e0_stable = mu0 * mu1 < 1.0;

    let mut e1_spectrum = None;
    let mut e1_stable = None;
    let mut e2_spectrum = None;
    let mut e2_stable = None;

    if let Some(x) = fixed_points.x_star {
        let lx = lambda_x(p, x);
        let ly1 = lambda_y_e1(p, x);
        e1_spectrum = Some(classify_spectrum(&diag2(lx, ly1), DEFAULT_CENTER_TOL));
        e1_stable = Some(lx.abs() < 1.0 && ly1.abs() < 1.0);
        if let Some(e2) = &fixed_points.e2 {
            let ly2 = lambda_y_e2(p, x, e2[1]);
            e2_spectrum = Some(classify_spectrum(&diag2(lx, ly2), DEFAULT_CENTER_TOL));
            e2_stable = Some(lx.abs() < 1.0 && ly2.abs() < 1.0);
        }
    }

    LogisticReport {
        fixed_points,
        e0_spectrum,
        e1_spectrum,
        e2_spectrum,
        e0_stable,
        e1_stable,
        e2_stable,
        individual: [individual_regions(p, 0), individual_regions(p, 1)],
    }
}
