//! The 2-periodic triangular Leslie-Gower competition model
//!
//!   F_n(x, y) = ( μ K_n x / (K_n + (μ-1) x),
//!                 α L_n y / (L_n + (α-1) y + β x) )
//!
//! on the nonnegative quadrant, with closed-form exclusion and coexistence
//! 2-cycles and the spectra of the composition Φ_2 at its four fixed points.

use std::sync::Arc;

use serde::Serialize;
use trimap_core::{
    CoordFn, CoordinateMap, DomainBox, Point, SystemWarning, TriangularMap, TriangularSystem,
};
use trimap_dynamics::{
    classify_spectrum, LowerTriangular, SpectrumClassification, DEFAULT_CENTER_TOL,
};

use crate::error::ModelError;
use crate::kahan::neumaier_sum;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LeslieGowerParams {
    /// Growth rate of x (> 1).
    pub mu: f64,
    /// Growth rate of y (> 1).
    pub alpha: f64,
    /// Interaction strength (0 < β < 1).
    pub beta: f64,
    /// Carrying capacities of x over one period.
    pub k: [f64; 2],
    /// Carrying capacities of y over one period.
    pub l: [f64; 2],
}

impl LeslieGowerParams {
    pub fn new(mu: f64, alpha: f64, beta: f64, k: [f64; 2], l: [f64; 2]) -> Result<Self, ModelError> {
        let check = |name: &'static str, value: f64, ok: bool, constraint: &'static str| {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(ModelError::InvalidParameter {
                    name,
                    value,
                    constraint,
                })
            }
        };
        check("mu", mu, mu > 1.0, "mu > 1")?;
        check("alpha", alpha, alpha > 1.0, "alpha > 1")?;
        check("beta", beta, beta > 0.0 && beta < 1.0, "0 < beta < 1")?;
        check("k0", k[0], k[0] > 0.0, "K_n > 0")?;
        check("k1", k[1], k[1] > 0.0, "K_n > 0")?;
        check("l0", l[0], l[0] > 0.0, "L_n > 0")?;
        check("l1", l[1], l[1] > 0.0, "L_n > 0")?;
        Ok(LeslieGowerParams {
            mu,
            alpha,
            beta,
            k,
            l,
        })
    }
}

fn member_map(mu: f64, alpha: f64, beta: f64, kn: f64, ln: f64) -> TriangularMap {
    // partials are factored as ratios so the chain product at the origin is
    // exactly μ·μ and α·α (K/K and L/L divide to 1.0 with no rounding)
    let f1 = CoordinateMap::new(1, move |x: &[f64]| mu * kn * x[0] / (kn + (mu - 1.0) * x[0]))
        .with_partials(vec![Arc::new(move |x: &[f64]| {
            let r = kn / (kn + (mu - 1.0) * x[0]);
            mu * r * r
        }) as CoordFn])
        .expect("one partial for coordinate 1");
    let f2 = CoordinateMap::new(2, move |x: &[f64]| {
        alpha * ln * x[1] / (ln + (alpha - 1.0) * x[1] + beta * x[0])
    })
    .with_partials(vec![
        Arc::new(move |x: &[f64]| {
            let d = ln + (alpha - 1.0) * x[1] + beta * x[0];
            -alpha * ln * x[1] * beta / (d * d)
        }) as CoordFn,
        Arc::new(move |x: &[f64]| {
            let d = ln + (alpha - 1.0) * x[1] + beta * x[0];
            alpha * (ln / d) * ((ln + beta * x[0]) / d)
        }) as CoordFn,
    ])
    .expect("two partials for coordinate 2");
    TriangularMap::new(vec![f1, f2], DomainBox::nonnegative(2)).expect("valid 2d map")
}

/// Build the 2-periodic system. Equal capacities collapse to an autonomous
/// system (period 1) with a `PeriodCollapsed` warning attached.
pub fn leslie_gower_system(p: &LeslieGowerParams) -> TriangularSystem {
    let m0 = member_map(p.mu, p.alpha, p.beta, p.k[0], p.l[0]);
    if p.k[0] == p.k[1] && p.l[0] == p.l[1] {
        return TriangularSystem::autonomous(m0).with_warning(SystemWarning::PeriodCollapsed {
            declared: 2,
            effective: 1,
        });
    }
    let m1 = member_map(p.mu, p.alpha, p.beta, p.k[1], p.l[1]);
    TriangularSystem::new(vec![m0, m1], vec![2, 2]).expect("2-periodic by construction")
}

/// Sampling box from the model's boundedness estimates:
/// x < μ K_max/(μ-1), y < α L_max/(α-1).
pub fn default_sample_box(p: &LeslieGowerParams) -> DomainBox {
    let bx = p.mu * p.k[0].max(p.k[1]) / (p.mu - 1.0);
    let by = p.alpha * p.l[0].max(p.l[1]) / (p.alpha - 1.0);
    DomainBox::new(vec![(0.0, bx), (0.0, by)]).expect("positive bounds")
}

/// The model's four phase-0 fixed points of Φ_2 and their cycle partners.
#[derive(Clone, Debug, Serialize)]
pub struct LeslieGowerCycles {
    pub origin: Point,
    /// Exclusion 2-cycle on the x-axis: (x̄_0, 0), (x̄_1, 0).
    pub exclusion_x: [Point; 2],
    /// Exclusion 2-cycle on the y-axis: (0, ȳ_0), (0, ȳ_1).
    pub exclusion_y: [Point; 2],
    /// Coexistence 2-cycle: (x̄_0, Ȳ_0), (x̄_1, Ȳ_1). Returned even when
    /// non-admissible, flagged below.
    pub coexistence: [Point; 2],
    /// The coexistence inequality: the cycle lies in the open first
    /// quadrant iff this holds.
    pub coexistence_admissible: bool,
}

/// The A, B and common numerator of the coexistence formulas, summed with
/// compensation: the numerator is a difference of large products and plain
/// accumulation loses digits for extreme parameter draws.
fn coexistence_terms(p: &LeslieGowerParams) -> (f64, f64, f64) {
    let (mu, alpha, beta) = (p.mu, p.alpha, p.beta);
    let (k0, k1) = (p.k[0], p.k[1]);
    let (l0, l1) = (p.l[0], p.l[1]);
    let a = neumaier_sum(&[
        beta * beta * k1 * k1 * (mu + 1.0) * (mu + 1.0),
        beta * k1 * (mu + 1.0) * (mu * l0 + l1),
        -(alpha * alpha - 1.0) * mu * l0 * l1,
    ]);
    let b = neumaier_sum(&[
        beta * k1 * (mu + 1.0) * (mu * l1 + l0),
        -(alpha * alpha - 1.0) * (mu * mu + 1.0) * l0 * l1,
    ]);
    let numerator = neumaier_sum(&[
        (alpha * alpha - 1.0) * k1 * k1 * mu * l0 * l1,
        -a * k0 * k0,
        -b * k1 * k0,
    ]);
    (a, b, numerator)
}

pub fn leslie_gower_cycles(p: &LeslieGowerParams) -> LeslieGowerCycles {
    let (mu, alpha, beta) = (p.mu, p.alpha, p.beta);
    let (k0, k1) = (p.k[0], p.k[1]);
    let (l0, l1) = (p.l[0], p.l[1]);

    let x0 = k0 * k1 * (mu + 1.0) / (k0 * mu + k1);
    let x1 = k0 * k1 * (mu + 1.0) / (k1 * mu + k0);
    let y0 = (alpha + 1.0) * l0 * l1 / (alpha * l0 + l1);
    let y1 = (alpha + 1.0) * l0 * l1 / (alpha * l1 + l0);

    let (_, _, numerator) = coexistence_terms(p);
    let d0 = (alpha - 1.0)
        * (k0 * mu + k1)
        * (k0 * (beta * k1 * (mu + 1.0) + alpha * l0 + l1) + k1 * mu * (alpha * l0 + l1));
    let d1 = (alpha - 1.0)
        * (k1 * mu + k0)
        * (k0 * (beta * k1 * (mu + 1.0) + mu * (alpha * l1 + l0)) + k1 * (alpha * l1 + l0));
    let cap_y0 = numerator / d0;
    let cap_y1 = numerator / d1;

    LeslieGowerCycles {
        origin: Point::new(vec![0.0, 0.0]),
        exclusion_x: [Point::new(vec![x0, 0.0]), Point::new(vec![x1, 0.0])],
        exclusion_y: [Point::new(vec![0.0, y0]), Point::new(vec![0.0, y1])],
        coexistence: [Point::new(vec![x0, cap_y0]), Point::new(vec![x1, cap_y1])],
        coexistence_admissible: numerator > 0.0,
    }
}

/// Spectra of JΦ_2 at the four fixed points, by the displayed closed forms.
#[derive(Clone, Debug, Serialize)]
pub struct LeslieGowerSpectra {
    pub origin: SpectrumClassification,
    pub exclusion_x: SpectrumClassification,
    pub exclusion_y: SpectrumClassification,
    pub coexistence: SpectrumClassification,
    /// The ε_x free eigenvalue quotient; the coexistence inequality forces
    /// it above 1, which is what makes ε_x a saddle and C* a sink.
    pub saddle_quotient: f64,
}

/// The quotient c with σ(ε_x) = {1/μ², c} and σ(C*) = {1/μ², 1/c}.
pub fn saddle_quotient(p: &LeslieGowerParams) -> f64 {
    let (mu, alpha, beta) = (p.mu, p.alpha, p.beta);
    let (k0, k1) = (p.k[0], p.k[1]);
    let (l0, l1) = (p.l[0], p.l[1]);
    let numerator = alpha * alpha * (mu * k0 + k1) * (k0 + mu * k1) * l0 * l1;
    let denominator = (k1 * l0 + k0 * (beta * (mu + 1.0) * k1 + mu * l0))
        * (mu * k1 * l1 + k0 * (beta * (mu + 1.0) * k1 + l1));
    numerator / denominator
}

fn diag2(a: f64, b: f64) -> LowerTriangular {
    let mut m = LowerTriangular::zeros(2);
    m.set(0, 0, a);
    m.set(1, 1, b);
    m
}

pub fn leslie_gower_spectra(p: &LeslieGowerParams) -> LeslieGowerSpectra {
    let mu2 = p.mu * p.mu;
    let alpha2 = p.alpha * p.alpha;
    let c = saddle_quotient(p);
    LeslieGowerSpectra {
        origin: classify_spectrum(&diag2(mu2, alpha2), DEFAULT_CENTER_TOL),
        exclusion_x: classify_spectrum(&diag2(1.0 / mu2, c), DEFAULT_CENTER_TOL),
        exclusion_y: classify_spectrum(&diag2(mu2, 1.0 / alpha2), DEFAULT_CENTER_TOL),
        coexistence: classify_spectrum(&diag2(1.0 / mu2, 1.0 / c), DEFAULT_CENTER_TOL),
        saddle_quotient: c,
    }
}

/// Left side minus right side of the coexistence inequality; positive means
/// the coexistence cycle is interior.
pub fn coexistence_margin(p: &LeslieGowerParams) -> f64 {
    coexistence_terms(p).2
}
