//! The periodic triangular Ricker-type model on the nonnegative orthant.
//!
//! Planar case (the worked example):
//!
//!   F_n(x, y) = (x e^{r_n (1-x)}, y e^{s_n (1-y-μx)}),   r_{n+3} = r_n,
//!                                                        s_{n+2} = s_n,
//!
//! a 6-periodic system. The k-dimensional generalization chains coordinate
//! j through the weighted sum of its predecessors:
//!
//!   f_j = x_j e^{r_{j,n} (1 - x_j - Σ_{i<j} μ_i x_i)}.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;
use trimap_core::{
    compose, CoordFn, CoordinateMap, DomainBox, Point, TriangularMap, TriangularSystem,
};
use trimap_dynamics::{
    classify_spectrum, jacobian, SpectrumClassification, DEFAULT_CENTER_TOL,
};

use crate::error::ModelError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RickerParams {
    /// Per-coordinate growth-rate sequences; coordinate j cycles through
    /// `rates[j]` with period `rates[j].len()`.
    rates: Vec<Vec<f64>>,
    /// Interaction weights μ_1..μ_{k-1} coupling coordinate j to its
    /// predecessors.
    interactions: Vec<f64>,
}

impl RickerParams {
    /// The worked 2D case: r has period 3, s period 2, giving p = 6.
    pub fn planar(r: [f64; 3], s: [f64; 2], mu: f64) -> Result<Self, ModelError> {
        Self::multi(vec![r.to_vec(), s.to_vec()], vec![mu])
    }

    pub fn multi(rates: Vec<Vec<f64>>, interactions: Vec<f64>) -> Result<Self, ModelError> {
        let k = rates.len();
        if k == 0 {
            return Err(ModelError::EmptyRates { coordinate: 1 });
        }
        if interactions.len() != k - 1 {
            return Err(ModelError::InteractionArity {
                k,
                got: interactions.len(),
            });
        }
        for (j0, seq) in rates.iter().enumerate() {
            if seq.is_empty() {
                return Err(ModelError::EmptyRates { coordinate: j0 + 1 });
            }
            for &r in seq {
                if !(r > 0.0 && r <= 2.0) {
                    return Err(ModelError::InvalidParameter {
                        name: "r",
                        value: r,
                        constraint: "0 < r <= 2",
                    });
                }
            }
        }
        for &m in &interactions {
            if !(0.0..1.0).contains(&m) {
                return Err(ModelError::InvalidParameter {
                    name: "mu",
                    value: m,
                    constraint: "0 <= mu < 1",
                });
            }
        }
        Ok(RickerParams {
            rates,
            interactions,
        })
    }

    pub fn dimension(&self) -> usize {
        self.rates.len()
    }

    pub fn coordinate_periods(&self) -> Vec<usize> {
        self.rates.iter().map(Vec::len).collect()
    }

    pub fn period(&self) -> usize {
        self.rates.iter().fold(1usize, |acc, seq| acc.lcm(&seq.len()))
    }

    pub fn rate(&self, coordinate: usize, phase: usize) -> f64 {
        let seq = &self.rates[coordinate];
        seq[phase % seq.len()]
    }

    pub fn interactions(&self) -> &[f64] {
        &self.interactions
    }
}

fn member_map(p: &RickerParams, phase: usize) -> TriangularMap {
    let k = p.dimension();
    let coords = (1..=k)
        .map(|j| {
            let r = p.rate(j - 1, phase);
            let weights: Vec<f64> = p.interactions[..j - 1].to_vec();
            let exponent = {
                let weights = weights.clone();
                move |x: &[f64]| {
                    let coupled: f64 = weights.iter().zip(x).map(|(&m, &v)| m * v).sum();
                    r * (1.0 - x[j - 1] - coupled)
                }
            };
            let eval = {
                let exponent = exponent.clone();
                move |x: &[f64]| x[j - 1] * exponent(x).exp()
            };
            let mut partials: Vec<CoordFn> = Vec::with_capacity(j);
            for m in 1..=j {
                let exponent = exponent.clone();
                let part: CoordFn = if m == j {
                    Arc::new(move |x: &[f64]| exponent(x).exp() * (1.0 - r * x[j - 1]))
                } else {
                    let w = weights[m - 1];
                    Arc::new(move |x: &[f64]| -r * w * x[j - 1] * exponent(x).exp())
                };
                partials.push(part);
            }
            CoordinateMap::new(j, eval)
                .with_partials(partials)
                .expect("j partials for coordinate j")
        })
        .collect();
    TriangularMap::new(coords, DomainBox::nonnegative(k)).expect("valid map")
}

pub fn ricker_system(p: &RickerParams) -> TriangularSystem {
    let period = p.period();
    let maps = (0..period).map(|n| member_map(p, n)).collect();
    TriangularSystem::new(maps, p.coordinate_periods()).expect("periods consistent")
}

/// Sampling box from the boundedness estimate x e^{r(1-x)} ≤ e^{r-1}/r.
pub fn default_sample_box(p: &RickerParams) -> DomainBox {
    let intervals = (0..p.dimension())
        .map(|j| {
            let bound = p.rates[j]
                .iter()
                .map(|&r| (r - 1.0).exp() / r)
                .fold(f64::NEG_INFINITY, f64::max);
            (0.0, bound)
        })
        .collect();
    DomainBox::new(intervals).expect("positive bounds")
}

/// The interior common fixed point C* = (1, 1−μ_1, Π_{i≤2}(1−μ_i), ...).
pub fn c_star(p: &RickerParams) -> Point {
    let mut coords = Vec::with_capacity(p.dimension());
    let mut product = 1.0;
    coords.push(1.0);
    for &m in &p.interactions {
        product *= 1.0 - m;
        coords.push(product);
    }
    Point::new(coords)
}

#[derive(Clone, Debug, Serialize)]
pub struct CStarReport {
    pub point: Point,
    /// 0 < r_{j,n} Π_{i<j}(1−μ_i) ≤ 2 for every coordinate and phase.
    pub condition_satisfied: bool,
    /// The products r_{j,n} Π_{i<j}(1−μ_i), per coordinate then phase.
    pub condition_values: Vec<Vec<f64>>,
    /// max over phases n of ‖F_n(C*) − C*‖∞.
    pub max_residual: f64,
    /// Spectrum of the full-period composition Φ_p at C*.
    pub spectrum: SpectrumClassification,
}

/// Evaluate the stability condition at C*, verify it is fixed by every map,
/// and classify the full-period composition there.
pub fn ricker_stability(p: &RickerParams) -> Result<CStarReport, ModelError> {
    let system = ricker_system(p);
    let star = c_star(p);

    let mut max_residual: f64 = 0.0;
    for n in 0..system.period() {
        let image = system.map(n).evaluate(&star)?;
        max_residual = max_residual.max(image.max_norm_dist(&star));
    }

    let mut condition_values = Vec::with_capacity(p.dimension());
    let mut product = 1.0;
    for j in 0..p.dimension() {
        if j > 0 {
            product *= 1.0 - p.interactions[j - 1];
        }
        condition_values.push(p.rates[j].iter().map(|&r| r * product).collect::<Vec<f64>>());
    }
    let condition_satisfied = condition_values
        .iter()
        .flatten()
        .all(|&v| v > 0.0 && v <= 2.0);

    let op = compose(&system, 0, system.period())?;
    let spectrum = classify_spectrum(&jacobian(&op, &star)?, DEFAULT_CENTER_TOL);

    Ok(CStarReport {
        point: star,
        condition_satisfied,
        condition_values,
        max_residual,
        spectrum,
    })
}
