//! Periodic sequences of triangular maps.

use num_integer::Integer;
use serde::Serialize;

use crate::error::CoreError;
use crate::map::TriangularMap;
use crate::point::Point;

/// Least common multiple of the per-coordinate minimal periods: the global
/// period of the non-autonomous equation.
pub fn system_period(periods: &[usize]) -> Result<usize, CoreError> {
    if periods.is_empty() {
        return Err(CoreError::EmptyPeriods);
    }
    if periods.contains(&0) {
        return Err(CoreError::ZeroPeriod);
    }
    Ok(periods.iter().fold(1usize, |acc, &p| acc.lcm(&p)))
}

/// Construction-time observations that do not invalidate a system but that
/// downstream analysis should know about.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SystemWarning {
    /// Sampled evaluation found coordinate `coordinate` (1-based) repeating
    /// with a proper divisor of its declared period.
    DeclaredPeriodNotMinimal {
        coordinate: usize,
        declared: usize,
        observed_divisor: usize,
    },
    /// A constructor was handed parameters that make the declared period
    /// degenerate; the system was built with the smaller effective period.
    PeriodCollapsed { declared: usize, effective: usize },
}

/// A p-periodic sequence of triangular maps `F_0, ..., F_{p-1}` acting by
/// `X_{n+1} = F_{n mod p}(X_n)`.
#[derive(Clone, Debug)]
pub struct TriangularSystem {
    maps: Vec<TriangularMap>,
    coordinate_periods: Vec<usize>,
    period: usize,
    warnings: Vec<SystemWarning>,
}

impl TriangularSystem {
    /// Build a system from one full period of maps. Requires
    /// `maps.len() == lcm(coordinate_periods)` and a shared domain box.
    /// Minimality of the declared per-coordinate periods is probed by
    /// sampled evaluation; failures are recorded as warnings, not errors.
    pub fn new(
        maps: Vec<TriangularMap>,
        coordinate_periods: Vec<usize>,
    ) -> Result<Self, CoreError> {
        if maps.is_empty() {
            return Err(CoreError::EmptySystem);
        }
        let k = maps[0].dimension();
        for m in &maps {
            if m.dimension() != k {
                return Err(CoreError::DimensionMismatch {
                    expected: k,
                    got: m.dimension(),
                });
            }
            if m.domain() != maps[0].domain() {
                return Err(CoreError::MixedDomains);
            }
        }
        if coordinate_periods.len() != k {
            return Err(CoreError::DimensionMismatch {
                expected: k,
                got: coordinate_periods.len(),
            });
        }
        let period = system_period(&coordinate_periods)?;
        if period != maps.len() {
            return Err(CoreError::PeriodLengthMismatch {
                stored: maps.len(),
                lcm: period,
            });
        }
        let mut system = TriangularSystem {
            maps,
            coordinate_periods,
            period,
            warnings: Vec::new(),
        };
        system.warnings = system.probe_minimality();
        Ok(system)
    }

    /// A 1-periodic (autonomous) system holding a single map.
    pub fn autonomous(map: TriangularMap) -> Self {
        let k = map.dimension();
        TriangularSystem {
            maps: vec![map],
            coordinate_periods: vec![1; k],
            period: 1,
            warnings: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.maps[0].dimension()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn coordinate_periods(&self) -> &[usize] {
        &self.coordinate_periods
    }

    /// The map applied at time `n`; indexing is mod p, so `F_{n+p} = F_n`
    /// holds structurally.
    pub fn map(&self, n: usize) -> &TriangularMap {
        &self.maps[n % self.period]
    }

    pub fn maps(&self) -> &[TriangularMap] {
        &self.maps
    }

    pub fn domain(&self) -> &crate::point::DomainBox {
        self.maps[0].domain()
    }

    pub fn warnings(&self) -> &[SystemWarning] {
        &self.warnings
    }

    /// Attach an additional warning (used by model constructors that detect
    /// degeneracies the sampled probe cannot name).
    pub fn with_warning(mut self, warning: SystemWarning) -> Self {
        self.warnings.push(warning);
        self
    }

    /// Sampled check that each coordinate slice really needs its declared
    /// period: if `f_{j,n+d} == f_{j,n}` bit-for-bit on every probe point
    /// for some proper divisor d of p_j, the declaration is not minimal.
    fn probe_minimality(&self) -> Vec<SystemWarning> {
        let samples = self.probe_points();
        let mut warnings = Vec::new();
        for (j0, &pj) in self.coordinate_periods.iter().enumerate() {
            let divisors: Vec<usize> = (1..pj).filter(|d| pj % d == 0).collect();
            'div: for d in divisors {
                for n in 0..self.period {
                    let a = &self.maps[n % self.period];
                    let b = &self.maps[(n + d) % self.period];
                    for s in &samples {
                        let prefix = &s.coords()[..=j0];
                        let va = a.coordinate(j0).evaluate(prefix);
                        let vb = b.coordinate(j0).evaluate(prefix);
                        // NaN on a probe point just means the probe left the
                        // maps' useful range; skip rather than conclude.
                        if va.to_bits() != vb.to_bits() && !(va.is_nan() && vb.is_nan()) {
                            continue 'div;
                        }
                    }
                }
                warnings.push(SystemWarning::DeclaredPeriodNotMinimal {
                    coordinate: j0 + 1,
                    declared: pj,
                    observed_divisor: d,
                });
                break;
            }
        }
        warnings
    }

    /// Deterministic probe points inside the finite part of the domain.
    fn probe_points(&self) -> Vec<Point> {
        let k = self.dimension();
        let fractions = [0.13, 0.31, 0.5, 0.62, 0.79, 0.97, 0.07, 0.88];
        fractions
            .iter()
            .enumerate()
            .map(|(s, &f)| {
                let coords = (0..k)
                    .map(|j| {
                        let (lo, hi) = self.domain().interval(j);
                        let lo = if lo.is_finite() { lo } else { -1.0 };
                        let hi = if hi.is_finite() { hi } else { lo + 2.0 };
                        // stagger axes so probes are not diagonal-only
                        let t = (f + 0.17 * ((j + s) % 3) as f64).fract();
                        lo + t * (hi - lo)
                    })
                    .collect();
                Point::new(coords)
            })
            .collect()
    }
}
