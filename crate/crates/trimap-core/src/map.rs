//! Triangular maps stored coordinate-by-coordinate.
//!
//! The j-th coordinate function receives only the first j coordinates of a
//! point, so triangularity holds by construction rather than by convention.

use std::fmt;
use std::sync::Arc;

use crate::error::CoreError;
use crate::point::{DomainBox, Point};

/// A scalar function of the first j coordinates.
pub type CoordFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// The j-th coordinate function `f_j(x_1, ..., x_j)` of a triangular map,
/// optionally carrying analytic partials `∂f_j/∂x_m` for `m <= j`.
#[derive(Clone)]
pub struct CoordinateMap {
    index: usize,
    eval: CoordFn,
    partials: Option<Vec<CoordFn>>,
}

impl CoordinateMap {
    /// `index` is the 1-based coordinate position j.
    pub fn new<F>(index: usize, eval: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        assert!(index >= 1, "coordinate index is 1-based");
        CoordinateMap {
            index,
            eval: Arc::new(eval),
            partials: None,
        }
    }

    /// Attach analytic partials; `partials[m]` is `∂f_j/∂x_{m+1}` and the
    /// list must have exactly j entries.
    pub fn with_partials(mut self, partials: Vec<CoordFn>) -> Result<Self, CoreError> {
        if partials.len() != self.index {
            return Err(CoreError::PartialArity {
                index: self.index,
                count: partials.len(),
            });
        }
        self.partials = Some(partials);
        Ok(self)
    }

    /// The 1-based coordinate position j.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Evaluate at the first j coordinates of a point. The slice must have
    /// exactly length j; callers pass `&x[..j]`.
    pub fn evaluate(&self, first_j: &[f64]) -> f64 {
        debug_assert_eq!(first_j.len(), self.index);
        (self.eval)(first_j)
    }

    pub fn has_partials(&self) -> bool {
        self.partials.is_some()
    }

    /// Analytic `∂f_j/∂x_m` (m is 1-based, m <= j), if provided.
    pub fn partial(&self, m: usize, first_j: &[f64]) -> Option<f64> {
        debug_assert!(m >= 1 && m <= self.index);
        self.partials.as_ref().map(|ps| (ps[m - 1])(first_j))
    }
}

impl fmt::Debug for CoordinateMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoordinateMap")
            .field("index", &self.index)
            .field("analytic_partials", &self.partials.is_some())
            .finish()
    }
}

/// A triangular self-map `F = (f_1(x_1), f_2(x_1,x_2), ..., f_k(x_1..x_k))`
/// together with its domain box.
#[derive(Clone, Debug)]
pub struct TriangularMap {
    coords: Vec<CoordinateMap>,
    domain: DomainBox,
}

impl TriangularMap {
    pub fn new(coords: Vec<CoordinateMap>, domain: DomainBox) -> Result<Self, CoreError> {
        if coords.is_empty() {
            return Err(CoreError::EmptySystem);
        }
        if domain.dim() != coords.len() {
            return Err(CoreError::DimensionMismatch {
                expected: coords.len(),
                got: domain.dim(),
            });
        }
        for (slot, c) in coords.iter().enumerate() {
            if c.index() != slot + 1 {
                return Err(CoreError::MisplacedCoordinate {
                    slot,
                    index: c.index(),
                    expected: slot + 1,
                });
            }
        }
        Ok(TriangularMap { coords, domain })
    }

    /// The identity map on `domain`.
    pub fn identity(domain: DomainBox) -> Self {
        let coords = (1..=domain.dim())
            .map(|j| {
                CoordinateMap::new(j, move |x: &[f64]| x[j - 1])
                    .with_partials(
                        (1..=j)
                            .map(|m| {
                                let v = if m == j { 1.0 } else { 0.0 };
                                Arc::new(move |_: &[f64]| v) as CoordFn
                            })
                            .collect(),
                    )
                    .expect("arity is j by construction")
            })
            .collect();
        TriangularMap {
            coords,
            domain,
        }
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn domain(&self) -> &DomainBox {
        &self.domain
    }

    /// Coordinate map at 0-based slot `j0` (its 1-based index is `j0 + 1`).
    pub fn coordinate(&self, j0: usize) -> &CoordinateMap {
        &self.coords[j0]
    }

    /// Apply the map. Evaluation is permissive about the domain box (orbit
    /// iteration is where escape is detected); errors are raised only for
    /// dimension mismatches and non-finite results.
    pub fn evaluate(&self, x: &Point) -> Result<Point, CoreError> {
        if x.dim() != self.dimension() {
            return Err(CoreError::DimensionMismatch {
                expected: self.dimension(),
                got: x.dim(),
            });
        }
        let xs = x.coords();
        let mut out = Vec::with_capacity(self.dimension());
        for (j0, c) in self.coords.iter().enumerate() {
            let v = c.evaluate(&xs[..=j0]);
            if !v.is_finite() {
                return Err(CoreError::NonFinite { coordinate: j0 + 1 });
            }
            out.push(v);
        }
        Ok(Point::new(out))
    }
}
