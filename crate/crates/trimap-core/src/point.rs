//! Points and domain boxes.

use std::ops::Index;

use serde::Serialize;

use crate::error::CoreError;

/// A state of the system: `k` real coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Max-norm distance to another point of the same dimension.
    pub fn max_norm_dist(&self, other: &Point) -> f64 {
        max_norm_dist(&self.0, &other.0)
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point(coords)
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point(coords.to_vec())
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Max-norm distance between two coordinate slices of equal length.
pub fn max_norm_dist(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "max-norm of mismatched dimensions");
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Per-coordinate closed intervals; upper bounds may be `+inf` for
/// population models on the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DomainBox {
    intervals: Vec<(f64, f64)>,
}

impl DomainBox {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self, CoreError> {
        for &(lo, hi) in &intervals {
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY {
                return Err(CoreError::InvalidInterval { lo, hi });
            }
        }
        Ok(DomainBox { intervals })
    }

    /// `[0, 1]^k`.
    pub fn unit(dim: usize) -> Self {
        DomainBox {
            intervals: vec![(0.0, 1.0); dim],
        }
    }

    /// `[0, +inf)^k`, the first orthant.
    pub fn nonnegative(dim: usize) -> Self {
        DomainBox {
            intervals: vec![(0.0, f64::INFINITY); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, j: usize) -> (f64, f64) {
        self.intervals[j]
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// True when every interval has finite endpoints.
    pub fn is_bounded(&self) -> bool {
        self.intervals
            .iter()
            .all(|&(lo, hi)| lo.is_finite() && hi.is_finite())
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.coords()
                .iter()
                .zip(&self.intervals)
                .all(|(&c, &(lo, hi))| c >= lo && c <= hi)
    }

    /// 1-based index of the first coordinate violating the box, if any.
    pub fn first_violation(&self, p: &Point) -> Option<usize> {
        p.coords()
            .iter()
            .zip(&self.intervals)
            .position(|(&c, &(lo, hi))| !(c >= lo && c <= hi))
            .map(|j| j + 1)
    }

    /// A finite in-box value per axis, used when a filler coordinate is
    /// needed and its value cannot matter (triangularity guarantees it).
    pub fn finite_anchor(&self) -> Point {
        let coords = self
            .intervals
            .iter()
            .map(|&(lo, hi)| {
                if lo.is_finite() && hi.is_finite() {
                    0.5 * (lo + hi)
                } else if lo.is_finite() {
                    lo
                } else {
                    hi.min(0.0)
                }
            })
            .collect();
        Point(coords)
    }
}
