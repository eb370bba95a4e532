//! Packed lower-triangular matrices.
//!
//! Jacobians of triangular maps are lower triangular by construction; this
//! type stores only the lower part, so entries above the diagonal are zero
//! structurally rather than numerically.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerTriangular {
    dim: usize,
    /// Row-packed lower entries: row i contributes i+1 values.
    data: Vec<f64>,
}

impl LowerTriangular {
    pub fn zeros(dim: usize) -> Self {
        LowerTriangular {
            dim,
            data: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(i: usize, j: usize) -> usize {
        i * (i + 1) / 2 + j
    }

    /// Entry (i, j); above-diagonal requests return exactly 0.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim);
        if j > i {
            0.0
        } else {
            self.data[Self::offset(i, j)]
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(
            j <= i && i < self.dim,
            "cannot write above the diagonal of a lower-triangular matrix"
        );
        self.data[Self::offset(i, j)] = v;
    }

    /// The eigenvalues of a triangular matrix: its diagonal.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// `self * rhs`; the product of lower-triangular matrices is lower
    /// triangular, computed without touching the (absent) upper part.
    pub fn matmul(&self, rhs: &LowerTriangular) -> LowerTriangular {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..=i {
                let mut acc = 0.0;
                for m in j..=i {
                    acc += self.get(i, m) * rhs.get(m, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Dense row-major copy, upper part filled with zeros.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }
}
