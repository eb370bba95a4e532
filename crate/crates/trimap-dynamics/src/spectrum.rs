//! Spectral classification of fixed points.

use serde::Serialize;

use crate::matrix::LowerTriangular;

/// Half-width of the band around |λ| = 1 classified as center.
pub const DEFAULT_CENTER_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StabilityVerdict {
    /// Every eigenvalue strictly inside the unit disk.
    Sink,
    /// Every eigenvalue strictly outside the unit disk (repeller).
    Source,
    /// Hyperbolic with eigenvalues on both sides of the unit circle.
    Saddle,
    /// At least one eigenvalue on the unit circle within tolerance; spectral
    /// classification cannot settle stability, manual analysis is required.
    NonHyperbolic,
}

/// The spectrum σ of a triangular Jacobian split into σ^s / σ^c / σ^u by
/// modulus against the unit circle.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumClassification {
    eigenvalues: Vec<f64>,
    stable: usize,
    center: usize,
    unstable: usize,
    verdict: StabilityVerdict,
    center_tol: f64,
}

impl SpectrumClassification {
    /// Eigenvalues in coordinate order (diagonal read-off; all real for
    /// real triangular Jacobians).
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn stable_count(&self) -> usize {
        self.stable
    }

    pub fn center_count(&self) -> usize {
        self.center
    }

    pub fn unstable_count(&self) -> usize {
        self.unstable
    }

    pub fn verdict(&self) -> StabilityVerdict {
        self.verdict
    }

    pub fn center_tol(&self) -> f64 {
        self.center_tol
    }

    /// A center eigenvalue means the verdict cannot be read off the
    /// spectrum; the hypothesis on the center fiber must be checked by hand.
    pub fn requires_manual_analysis(&self) -> bool {
        self.center > 0
    }
}

/// Partition the diagonal of `j` against the unit circle with a center band
/// of half-width `center_tol`.
pub fn classify_spectrum(j: &LowerTriangular, center_tol: f64) -> SpectrumClassification {
    let eigenvalues = j.diagonal();
    let mut stable = 0;
    let mut center = 0;
    let mut unstable = 0;
    for lambda in &eigenvalues {
        let a = lambda.abs();
        if (a - 1.0).abs() <= center_tol {
            center += 1;
        } else if a < 1.0 {
            stable += 1;
        } else {
            unstable += 1;
        }
    }
    let verdict = if center > 0 {
        StabilityVerdict::NonHyperbolic
    } else if unstable == 0 {
        StabilityVerdict::Sink
    } else if stable == 0 {
        StabilityVerdict::Source
    } else {
        StabilityVerdict::Saddle
    };
    SpectrumClassification {
        eigenvalues,
        stable,
        center,
        unstable,
        verdict,
        center_tol,
    }
}
