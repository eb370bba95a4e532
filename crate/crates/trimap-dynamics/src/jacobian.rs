//! Jacobians of maps and window compositions.

use trimap_core::{CompositionOperator, Point, TriangularMap, TriangularOperator};

use crate::error::DynamicsError;
use crate::matrix::LowerTriangular;

/// Scale-aware central-difference step for coordinate value `xm`.
fn fd_step(xm: f64) -> f64 {
    f64::max(1e-7, 1e-7 * xm.abs())
}

/// Jacobian of a single triangular map at `x`: analytic partials where the
/// coordinate map provides them, central finite differences otherwise.
pub fn map_jacobian(map: &TriangularMap, x: &Point) -> Result<LowerTriangular, DynamicsError> {
    let k = map.dimension();
    if x.dim() != k {
        return Err(DynamicsError::Dimension {
            expected: k,
            got: x.dim(),
        });
    }
    let xs = x.coords();
    let mut j = LowerTriangular::zeros(k);
    for j0 in 0..k {
        let coord = map.coordinate(j0);
        for m in 1..=j0 + 1 {
            let entry = match coord.partial(m, &xs[..=j0]) {
                Some(v) => v,
                None => {
                    let h = fd_step(xs[m - 1]);
                    let mut hi = xs[..=j0].to_vec();
                    let mut lo = xs[..=j0].to_vec();
                    hi[m - 1] += h;
                    lo[m - 1] -= h;
                    (coord.evaluate(&hi) - coord.evaluate(&lo)) / (2.0 * h)
                }
            };
            if !entry.is_finite() {
                return Err(DynamicsError::Core(trimap_core::CoreError::NonFinite {
                    coordinate: j0 + 1,
                }));
            }
            j.set(j0, m - 1, entry);
        }
    }
    Ok(j)
}

/// Chain-rule Jacobian of a window composition, evaluated along the partial
/// orbit of `x`. The product of the per-map lower-triangular Jacobians is
/// accumulated left-to-right, so the result is lower triangular exactly.
pub fn jacobian(op: &CompositionOperator, x: &Point) -> Result<LowerTriangular, DynamicsError> {
    let states = op.trajectory(x)?;
    let mut acc = LowerTriangular::identity(op.dimension());
    for (t, state) in states.iter().take(op.length()).enumerate() {
        let step = map_jacobian(op.map_at(t), state)?;
        acc = step.matmul(&acc);
    }
    Ok(acc)
}
