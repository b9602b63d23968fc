//! Operator-Schmidt decomposition of two-QV gates.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{QvError, Result};
use crate::gate::Gate;

/// Singular values of the realigned matrix
/// `R[(i₁ j₁), (i₂ j₂)] = W[(i₁ i₂), (j₁ j₂)]`, in decreasing order.
pub fn operator_schmidt_values(w: &Gate) -> Result<Vec<f64>> {
    if w.arity() != 2 {
        return Err(QvError::InvalidParameter("operator-Schmidt values need a two-QV gate".into()));
    }
    let (d1, d2) = (w.dims()[0], w.dims()[1]);
    let m = w.matrix();
    let n = d1 * d2;
    let realigned = DMatrix::<Complex64>::from_fn(d1 * d1, d2 * d2, |row, col| {
        let (i1, j1) = (row / d1, row % d1);
        let (i2, j2) = (col / d2, col % d2);
        m[(i1 * d2 + i2) * n + j1 * d2 + j2]
    });
    let mut sv: Vec<f64> = realigned.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// True when `W = A ⊗ B`, i.e. exactly one operator-Schmidt value exceeds 1e-9.
pub fn is_product_unitary(w: &Gate) -> Result<bool> {
    Ok(operator_schmidt_values(w)?.iter().filter(|&&s| s > 1e-9).count() == 1)
}
