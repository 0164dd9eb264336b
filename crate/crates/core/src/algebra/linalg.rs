//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::DMatrix;

use super::C64;

pub type CMatrix = DMatrix<C64>;

/// Determinant by LU factorisation with partial pivoting.
pub fn determinant(m: &CMatrix) -> C64 {
    if m.nrows() == 0 {
        return C64::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// Solves `m x = rhs`; `None` when the matrix is numerically singular.
pub fn solve(m: &CMatrix, rhs: &[C64]) -> Option<Vec<C64>> {
    let b = nalgebra::DVector::from_column_slice(rhs);
    let x = m.clone().lu().solve(&b)?;
    if x.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        Some(x.iter().copied().collect())
    } else {
        None
    }
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// 2-norm condition number; infinite for singular matrices.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}
