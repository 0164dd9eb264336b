use crate::algebra::series::{inverse_truncated, mul_truncated};
use crate::algebra::{C64, RationalMap, TruncatedSeries};
use crate::error::{Error, Result};
use crate::primitivity::{recursion, CRITERION_TOLERANCE};
use crate::schwarzian::laurent_at;

/// Formal solution `g = 1 + c_1 z + ... + c_{N-1} z^{N-1}` of the linear
/// equation attached to the germ with tail `q = (a_1, a_2, ...)` and local
/// degree `d`. The free coefficient `c_d` is fixed to 0.
pub fn local_g(d: usize, q: &TruncatedSeries, n: usize) -> Result<TruncatedSeries> {
    if d == 0 {
        return Err(Error::DegenerateInput("local degree must be at least 1".into()));
    }
    let a: Vec<C64> = (0..n).map(|k| q.coeff(k)).collect();
    let coeffs = recursion(d as f64, &a, n.max(d + 1), |k, rhs| {
        if k != d {
            return Ok(None);
        }
        // same terms as the right side, for a scale-aware zero test
        let size: f64 = (0..k).map(|j| a.get(k - j - 1).copied().unwrap_or_default().norm()).sum();
        if rhs.norm() > CRITERION_TOLERANCE * (1.0 + size) {
            Err(Error::ObstructionNonzero { value: rhs })
        } else {
            Ok(Some(C64::new(0.0, 0.0)))
        }
    })?;
    TruncatedSeries::new(q.base, coeffs[..n.max(1)].to_vec())
}

/// Taylor coefficients about `c` of a local primitive `f` of `phi` with
/// `f(c) = 0` and `f = (z - c)^d / d + ...`.
pub fn local_primitive(phi: &RationalMap, c: C64, n: usize) -> Result<TruncatedSeries> {
    let germ = laurent_at(phi, c, n)?;
    let d = germ.local_degree_hint.ok_or(Error::NonIntegerDegree { leading: germ.leading })? as usize;
    let tail = TruncatedSeries::new(c, germ.tail(n))?;
    let g = local_g(d, &tail, n)?;
    let g2 = mul_truncated(&g.coeffs, &g.coeffs, n);
    let h = inverse_truncated(&g2, n)?;
    // f' = t^{d-1} / g^2
    let mut f = vec![C64::new(0.0, 0.0); n + d];
    for (k, hk) in h.into_iter().enumerate() {
        f[k + d] = hk / (k + d) as f64;
    }
    TruncatedSeries::new(c, f)
}
