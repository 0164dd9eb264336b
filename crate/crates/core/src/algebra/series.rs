use serde::{Deserialize, Serialize};

use super::C64;
use crate::error::{Error, Result};

/// Power series `sum coeffs[k] (z - base)^k` truncated after `order` terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub base: C64,
    pub coeffs: Vec<C64>,
}

impl TruncatedSeries {
    pub fn new(base: C64, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegenerateInput("a truncated series needs order >= 1".into()));
        }
        Ok(Self { base, coeffs })
    }

    /// Series about 0.
    pub fn at_origin(coeffs: Vec<C64>) -> Result<Self> {
        Self::new(C64::new(0.0, 0.0), coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: C64) -> C64 {
        let t = z - self.base;
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    /// Product truncated to the shorter order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self { base: self.base, coeffs: mul_truncated(&self.coeffs, &other.coeffs, n) }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self { base: self.base, coeffs: inverse_truncated(&self.coeffs, self.order())? })
    }

    /// Term-by-term derivative; the order drops by one (never below 1).
    pub fn derivative(&self) -> Self {
        let mut coeffs: Vec<C64> =
            self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        Self { base: self.base, coeffs }
    }

    /// Antiderivative vanishing at the base point.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0)];
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, &c)| c / (k + 1) as f64));
        Self { base: self.base, coeffs }
    }
}

pub(crate) fn mul_truncated(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (i, &x) in a.iter().enumerate().take(n) {
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn inverse_truncated(a: &[C64], n: usize) -> Result<Vec<C64>> {
    let a0 = a.first().copied().unwrap_or_default();
    if a0.norm() == 0.0 {
        return Err(Error::DegenerateInput("series with zero constant term is not invertible".into()));
    }
    let mut inv = vec![C64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(inv);
    }
    inv[0] = a0.inv();
    for k in 1..n {
        let s: C64 = (1..=k.min(a.len() - 1)).map(|j| a[j] * inv[k - j]).sum();
        inv[k] = -s * inv[0];
    }
    Ok(inv)
}

/// Power series quotient `num / den` to `n` terms.
pub(crate) fn div_truncated(num: &[C64], den: &[C64], n: usize) -> Result<Vec<C64>> {
    let inv = inverse_truncated(den, n)?;
    Ok(mul_truncated(num, &inv, n))
}
