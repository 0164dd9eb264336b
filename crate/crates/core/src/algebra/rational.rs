use std::fmt;

use serde::{Deserialize, Serialize};

use super::{C64, ComplexPolynomial, RiemannPoint};
use crate::error::{Error, Result};

/// Quotient of two coprime polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RationalParts", into = "RationalParts")]
pub struct RationalMap {
    num: ComplexPolynomial,
    den: ComplexPolynomial,
}

/// Wire form of a rational map: unnormalized numerator and denominator.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalParts {
    pub num: ComplexPolynomial,
    pub den: ComplexPolynomial,
}

impl TryFrom<RationalParts> for RationalMap {
    type Error = Error;

    fn try_from(parts: RationalParts) -> Result<Self> {
        RationalMap::new(parts.num, parts.den)
    }
}

impl From<RationalMap> for RationalParts {
    fn from(f: RationalMap) -> Self {
        RationalParts { num: f.num, den: f.den }
    }
}

/// Divides out the approximate GCD and makes the denominator monic.
pub fn rational_normalize(num: ComplexPolynomial, den: ComplexPolynomial) -> Result<RationalMap> {
    RationalMap::new(num, den)
}

impl RationalMap {
    pub fn new(num: ComplexPolynomial, den: ComplexPolynomial) -> Result<Self> {
        if den.is_zero() {
            let msg = if num.is_zero() {
                "numerator and denominator are both zero"
            } else {
                "zero denominator"
            };
            return Err(Error::DegenerateInput(msg.into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = ComplexPolynomial::gcd(&num, &den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        } else {
            (num, den)
        };
        let lead = den.leading();
        let num = num.scale(lead.inv());
        let den = den.monic();
        Ok(Self { num, den })
    }

    pub fn zero() -> Self {
        Self { num: ComplexPolynomial::zero(), den: ComplexPolynomial::one() }
    }

    pub fn from_poly(p: ComplexPolynomial) -> Self {
        Self { num: p, den: ComplexPolynomial::one() }
    }

    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(ComplexPolynomial::from_real(num), ComplexPolynomial::from_real(den))
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self::from_poly(ComplexPolynomial::z())
    }

    pub fn num(&self) -> &ComplexPolynomial {
        &self.num
    }

    pub fn den(&self) -> &ComplexPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Topological degree `max(deg num, deg den)`; zero for constants.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Plain evaluation; infinite or NaN at poles.
    pub fn eval(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Evaluation on the Riemann sphere.
    pub fn eval_point(&self, z: RiemannPoint) -> RiemannPoint {
        match z {
            RiemannPoint::Finite(z) => {
                let d = self.den.eval(z);
                let n = self.num.eval(z);
                let scale = self.den.coeffs().iter().enumerate().map(|(k, c)| c.norm() * z.norm().powi(k as i32)).sum::<f64>();
                if d.norm() <= 1e-15 * scale && n.norm() > 0.0 {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite(n / d)
                }
            }
            RiemannPoint::Infinity => {
                let p = self.num.degree().unwrap_or(0);
                let q = self.den.degree().unwrap_or(0);
                if self.num.is_zero() || p < q {
                    RiemannPoint::Finite(C64::new(0.0, 0.0))
                } else if p > q {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite(self.num.leading() / self.den.leading())
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(&(&self.num * &other.den) - &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn scale(&self, c: C64) -> Self {
        if c.norm() == 0.0 {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Numerator of the derivative before normalisation: `num' den - num den'`.
    pub fn wronskian(&self) -> ComplexPolynomial {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    pub fn derivative(&self) -> Result<Self> {
        Self::new(self.wronskian(), &self.den * &self.den)
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let n = self.degree();
        let r = inner.num();
        let s = inner.den();
        let r_pows: Vec<ComplexPolynomial> = (0..=n as u32).map(|k| r.pow(k)).collect();
        let s_pows: Vec<ComplexPolynomial> = (0..=n as u32).map(|k| s.pow(k)).collect();
        let homogenize = |p: &ComplexPolynomial| {
            p.coeffs()
                .iter()
                .enumerate()
                .fold(ComplexPolynomial::zero(), |acc, (k, &c)| {
                    &acc + &(&r_pows[k] * &s_pows[n - k]).scale(c)
                })
        };
        Self::new(homogenize(&self.num), homogenize(&self.den))
    }

    /// Local degree at infinity (1 when infinity is not critical).
    pub fn local_degree_at_infinity(&self) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::DegenerateInput("constant map has no local degree".into()));
        }
        let p = self.num.degree().unwrap_or(0);
        let q = self.den.degree().unwrap_or(0);
        if p != q {
            return Ok(p.abs_diff(q));
        }
        let diff = &self.num.scale(self.den.leading()) - &self.den.scale(self.num.leading());
        Ok(p - diff.degree().unwrap_or(0))
    }

    /// Critical points with their local degrees (all >= 2), finite ones first
    /// (in root order) and infinity last when critical.
    pub fn critical_points(&self, tol: f64) -> Result<Vec<(RiemannPoint, usize)>> {
        if self.is_constant() {
            return Err(Error::DegenerateInput("constant map has no critical points".into()));
        }
        let w = self.wronskian();
        let mut out: Vec<(RiemannPoint, usize)> = if w.degree().unwrap_or(0) > 0 {
            w.distinct_roots(tol)?
                .into_iter()
                .map(|(c, m)| (RiemannPoint::Finite(c), m + 1))
                .collect()
        } else {
            Vec::new()
        };
        let at_inf = self.local_degree_at_infinity()?;
        if at_inf >= 2 {
            out.push((RiemannPoint::Infinity, at_inf));
        }
        Ok(out)
    }

    /// Maximum coefficient distance to another normalised map, or infinity
    /// when the degrees differ.
    pub fn coefficient_distance(&self, other: &Self) -> f64 {
        if self.num.degree() != other.num.degree() || self.den.degree() != other.den.degree() {
            return f64::INFINITY;
        }
        let pairs = self
            .num
            .coeffs()
            .iter()
            .zip(other.num.coeffs())
            .chain(self.den.coeffs().iter().zip(other.den.coeffs()));
        pairs.map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}
