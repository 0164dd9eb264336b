use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::linalg::{determinant, CMatrix};
use super::{ensure_finite, zero_tolerance, C64};
use crate::error::{Error, Result};

const ROOT_MAX_ITERATIONS: usize = 500;
/// Remainders below this fraction of the dividend's scale end a GCD chain.
const GCD_TOLERANCE: f64 = 1e-10;
const GCD_VERIFY_TOLERANCE: f64 = 1e-8;
const CLUSTER_RADIUS: f64 = 1e-4;

/// Dense polynomial with complex coefficients, ascending by degree.
///
/// The coefficient vector is either empty (the zero polynomial) or ends in a
/// coefficient that is nonzero at the zero tolerance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<C64>", into = "Vec<C64>")]
pub struct ComplexPolynomial {
    coeffs: Vec<C64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &ComplexPolynomial, q: &ComplexPolynomial, op: PolyOp) -> ComplexPolynomial {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

impl TryFrom<Vec<C64>> for ComplexPolynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<C64>) -> Result<Self> {
        for &c in &coeffs {
            ensure_finite(c)?;
        }
        Ok(Self::new(coeffs))
    }
}

impl From<ComplexPolynomial> for Vec<C64> {
    fn from(p: ComplexPolynomial) -> Self {
        p.coeffs
    }
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<C64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `c z^k`
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(C64::new(1.0, 0.0), 1)
    }

    /// Monic polynomial `prod (z - r)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        let scale = self.max_abs();
        self.trim_relative(scale);
    }

    /// Drops trailing coefficients that are zero relative to `scale`.
    fn trim_relative(&mut self, scale: f64) {
        let eps = zero_tolerance() * (1.0 + scale);
        while let Some(c) = self.coeffs.last() {
            if c.norm() <= eps {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        let mut coeffs: Vec<C64> = self.coeffs.iter().map(|&a| a / lead).collect();
        *coeffs.last_mut().unwrap() = C64::new(1.0, 0.0);
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(inner(z))` by Horner's scheme.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| &(&acc * inner) + &Self::constant(c))
    }

    /// Coefficients of `t -> self(center + t)`, by repeated synthetic division.
    pub fn taylor_shift(&self, center: C64) -> Vec<C64> {
        let mut work = self.coeffs.clone();
        let n = work.len();
        for i in 0..n {
            for k in (i..n - 1).rev() {
                let next = work[k + 1];
                work[k] += center * next;
            }
        }
        work
    }

    /// Long division; the remainder is trimmed relative to the dividend's scale.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::DegenerateInput("division by the zero polynomial".into()))?;
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C64::new(0.0, 0.0); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * d;
            }
            rem[k + dd] = C64::new(0.0, 0.0);
        }
        rem.truncate(dd);
        let mut r = Self { coeffs: rem };
        r.trim_relative(self.max_abs());
        Ok((Self::new(quot), r))
    }

    /// Exact-at-tolerance division; fails when the remainder is not negligible.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.max_abs() > GCD_VERIFY_TOLERANCE * (1.0 + self.max_abs()) {
            return Err(Error::DegenerateInput("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Approximate monic greatest common divisor (Euclid with relative
    /// remainder thresholds, verified by back-division).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return b.monic(),
            (false, true) => return a.monic(),
            _ => {}
        }
        let (mut x, mut y) = if a.coeffs.len() >= b.coeffs.len() {
            (a.monic(), b.monic())
        } else {
            (b.monic(), a.monic())
        };
        let candidate = loop {
            if y.degree() == Some(0) {
                return Self::one();
            }
            let scale = x.max_abs().max(y.max_abs());
            let Ok((_, mut r)) = x.div_rem(&y) else {
                return Self::one();
            };
            let eps = GCD_TOLERANCE * scale;
            while r.coeffs.last().is_some_and(|c| c.norm() <= eps) {
                r.coeffs.pop();
            }
            if r.is_zero() {
                break y;
            }
            x = y;
            y = r.monic();
        };
        let divides = |p: &Self| {
            p.div_rem(&candidate)
                .map(|(_, r)| r.max_abs() <= GCD_VERIFY_TOLERANCE * (1.0 + p.max_abs()))
                .unwrap_or(false)
        };
        if divides(&a.monic()) && divides(&b.monic()) {
            candidate
        } else {
            Self::one()
        }
    }

    /// Yun's square-free decomposition: returns monic `s_1, s_2, ...` with
    /// `self = lead * prod s_i^i`, each `s_i` square-free.
    pub fn squarefree_factors(&self) -> Vec<Self> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Self::gcd(&f, &df);
        let mut b = f.div_exact(&a0).unwrap_or_else(|_| f.clone());
        let c = df.div_exact(&a0).unwrap_or_else(|_| df.clone());
        let mut d = &c - &b.derivative();
        let mut factors = Vec::new();
        while b.degree().is_some_and(|n| n > 0) && factors.len() < deg {
            let a = Self::gcd(&b, &d);
            let nb = b.div_exact(&a).unwrap_or_else(|_| b.clone());
            let c = d.div_exact(&a).unwrap_or_else(|_| d.clone());
            d = &c - &nb.derivative();
            b = nb;
            factors.push(a);
        }
        while factors.last().is_some_and(|s| s.degree() == Some(0)) {
            factors.pop();
        }
        factors
    }

    /// Distinct roots paired with their multiplicities. Falls back to
    /// clustering the full root list when square-free factoring does not
    /// account for every root.
    pub fn distinct_roots(&self, tol: f64) -> Result<Vec<(C64, usize)>> {
        let n = self.degree().unwrap_or(0);
        let mut out = Vec::new();
        for (i, s) in self.squarefree_factors().iter().enumerate() {
            if s.degree().is_some_and(|n| n > 0) {
                match s.roots(tol) {
                    Ok(rs) => out.extend(rs.into_iter().map(|r| (r, i + 1))),
                    Err(_) => return self.clustered_roots(tol),
                }
            }
        }
        if out.iter().map(|&(_, m)| m).sum::<usize>() != n {
            return self.clustered_roots(tol);
        }
        Ok(out)
    }

    fn clustered_roots(&self, tol: f64) -> Result<Vec<(C64, usize)>> {
        let roots = self.roots(tol.max(1e-6))?;
        let mut clusters: Vec<Vec<C64>> = Vec::new();
        for r in roots {
            let near = |z: &C64| (z - r).norm() <= CLUSTER_RADIUS * r.norm().max(1.0);
            match clusters.iter_mut().find(|c| c.iter().any(near)) {
                Some(c) => c.push(r),
                None => clusters.push(vec![r]),
            }
        }
        let scale = self.max_abs();
        let mut out = Vec::new();
        for cluster in clusters {
            let m = cluster.len();
            let mut center = cluster.iter().sum::<C64>() / m as f64;
            let mut dm = self.clone();
            for _ in 1..m {
                dm = dm.derivative();
            }
            center = polish(&dm, center);
            // the lower derivatives must vanish too, otherwise the roots
            // were merely close
            let mut dj = self.clone();
            let mut genuine = true;
            for j in 0..m - 1 {
                let bound = CLUSTER_RADIUS * scale * center.norm().max(1.0).powi((n_of(self) - j) as i32);
                if dj.eval(center).norm() > bound {
                    genuine = false;
                    break;
                }
                dj = dj.derivative();
            }
            if genuine {
                out.push((center, m));
            } else {
                out.extend(cluster.into_iter().map(|r| (r, 1)));
            }
        }
        Ok(out)
    }

    /// All `degree` roots with multiplicity (Aberth–Ehrlich iteration,
    /// deterministic starts). Each root satisfies
    /// `|p(r)| <= tol * max|coeff| * max(1, |r|)^degree`.
    pub fn roots(&self, tol: f64) -> Result<Vec<C64>> {
        let n = match self.degree() {
            None | Some(0) => {
                return Err(Error::DegenerateInput("root finding needs degree >= 1".into()))
            }
            Some(n) => n,
        };
        let zero_eps = zero_tolerance() * (1.0 + self.max_abs());
        let zeros = self.coeffs.iter().take_while(|c| c.norm() <= zero_eps).count();
        let mut roots = vec![C64::new(0.0, 0.0); zeros];
        if zeros < n {
            let reduced = Self::new(self.coeffs[zeros..].to_vec()).monic();
            roots.extend(aberth(&reduced)?);
        }
        let bound = tol * self.max_abs();
        for r in roots.iter_mut() {
            *r = polish(self, *r);
            let residual = self.eval(*r).norm();
            if residual > bound * r.norm().max(1.0).powi(n as i32) {
                return Err(Error::NonConvergence(format!(
                    "root {r} has residual {residual:e} above tolerance"
                )));
            }
        }
        let grid = tol.max(f64::EPSILON);
        let key = |z: &C64| ((z.re / grid).round(), (z.im / grid).round());
        roots.sort_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        });
        Ok(roots)
    }

    /// Sylvester-matrix resultant.
    pub fn resultant(p: &Self, q: &Self) -> Result<C64> {
        let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
            return Err(Error::DegenerateInput("resultant of the zero polynomial".into()));
        };
        let size = m + n;
        if size == 0 {
            return Ok(C64::new(1.0, 0.0));
        }
        let mut s = CMatrix::zeros(size, size);
        for row in 0..n {
            for (k, &c) in p.coeffs.iter().rev().enumerate() {
                s[(row, row + k)] = c;
            }
        }
        for row in 0..m {
            for (k, &c) in q.coeffs.iter().rev().enumerate() {
                s[(n + row, row + k)] = c;
            }
        }
        Ok(determinant(&s))
    }

    /// `(-1)^{n(n-1)/2} res(p, p') / lead(p)`.
    pub fn discriminant(&self) -> Result<C64> {
        let n = match self.degree() {
            Some(n) if n >= 2 => n,
            _ => return Err(Error::DegenerateInput("discriminant needs degree >= 2".into())),
        };
        let res = Self::resultant(self, &self.derivative())?;
        let sign = if (n * (n - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(res * sign / self.leading())
    }
}

fn aberth(p: &ComplexPolynomial) -> Result<Vec<C64>> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let c = p.coeffs();
    let radius = (0..n)
        .map(|k| c[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            C64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..ROOT_MAX_ITERATIONS {
        let mut largest_step: f64 = 0.0;
        for k in 0..n {
            let (pz, dpz) = p.eval_with_derivative(z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let repulsion: C64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let diff = z[k] - z[j];
                    if diff.norm() == 0.0 {
                        C64::new(0.0, 0.0)
                    } else {
                        diff.inv()
                    }
                })
                .sum();
            let newton = if dpz.norm() == 0.0 {
                C64::new(radius * 1e-3, radius * 1e-3)
            } else {
                pz / dpz
            };
            let denom = C64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            if !(step.re.is_finite() && step.im.is_finite()) {
                return Err(Error::NonConvergence("root iteration produced non-finite step".into()));
            }
            z[k] -= step;
            largest_step = largest_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if largest_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    Ok(z)
}

/// A few guarded Newton steps on the original polynomial.
fn n_of(p: &ComplexPolynomial) -> usize {
    p.degree().unwrap_or(0)
}

fn polish(p: &ComplexPolynomial, mut r: C64) -> C64 {
    let mut best = p.eval(r).norm();
    for _ in 0..3 {
        let (v, dv) = p.eval_with_derivative(r);
        if dv.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        let candidate = r - v / dv;
        let value = p.eval(candidate).norm();
        if value < best {
            best = value;
            r = candidate;
        } else {
            break;
        }
    }
    r
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn add(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn sub(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPolynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn mul(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPolynomial::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPolynomial::new(out)
    }
}

impl Neg for &ComplexPolynomial {
    type Output = ComplexPolynomial;

    fn neg(self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for ComplexPolynomial {
            type Output = ComplexPolynomial;
            fn $method(self, rhs: ComplexPolynomial) -> ComplexPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
