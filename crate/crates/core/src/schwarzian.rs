//! Schwarzian derivatives of rational maps and Laurent data of quadratic
//! differentials at finite poles and at infinity.

use serde::{Deserialize, Serialize};

use crate::algebra::series::div_truncated;
use crate::algebra::{C64, ComplexPolynomial, RationalMap, RiemannPoint};
use crate::error::{Error, Result};
use crate::primitivity::CriticalConfiguration;

/// Denominator coefficients below this fraction of the shifted denominator's
/// scale count as vanishing when measuring pole order.
pub const POLE_TOLERANCE: f64 = 1e-7;

/// Relative tolerance for reading an integer local degree off `(1 - d^2)/2`.
pub const DEGREE_TOLERANCE: f64 = 1e-8;

/// Germ of a quadratic differential at a pole:
/// `phi = leading/(z-c)^2 + a_1/(z-c) + a_2 + a_3 (z-c) + ...`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentData {
    pub pole: RiemannPoint,
    pub leading: C64,
    /// `a_1, a_2, ..., a_N`.
    pub residue_and_tail: Vec<C64>,
    pub local_degree_hint: Option<u32>,
}

impl LaurentData {
    /// `a_k` for `k >= 1`; zero beyond the stored order.
    pub fn a(&self, k: usize) -> C64 {
        assert!(k >= 1, "Laurent tail is indexed from 1");
        self.residue_and_tail.get(k - 1).copied().unwrap_or_default()
    }

    /// `a_1, ..., a_n`.
    pub fn tail(&self, n: usize) -> Vec<C64> {
        (1..=n).map(|k| self.a(k)).collect()
    }
}

/// Pole structure of `phi dz^2` at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfinityType {
    TriplePole,
    DoublePole { leading: C64 },
    SimplePole,
    Regular,
}

/// `S_f = f'''/f' - (3/2)(f''/f')^2`, as an exact rational function.
///
/// With `f = P/Q` and `W = P'Q - PQ'` this is
/// `(W'' W - (3/2) W'^2 + 2 W (P'' Q' - P' Q'')) / W^2`.
pub fn schwarzian(f: &RationalMap) -> Result<RationalMap> {
    if f.is_constant() {
        return Err(Error::DegenerateInput("the Schwarzian of a constant is undefined".into()));
    }
    let p = f.num();
    let q = f.den();
    let w = f.wronskian();
    let dw = w.derivative();
    let ddw = dw.derivative();
    let cross = &(&p.derivative().derivative() * &q.derivative())
        - &(&p.derivative() * &q.derivative().derivative());
    let num = &(&(&ddw * &w) - &(&dw * &dw).scale(C64::new(1.5, 0.0))) + &(&w * &cross).scale(C64::new(2.0, 0.0));
    RationalMap::new(num, &w * &w)
}

/// Integer `d >= 1` with `leading = (1 - d^2)/2`, if there is one.
pub fn local_degree_from_leading(leading: C64) -> Option<u32> {
    let delta = (C64::new(1.0, 0.0) - leading * 2.0).sqrt();
    let d = delta.re.round();
    if d < 1.0 {
        return None;
    }
    let expected = (1.0 - d * d) / 2.0;
    if (leading - expected).norm() <= DEGREE_TOLERANCE * (1.0 + leading.norm()) {
        Some(d as u32)
    } else {
        None
    }
}

/// Laurent data of `phi` at the finite point `c`, with tail `a_1..a_order`.
pub fn laurent_at(phi: &RationalMap, c: C64, order: usize) -> Result<LaurentData> {
    let ns = phi.num().taylor_shift(c);
    let ds = phi.den().taylor_shift(c);
    let scale = ds.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let multiplicity = ds.iter().take_while(|x| x.norm() <= POLE_TOLERANCE * scale).count();
    if multiplicity > 2 {
        return Err(Error::PoleTooHigh { order: multiplicity });
    }
    let shift = 2 - multiplicity;
    // (z - c)^2 phi = t^shift * ns / ds[multiplicity..]
    let quotient = div_truncated(&ns, &ds[multiplicity..], order + 1)?;
    let mut s = vec![C64::new(0.0, 0.0); order + 1];
    for (k, v) in quotient.into_iter().enumerate() {
        if k + shift <= order {
            s[k + shift] = v;
        }
    }
    let leading = s[0];
    Ok(LaurentData {
        pole: RiemannPoint::Finite(c),
        leading,
        residue_and_tail: s[1..].to_vec(),
        local_degree_hint: local_degree_from_leading(leading),
    })
}

/// The quadratic differential `phi(z) dz^2` in the chart `w = 1/z`:
/// `Phi(w) = phi(1/w) w^{-4}`.
pub fn chart_at_infinity(phi: &RationalMap) -> Result<RationalMap> {
    if phi.is_zero() {
        return Ok(RationalMap::zero());
    }
    let reversed = |p: &ComplexPolynomial| {
        let mut c = p.coeffs().to_vec();
        c.reverse();
        ComplexPolynomial::new(c)
    };
    let n = phi.num().degree().unwrap_or(0) as i64;
    let m = phi.den().degree().unwrap_or(0) as i64;
    let num = reversed(phi.num());
    let den = reversed(phi.den());
    let power = m - n - 4;
    let one = C64::new(1.0, 0.0);
    if power >= 0 {
        RationalMap::new(&num * &ComplexPolynomial::monomial(one, power as usize), den)
    } else {
        RationalMap::new(num, &den * &ComplexPolynomial::monomial(one, (-power) as usize))
    }
}

/// Laurent data of `phi dz^2` at infinity, read in the chart `w = 1/z`.
pub fn laurent_at_infinity(phi: &RationalMap, order: usize) -> Result<LaurentData> {
    let chart = chart_at_infinity(phi)?;
    let mut data = laurent_at(&chart, C64::new(0.0, 0.0), order)?;
    data.pole = RiemannPoint::Infinity;
    Ok(data)
}

/// Classifies infinity for `phi dz^2` from the degrees of `phi`.
pub fn infinity_type(phi: &RationalMap) -> Result<InfinityType> {
    if phi.is_zero() {
        return Ok(InfinityType::Regular);
    }
    let n = phi.num().degree().unwrap_or(0) as i64;
    let m = phi.den().degree().unwrap_or(0) as i64;
    match n + 4 - m {
        p if p > 3 => Err(Error::PoleTooHigh { order: p as usize }),
        3 => Ok(InfinityType::TriplePole),
        2 => Ok(InfinityType::DoublePole { leading: phi.num().leading() / phi.den().leading() }),
        1 => Ok(InfinityType::SimplePole),
        _ => Ok(InfinityType::Regular),
    }
}

/// `E_{m+1} = sum_i (m c_i^{m-1} + c_i^m A_i)` for `m = 0..count`.
/// The `m = 0` term `0 * c^{-1}` is taken as 0, even at `c = 0`.
pub fn e_sums(config: &CriticalConfiguration, count: usize) -> Vec<C64> {
    (0..count)
        .map(|m| {
            config
                .points
                .iter()
                .zip(&config.params)
                .map(|(&c, &a)| {
                    let derivative_term = if m == 0 { C64::new(0.0, 0.0) } else { c.powu(m as u32 - 1) * m as f64 };
                    derivative_term + c.powu(m as u32) * a
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MobiusMap;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn phi1() -> RationalMap {
        RationalMap::from_real(&[-1.5], &[0.0, 0.0, 1.0, -2.0, 1.0]).unwrap()
    }

    fn phi2() -> RationalMap {
        RationalMap::from_real(&[-1.5, 4.0, -4.0], &[0.0, 0.0, 1.0, -2.0, 1.0]).unwrap()
    }

    #[test]
    fn schwarzian_of_worked_examples() {
        let f1 = RationalMap::from_real(&[0.0, 0.0, 1.0], &[1.0, -2.0, 1.0]).unwrap();
        assert!(schwarzian(&f1).unwrap().coefficient_distance(&phi1()) < 1e-12);
        let f2 = RationalMap::from_real(&[0.0, 0.0, -3.0, 2.0], &[1.0]).unwrap();
        assert!(schwarzian(&f2).unwrap().coefficient_distance(&phi2()) < 1e-12);
    }

    #[test]
    fn schwarzian_of_mobius_vanishes() {
        let m = MobiusMap::new(C64::new(1.0, 2.0), c(-1.0), C64::new(0.0, 1.0), c(3.0)).unwrap();
        assert!(schwarzian(&m.to_rational()).unwrap().is_zero());
        assert!(schwarzian(&RationalMap::identity()).unwrap().is_zero());
    }

    #[test]
    fn schwarzian_of_constant_is_an_error() {
        let k = RationalMap::from_real(&[2.0], &[1.0]).unwrap();
        assert!(matches!(schwarzian(&k), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn higher_critical_point_cancels() {
        let z4 = RationalMap::from_real(&[0.0, 0.0, 0.0, 0.0, 1.0], &[1.0]).unwrap();
        let s = schwarzian(&z4).unwrap();
        let expected = RationalMap::from_real(&[-7.5], &[0.0, 0.0, 1.0]).unwrap();
        assert!(s.coefficient_distance(&expected) < 1e-12, "{s}");
    }

    #[test]
    fn laurent_of_phi1_at_zero() {
        // -(3/2)(1 - z)^{-2} = -(3/2)(1 + 2z + 3z^2 + 4z^3 + ...)
        let data = laurent_at(&phi1(), c(0.0), 4).unwrap();
        assert!((data.leading - c(-1.5)).norm() < 1e-14);
        assert_eq!(data.local_degree_hint, Some(2));
        let expected = [-3.0, -4.5, -6.0, -7.5];
        for (k, e) in expected.iter().enumerate() {
            assert!((data.a(k + 1) - c(*e)).norm() < 1e-12);
        }
    }

    #[test]
    fn laurent_of_pure_double_pole() {
        let phi = RationalMap::from_real(&[-1.5], &[0.0, 0.0, 1.0]).unwrap();
        let data = laurent_at(&phi, c(0.0), 5).unwrap();
        assert!((data.leading - c(-1.5)).norm() < 1e-15);
        assert!(data.residue_and_tail.iter().all(|a| a.norm() < 1e-15));
    }

    #[test]
    fn laurent_of_phi2_at_one() {
        // Partial-fraction oracle: with u = z - 1,
        // phi2 = -(8u^2 + 8u + 3) / (2 u^2 (1+u)^2); residue = -(3/2) * (2/3) = -1.
        let data = laurent_at(&phi2(), c(1.0), 3).unwrap();
        assert!((data.leading - c(-1.5)).norm() < 1e-12);
        assert!((data.a(1) - c(-1.0)).norm() < 1e-12);
    }

    #[test]
    fn regular_point_and_too_high_pole() {
        let phi = RationalMap::from_real(&[1.0], &[1.0, 1.0]).unwrap();
        let data = laurent_at(&phi, c(0.0), 3).unwrap();
        assert_eq!(data.leading, c(0.0));
        assert_eq!(data.a(1), c(0.0));
        assert!((data.a(2) - c(1.0)).norm() < 1e-15);
        assert_eq!(data.local_degree_hint, Some(1));
        let cubic_pole = RationalMap::from_real(&[1.0], &[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(laurent_at(&cubic_pole, c(0.0), 3), Err(Error::PoleTooHigh { order: 3 })));
    }

    #[test]
    fn non_integer_leading_has_no_hint() {
        assert_eq!(local_degree_from_leading(c(-0.5)), None);
        assert_eq!(local_degree_from_leading(c(0.375)), None);
        assert_eq!(local_degree_from_leading(c(-4.0)), Some(3));
        assert_eq!(local_degree_from_leading(c(-7.5)), Some(4));
    }

    #[test]
    fn infinity_types() {
        assert_eq!(infinity_type(&phi1()).unwrap(), InfinityType::Regular);
        assert_eq!(infinity_type(&phi2()).unwrap(), InfinityType::DoublePole { leading: c(-4.0) });
        // 1/z dz^2 = w^{-3} dw^2: a triple pole at infinity.
        let inv = RationalMap::from_real(&[1.0], &[0.0, 1.0]).unwrap();
        assert_eq!(infinity_type(&inv).unwrap(), InfinityType::TriplePole);
        let inv3 = RationalMap::from_real(&[1.0], &[0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(infinity_type(&inv3).unwrap(), InfinityType::SimplePole);
        let poly = RationalMap::from_real(&[1.0], &[1.0]).unwrap();
        assert!(matches!(infinity_type(&poly), Err(Error::PoleTooHigh { order: 4 })));
    }

    #[test]
    fn laurent_at_infinity_of_polynomial_schwarzian() {
        let data = laurent_at_infinity(&phi2(), 3).unwrap();
        assert_eq!(data.pole, RiemannPoint::Infinity);
        assert!((data.leading - c(-4.0)).norm() < 1e-12);
        assert_eq!(data.local_degree_hint, Some(3));
    }

    #[test]
    fn e_sums_of_examples() {
        let rational = CriticalConfiguration::new(vec![c(1.0), c(0.0)], vec![c(-2.0), c(2.0)]).unwrap();
        let e = e_sums(&rational, 3);
        assert!(e.iter().all(|x| x.norm() < 1e-15));
        let poly = CriticalConfiguration::new(vec![c(1.0), c(0.0)], vec![c(2.0 / 3.0), c(-2.0 / 3.0)]).unwrap();
        let e = e_sums(&poly, 2);
        assert!(e[0].norm() < 1e-15);
        assert!((e[1] - c(8.0 / 3.0)).norm() < 1e-15);
        let empty = CriticalConfiguration::new(vec![], vec![]).unwrap();
        assert!(e_sums(&empty, 4).iter().all(|x| x.norm() == 0.0));
    }
}
