use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::{chordal_distance, C64, ComplexPolynomial, RationalMap, RiemannPoint};
use crate::error::{Error, Result};

/// `z -> (a z + b) / (c z + d)`, stored with determinant 1 (up to sign).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub entries: [C64; 4],
}

impl MobiusMap {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if det.norm() <= 1e-14 * scale * scale || scale == 0.0 {
            return Err(Error::DegenerateInput("Möbius matrix is singular".into()));
        }
        let k = det.sqrt().inv();
        Ok(Self { entries: [a * k, b * k, c * k, d * k] })
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self { entries: [one, zero, zero, one] }
    }

    pub fn apply(&self, z: RiemannPoint) -> RiemannPoint {
        let [a, b, c, d] = self.entries;
        match z {
            RiemannPoint::Infinity => {
                if c.norm() == 0.0 {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite(a / c)
                }
            }
            RiemannPoint::Finite(z) => {
                let den = c * z + d;
                if den.norm() <= 1e-15 * ((c * z).norm() + d.norm()) {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite((a * z + b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.entries;
        Self { entries: [d, -b, -c, a] }
    }

    pub fn compose(&self, inner: &Self) -> Self {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = inner.entries;
        Self { entries: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h] }
    }

    /// True when the matrix is `±identity` within `tol`.
    pub fn is_identity(&self, tol: f64) -> bool {
        let [a, b, c, d] = self.entries;
        let sign = if (a - 1.0).norm() <= (a + 1.0).norm() { 1.0 } else { -1.0 };
        (a - sign).norm() <= tol && b.norm() <= tol && c.norm() <= tol && (d - sign).norm() <= tol
    }

    pub fn to_rational(&self) -> RationalMap {
        let [a, b, c, d] = self.entries;
        RationalMap::new(ComplexPolynomial::new(vec![b, a]), ComplexPolynomial::new(vec![d, c]))
            .expect("nonsingular Möbius map has a nonzero denominator")
    }

    /// The unique map carrying `src[i]` to `dst[i]` for `i = 0, 1, 2`.
    pub fn from_triples(src: [RiemannPoint; 3], dst: [RiemannPoint; 3]) -> Result<Self> {
        let to_standard_src = to_zero_one_infinity(src)?;
        let to_standard_dst = to_zero_one_infinity(dst)?;
        Ok(to_standard_dst.inverse().compose(&to_standard_src))
    }
}

impl Mul for MobiusMap {
    type Output = MobiusMap;

    fn mul(self, rhs: MobiusMap) -> MobiusMap {
        self.compose(&rhs)
    }
}

pub fn mobius_apply(m: &MobiusMap, z: RiemannPoint) -> RiemannPoint {
    m.apply(z)
}

pub fn mobius_from_triples(src: [RiemannPoint; 3], dst: [RiemannPoint; 3]) -> Result<MobiusMap> {
    MobiusMap::from_triples(src, dst)
}

fn distinct(points: &[RiemannPoint]) -> bool {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if chordal_distance(points[i], points[j]) <= 1e-12 {
                return false;
            }
        }
    }
    true
}

/// Sends `(z1, z2, z3)` to `(0, 1, infinity)`.
fn to_zero_one_infinity(p: [RiemannPoint; 3]) -> Result<MobiusMap> {
    if !distinct(&p) {
        return Err(Error::DegenerateInput("Möbius triple has repeated points".into()));
    }
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    use RiemannPoint::{Finite, Infinity};
    match p {
        [Infinity, Finite(z2), Finite(z3)] => MobiusMap::new(zero, z2 - z3, one, -z3),
        [Finite(z1), Infinity, Finite(z3)] => MobiusMap::new(one, -z1, one, -z3),
        [Finite(z1), Finite(z2), Infinity] => MobiusMap::new(one, -z1, zero, z2 - z1),
        [Finite(z1), Finite(z2), Finite(z3)] => {
            MobiusMap::new(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
        }
        _ => unreachable!("distinct points contain at most one infinity"),
    }
}
