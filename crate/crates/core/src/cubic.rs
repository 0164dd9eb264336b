//! Four-point geometry on the sphere and the cubic Wronskian fiber:
//! cross ratios, regular tetrahedra, the explicit inversion of the degree-4
//! Wronskian, and the Klein four-group of a critical set.

use serde::{Deserialize, Serialize};

use crate::algebra::{chordal_distance, C64, ComplexPolynomial, MobiusMap, RationalMap, RiemannPoint};
use crate::error::{Error, Result};
use crate::reconstruction::NormalizedMapCoords;

/// Chordal separation below which two sphere points count as equal.
const POINT_TOLERANCE: f64 = 1e-12;
/// Tolerance for the image of the fourth point under a four-group element.
const FOURTH_POINT_TOLERANCE: f64 = 1e-8;
/// Sup chordal residual allowed when verifying `f o M = N o f`.
pub const LIFT_TOLERANCE: f64 = 1e-7;

/// `(1 + i sqrt 3)/2 = -j^2`.
pub const TETRAHEDRAL_RATIO: C64 = C64::new(0.5, 0.866_025_403_784_438_6);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourPointSet {
    pub points: [RiemannPoint; 4],
}

impl FourPointSet {
    pub fn new(points: [RiemannPoint; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..i {
                if chordal_distance(points[i], points[j]) <= POINT_TOLERANCE {
                    return Err(Error::DegenerateInput(format!("repeated point {}", points[i])));
                }
            }
        }
        Ok(Self { points })
    }

    pub fn finite(points: [C64; 4]) -> Result<Self> {
        Self::new(points.map(RiemannPoint::Finite))
    }

    pub fn cross_ratio(&self) -> C64 {
        let [a, b, c, d] = self.points;
        cross_ratio(a, b, c, d).expect("points are distinct")
    }
}

/// The anharmonic orbit `{t, 1/t, 1-t, 1/(1-t), t/(t-1), (t-1)/t}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossRatioOrbit {
    pub values: [C64; 6],
}

impl CrossRatioOrbit {
    pub fn contains(&self, t: C64, tol: f64) -> bool {
        self.values.iter().any(|v| (v - t).norm() <= tol * (1.0 + t.norm()))
    }

    /// Members with repeats collapsed.
    pub fn distinct(&self, tol: f64) -> Vec<C64> {
        let mut out: Vec<C64> = Vec::new();
        for &v in &self.values {
            if !out.iter().any(|u| (u - v).norm() <= tol * (1.0 + v.norm())) {
                out.push(v);
            }
        }
        out
    }
}

/// `[a, b, c, d] = (a - c)(b - d) / ((c - b)(d - a))`, by its limit when one
/// point is infinity.
pub fn cross_ratio(a: RiemannPoint, b: RiemannPoint, c: RiemannPoint, d: RiemannPoint) -> Result<C64> {
    let set = FourPointSet::new([a, b, c, d])?;
    use RiemannPoint::{Finite as F, Infinity as I};
    Ok(match set.points {
        [F(a), F(b), F(c), F(d)] => (a - c) * (b - d) / ((c - b) * (d - a)),
        [I, F(b), F(c), F(d)] => -(b - d) / (c - b),
        [F(a), I, F(c), F(d)] => -(a - c) / (d - a),
        [F(a), F(b), I, F(d)] => -(b - d) / (d - a),
        [F(a), F(b), F(c), I] => -(a - c) / (c - b),
        _ => unreachable!("distinct points include at most one infinity"),
    })
}

pub fn ratio_orbit(t: C64) -> Result<CrossRatioOrbit> {
    let one = C64::new(1.0, 0.0);
    if t.norm() <= POINT_TOLERANCE || (t - one).norm() <= POINT_TOLERANCE || !t.is_finite() {
        return Err(Error::DegenerateInput(format!("cross ratio {t} is 0, 1 or infinite")));
    }
    Ok(CrossRatioOrbit { values: [t, one / t, one - t, one / (one - t), t / (t - one), (t - one) / t] })
}

/// True when some reordering of `v` has cross ratio `(1 ± i sqrt 3)/2`.
pub fn is_regular_tetrahedron(v: &FourPointSet, tol: f64) -> bool {
    let orbit = ratio_orbit(v.cross_ratio()).expect("distinct points");
    orbit.contains(TETRAHEDRAL_RATIO, tol) || orbit.contains(TETRAHEDRAL_RATIO.conj(), tol)
}

/// Coefficients `(w_0, w_1, w_2, w_3)` of a monic quartic.
pub fn quartic_coefficients(quartic: &ComplexPolynomial) -> Result<[C64; 4]> {
    if quartic.degree() != Some(4) {
        return Err(Error::DegenerateInput(format!("expected a quartic, got degree {:?}", quartic.degree())));
    }
    let m = quartic.monic();
    Ok([m.coeff(0), m.coeff(1), m.coeff(2), m.coeff(3)])
}

/// `w_2^2 + 12 w_0 - 3 w_1 w_3`: zero exactly when the two fiber points over
/// `z^4 + w_3 z^3 + w_2 z^2 + w_1 z + w_0` merge.
pub fn criticality_discriminant(w: [C64; 4]) -> C64 {
    let [w0, w1, w2, w3] = w;
    w2 * w2 + w0 * 12.0 - w1 * w3 * 3.0
}

/// Both normalized pairs `(a_0, a_1; b_0, b_1)` with Wronskian
/// `z^4 + w_3 z^3 + w_2 z^2 + w_1 z + w_0`; one when the branches merge.
/// The `+` branch of the principal root comes first.
pub fn cubic_fiber_explicit(w: [C64; 4]) -> Vec<NormalizedMapCoords> {
    let [_, w1, w2, w3] = w;
    let b1 = w3 / 2.0;
    let a0 = -w1 / 2.0;
    let s = criticality_discriminant(w).sqrt();
    let branch = |s: C64| {
        let a1 = (-w2 + s) / 2.0;
        let b0 = (w2 + s) / 6.0;
        NormalizedMapCoords::new(vec![a0, a1], vec![b0, b1]).expect("two blocks of length 2")
    };
    let scale = 1.0 + w.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if s.norm() <= 1e-12 * scale {
        vec![branch(C64::new(0.0, 0.0))]
    } else {
        vec![branch(s), branch(-s)]
    }
}

/// `h_alpha(z) = (alpha (z^3 + 2) + 3 z^2) / (2 z^3 + 3 alpha z + 1)`, with
/// critical points `1, j, j^2, alpha^2`.
pub fn h_alpha(alpha: C64) -> Result<RationalMap> {
    if (alpha.powu(6) - 1.0).norm() <= 1e-9 {
        return Err(Error::DegenerateInput(format!("alpha = {alpha} is a sixth root of unity")));
    }
    let num = ComplexPolynomial::new(vec![alpha * 2.0, C64::new(0.0, 0.0), C64::new(3.0, 0.0), alpha]);
    let den = ComplexPolynomial::new(vec![C64::new(1.0, 0.0), alpha * 3.0, C64::new(0.0, 0.0), C64::new(2.0, 0.0)]);
    RationalMap::new(num, den)
}

fn involution(src: [RiemannPoint; 3], dst: [RiemannPoint; 3], fourth: RiemannPoint, image: RiemannPoint) -> Result<MobiusMap> {
    let m = MobiusMap::from_triples(src, dst)?;
    let got = m.apply(fourth);
    if chordal_distance(got, image) > FOURTH_POINT_TOLERANCE {
        return Err(Error::DegenerateInput(format!("fourth point lands at {got}, expected {image}")));
    }
    Ok(m)
}

/// `[M_ab, M_ac, M_ad]`: the fixed-point-free involutions permuting `v`.
/// `M_ab` swaps `a <-> b` and `c <-> d`, and so on.
pub fn four_group(v: &FourPointSet) -> Result<[MobiusMap; 3]> {
    let [a, b, c, d] = v.points;
    Ok([
        involution([a, b, c], [b, a, d], d, c)?,
        involution([a, c, b], [c, a, d], d, b)?,
        involution([a, d, b], [d, a, c], c, b)?,
    ])
}

/// A four-group element `m` on the critical points of `f`, its partner `n`
/// on the critical values, and the sup chordal residual of `f o m = n o f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftPair {
    pub m: MobiusMap,
    pub n: MobiusMap,
    pub residual: f64,
}

fn sample_points() -> Vec<C64> {
    (0..20)
        .map(|k| {
            let k = k as f64;
            C64::from_polar(0.3 + 0.17 * k, 0.9 + 2.4 * k)
        })
        .collect()
}

/// Critical points (in root order) and values of a cubic with four simple
/// critical points.
pub fn critical_data(f: &RationalMap) -> Result<(FourPointSet, FourPointSet)> {
    if f.degree() != 3 {
        return Err(Error::DegenerateInput(format!("expected a cubic map, got degree {}", f.degree())));
    }
    let crit = f.critical_points(1e-10)?;
    if crit.len() != 4 || crit.iter().any(|&(_, d)| d != 2) {
        return Err(Error::DegenerateInput("the map does not have four simple critical points".into()));
    }
    let points = [crit[0].0, crit[1].0, crit[2].0, crit[3].0];
    let values = points.map(|p| f.eval_point(p));
    for i in 0..4 {
        for j in 0..i {
            if chordal_distance(values[i], values[j]) <= 1e-6 {
                return Err(Error::DegenerateInput(format!("critical values {} and {} collide", values[i], values[j])));
            }
        }
    }
    Ok((FourPointSet::new(points)?, FourPointSet::new(values)?))
}

/// The three pairs `(M, N)` with `f o M = N o f`, verified at sample points.
pub fn lift_correspondence(f: &RationalMap) -> Result<[LiftPair; 3]> {
    let (points, values) = critical_data(f)?;
    let ms = four_group(&points)?;
    let ns = four_group(&values)?;
    let samples = sample_points();
    let mut out = Vec::with_capacity(3);
    for (m, n) in ms.into_iter().zip(ns) {
        let residual = samples
            .iter()
            .map(|&z| {
                let z = RiemannPoint::Finite(z);
                chordal_distance(f.eval_point(m.apply(z)), n.apply(f.eval_point(z)))
            })
            .fold(0.0, f64::max);
        if residual > LIFT_TOLERANCE {
            return Err(Error::DegenerateInput(format!("lifted involution fails by {residual:.3e}")));
        }
        out.push(LiftPair { m, n, residual });
    }
    Ok([out[0], out[1], out[2]])
}
