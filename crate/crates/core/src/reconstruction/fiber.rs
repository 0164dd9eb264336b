use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{condition_number, solve, CMatrix};
use crate::algebra::{C64, ComplexPolynomial, RationalMap};
use crate::error::{Error, Result};

/// A fiber point is accepted when every Wronskian coefficient matches the
/// target to this accuracy.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
/// Max-norm distance under which two fiber points are the same.
pub const DEDUP_DISTANCE: f64 = 1e-6;
/// Jacobian condition number above which a solution is flagged.
pub const ILL_CONDITIONED: f64 = 1e10;

const MAX_ITERATIONS: usize = 100;
const MAX_HALVINGS: usize = 20;

/// Coordinates of the normalized pair
/// `p = sum a_p[i] z^i + z^{mu+1}`, `q = sum a_q[i] z^i + z^mu`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizedMapCoords {
    pub mu: usize,
    pub a_p: Vec<C64>,
    pub a_q: Vec<C64>,
}

impl NormalizedMapCoords {
    pub fn new(a_p: Vec<C64>, a_q: Vec<C64>) -> Result<Self> {
        if a_p.is_empty() || a_p.len() != a_q.len() {
            return Err(Error::DegenerateInput(format!(
                "coordinate blocks of lengths {} and {} (need equal, >= 1)",
                a_p.len(),
                a_q.len()
            )));
        }
        Ok(Self { mu: a_p.len(), a_p, a_q })
    }

    /// From the flat vector `(a_p[0..mu], a_q[0..mu])`.
    pub fn from_flat(x: &[C64]) -> Result<Self> {
        let mu = x.len() / 2;
        Self::new(x[..mu].to_vec(), x[mu..].to_vec())
    }

    pub fn flat(&self) -> Vec<C64> {
        self.a_p.iter().chain(&self.a_q).copied().collect()
    }

    pub fn p(&self) -> ComplexPolynomial {
        let mut c = self.a_p.clone();
        c.push(C64::new(0.0, 0.0));
        c.push(C64::new(1.0, 0.0));
        ComplexPolynomial::new(c)
    }

    pub fn q(&self) -> ComplexPolynomial {
        let mut c = self.a_q.clone();
        c.push(C64::new(1.0, 0.0));
        ComplexPolynomial::new(c)
    }

    fn max_distance(&self, other: &Self) -> f64 {
        self.flat().iter().zip(other.flat()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `w = p'q - q'p`, monic of degree `2 mu`.
pub fn wronskian(coords: &NormalizedMapCoords) -> ComplexPolynomial {
    let (p, q) = (coords.p(), coords.q());
    &(&p.derivative() * &q) - &(&q.derivative() * &p)
}

/// Jacobian of `a -> (w_0, ..., w_{2mu-1})`, columns ordered as
/// [`NormalizedMapCoords::flat`].
pub fn wronskian_jacobian(coords: &NormalizedMapCoords) -> CMatrix {
    let mu = coords.mu;
    let (p, q) = (coords.p(), coords.q());
    let (dp, dq) = (p.derivative(), q.derivative());
    let one = C64::new(1.0, 0.0);
    let mut jac = CMatrix::zeros(2 * mu, 2 * mu);
    for i in 0..mu {
        let zi = ComplexPolynomial::monomial(one, i);
        let dzi = zi.derivative();
        // dp = z^i: dw = (z^i)' q - q' z^i; dq = z^i: dw = p' z^i - (z^i)' p
        let col_p = &(&dzi * &q) - &(&dq * &zi);
        let col_q = &(&dp * &zi) - &(&dzi * &p);
        for r in 0..2 * mu {
            jac[(r, i)] = col_p.coeff(r);
            jac[(r, mu + i)] = col_q.coeff(r);
        }
    }
    jac
}

/// Outcome of a Newton sweep over the Wronskian fiber.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberSolveReport {
    pub target: ComplexPolynomial,
    pub solutions: Vec<NormalizedMapCoords>,
    pub attempts: usize,
    pub seed: u64,
    pub residuals: Vec<f64>,
    pub expected_max: u64,
    #[serde(default)]
    pub warnings: Vec<String>,
}

/// `u_d = C(2(d-1), d-1) / d`.
pub fn catalan(d: usize) -> u64 {
    assert!(d >= 1, "catalan index starts at 1");
    let n = d as u128 - 1;
    // C(2n, n) built incrementally stays integral at every step
    let mut binom: u128 = 1;
    for k in 0..n {
        binom = binom * (2 * n - k) / (k + 1);
    }
    (binom / (n + 1)) as u64
}

pub fn default_attempts(mu: usize) -> usize {
    64 * catalan(mu + 1) as usize
}

fn residual_vector(x: &[C64], target: &[C64]) -> Result<(Vec<C64>, NormalizedMapCoords)> {
    let coords = NormalizedMapCoords::from_flat(x)?;
    let w = wronskian(&coords);
    let f = (0..x.len()).map(|k| w.coeff(k) - target[k]).collect();
    Ok((f, coords))
}

fn max_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

// Damped Newton from one start. Returns the final point and its residual.
fn newton(start: Vec<C64>, target: &[C64]) -> Option<(NormalizedMapCoords, f64)> {
    let mut x = start;
    let (mut f, mut coords) = residual_vector(&x, target).ok()?;
    let mut res = max_norm(&f);
    for _ in 0..MAX_ITERATIONS {
        if res == 0.0 {
            break;
        }
        let jac = wronskian_jacobian(&coords);
        let rhs: Vec<C64> = f.iter().map(|v| -v).collect();
        let Some(dx) = solve(&jac, &rhs) else { break };
        let mut step = 1.0;
        let mut improved = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<C64> = x.iter().zip(&dx).map(|(a, b)| a + b * step).collect();
            let (tf, tc) = residual_vector(&trial, target).ok()?;
            let tr = max_norm(&tf);
            if tr.is_finite() && tr < res {
                x = trial;
                f = tf;
                coords = tc;
                res = tr;
                improved = true;
                break;
            }
            step /= 2.0;
        }
        if !improved {
            break;
        }
    }
    Some((coords, res))
}

/// Solves `w_a = target` by Newton iteration from `attempts` seeded starts.
///
/// Starts run in parallel; the report is identical to a sequential sweep.
pub fn solve_fiber(target: &ComplexPolynomial, attempts: usize, seed: u64) -> Result<FiberSolveReport> {
    let degree = target.degree().unwrap_or(0);
    if degree < 2 || degree % 2 == 1 {
        return Err(Error::DegenerateInput(format!("target degree {degree} is not a positive even number")));
    }
    if attempts == 0 {
        return Err(Error::DegenerateInput("attempts must be at least 1".into()));
    }
    let target = target.monic();
    let mu = degree / 2;
    let coeffs: Vec<C64> = (0..degree).map(|k| target.coeff(k)).collect();
    let radius = 1.0 + target.max_abs().powf(1.0 / degree as f64);

    let runs: Vec<Option<(NormalizedMapCoords, f64)>> = (0..attempts as u64)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index);
            let start = (0..degree)
                .map(|_| {
                    let r = radius * rng.gen::<f64>().sqrt();
                    C64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
                })
                .collect();
            newton(start, &coeffs)
        })
        .collect();

    let mut kept: Vec<(NormalizedMapCoords, f64)> = Vec::new();
    for (coords, res) in runs.into_iter().flatten() {
        if res > RESIDUAL_TOLERANCE {
            continue;
        }
        match kept.iter_mut().find(|(k, _)| k.max_distance(&coords) <= DEDUP_DISTANCE) {
            Some(slot) if res < slot.1 => *slot = (coords, res),
            Some(_) => {}
            None => kept.push((coords, res)),
        }
    }

    let expected_max = catalan(mu + 1);
    let mut warnings = Vec::new();
    let repeated = target.distinct_roots(1e-7).map(|r| r.iter().any(|&(_, m)| m > 1)).unwrap_or(true);
    if repeated {
        warnings.push("target has repeated roots: outside the generic locus, the count bound does not apply".into());
    }
    for (i, (coords, _)) in kept.iter().enumerate() {
        let cond = condition_number(&wronskian_jacobian(coords));
        if cond > ILL_CONDITIONED {
            warnings.push(format!("solution {i} is ill-conditioned (Jacobian condition number {cond:.3e})"));
        }
    }
    if !repeated && kept.len() as u64 > expected_max {
        warnings.push(format!("{} solutions exceed the bound {expected_max}", kept.len()));
    }
    let (solutions, residuals): (Vec<_>, Vec<_>) = kept.into_iter().unzip();
    if solutions.is_empty() {
        warnings.push("no start converged".into());
    }
    let report = FiberSolveReport { target, solutions, attempts, seed, residuals, expected_max, warnings };
    if report.solutions.is_empty() {
        return Err(Error::NoSolutionFound(Box::new(report)));
    }
    Ok(report)
}

/// `f_a = p_a / q_a`, rejected when `p_a` and `q_a` share a root.
pub fn coords_to_map(coords: &NormalizedMapCoords) -> Result<RationalMap> {
    let (p, q) = (coords.p(), coords.q());
    let res = ComplexPolynomial::resultant(&p, &q)?;
    let mu = coords.mu as i32;
    let bound = (1.0 + p.max_abs()).powi(mu) * (1.0 + q.max_abs()).powi(mu + 1);
    if res.norm() <= 1e-10 * bound {
        return Err(Error::DegenerateInput(format!("p and q share a root (resultant {res})")));
    }
    RationalMap::new(p, q)
}

pub fn reconstruct_rational(points: &[C64], attempts: usize, seed: u64) -> Result<Vec<RationalMap>> {
    Ok(reconstruct_rational_with_report(points, attempts, seed)?.1)
}

/// Rational maps of degree `k/2 + 1` whose critical points are exactly the
/// `k` given points, one per fiber solution.
pub fn reconstruct_rational_with_report(
    points: &[C64],
    attempts: usize,
    seed: u64,
) -> Result<(FiberSolveReport, Vec<RationalMap>)> {
    if points.len() < 2 || points.len() % 2 == 1 {
        return Err(Error::DegenerateInput(format!("{} points: need an even count >= 2", points.len())));
    }
    for (i, a) in points.iter().enumerate() {
        if points[..i].iter().any(|b| (a - b).norm() <= 1e-12 * (1.0 + a.norm())) {
            return Err(Error::DegenerateInput(format!("repeated critical point {a}")));
        }
    }
    let report = solve_fiber(&ComplexPolynomial::from_roots(points), attempts, seed)?;
    let maps = report.solutions.iter().map(coords_to_map).collect::<Result<Vec<_>>>()?;
    Ok((report, maps))
}
