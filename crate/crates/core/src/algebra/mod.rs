//! Complex scalars, dense polynomials, rational maps, truncated power series
//! and Möbius transformations.

mod complex;
pub mod linalg;
mod mobius;
mod poly;
mod rational;
pub(crate) mod series;

use std::sync::atomic::{AtomicU64, Ordering};

pub use complex::{chordal_distance, ensure_finite, C64, J, RiemannPoint};
pub use mobius::{mobius_apply, mobius_from_triples, MobiusMap};
pub use poly::{poly_arith, ComplexPolynomial, PolyOp};
pub use rational::{rational_normalize, RationalMap, RationalParts};
pub use series::TruncatedSeries;

const DEFAULT_ZERO_TOLERANCE: f64 = 1e-12;

static ZERO_TOLERANCE: AtomicU64 = AtomicU64::new(0);

/// Relative threshold below which a polynomial coefficient counts as zero.
///
/// A coefficient `c` of a polynomial whose largest coefficient has modulus
/// `m` is treated as zero when `|c| <= tol * (1 + m)`.
pub fn zero_tolerance() -> f64 {
    match ZERO_TOLERANCE.load(Ordering::Relaxed) {
        0 => DEFAULT_ZERO_TOLERANCE,
        bits => f64::from_bits(bits),
    }
}

/// Sets the process-wide zero tolerance. Non-positive or non-finite values
/// restore the default.
pub fn set_zero_tolerance(tol: f64) {
    let bits = if tol.is_finite() && tol > 0.0 { tol.to_bits() } else { 0 };
    ZERO_TOLERANCE.store(bits, Ordering::Relaxed);
}
