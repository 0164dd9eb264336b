//! Schwarzian derivatives of rational maps.
//!
//! The crate answers three related questions about a meromorphic quadratic
//! differential `phi(z) dz^2` on the Riemann sphere:
//!
//! * is `phi` locally (around a pole) or globally the Schwarzian derivative
//!   of some map? ([`primitivity`])
//! * if so, what is the primitive? ([`reconstruction`], both as a local power
//!   series and as a global rational map with prescribed critical points)
//! * how do the Schwarzians of cubic maps depend on their critical points?
//!   ([`cubic`])
//!
//! Everything is built on the small complex algebra in [`algebra`] and on the
//! Schwarzian/Laurent machinery in [`schwarzian`].

pub mod algebra;
pub mod cli;
pub mod cubic;
pub mod error;
pub mod primitivity;
pub mod reconstruction;
pub mod schwarzian;

pub use algebra::{
    C64, ComplexPolynomial, MobiusMap, RationalMap, RiemannPoint, TruncatedSeries, J,
};
pub use error::{Error, Result};
