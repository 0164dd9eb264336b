use num_complex::Complex64;
use thiserror::Error;

use crate::reconstruction::FiberSolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("pole of order {order} exceeds the supported order 2")]
    PoleTooHigh { order: usize },

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    /// The resonant equation of the local recursion has a nonzero right side.
    #[error("local recursion obstructed at the resonant index (value {value})")]
    ObstructionNonzero { value: Complex64 },

    #[error("leading coefficient {leading} is not of the form (1-d^2)/2 with integer d >= 1")]
    NonIntegerDegree { leading: Complex64 },

    #[error("no Newton start converged to a fiber point")]
    NoSolutionFound(Box<FiberSolveReport>),
}
