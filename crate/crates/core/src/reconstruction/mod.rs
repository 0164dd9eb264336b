//! Schwarzian primitives: local power series around a pole, and global
//! rational maps with prescribed simple critical points.

mod fiber;
mod local;

pub use fiber::{
    catalan, coords_to_map, default_attempts, reconstruct_rational, reconstruct_rational_with_report, solve_fiber,
    wronskian, wronskian_jacobian, FiberSolveReport, NormalizedMapCoords, DEDUP_DISTANCE, ILL_CONDITIONED,
    RESIDUAL_TOLERANCE,
};
pub use local::{local_g, local_primitive};
