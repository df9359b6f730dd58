//! R, R*, R** and K matrices, and the Yang-Baxter and reflection equation
//! checks built from them.

mod kmatrix;
mod q0;
mod rmatrix;
mod verify;

pub use kmatrix::{
    build_k_closed, build_k_solved, is_coideal_intertwiner, k_actions, k_spaces,
    support_is_sigma_graph, KMatrix, KSolved, KSolvedSummary,
};
pub use q0::{q0_entries, q0_limit};
pub use rmatrix::{affine_generators, build_r, is_affine_intertwiner, swap_intertwiner, RKind, RMatrix};
pub use verify::{verify_re, verify_ybe, ProportionalityReport, ReResult, YbeKind, YbeResult};
