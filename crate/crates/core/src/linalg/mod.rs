//! Exact sparse linear algebra over `Q(q)`.

mod blocks;
mod eliminate;
mod sparse;
mod system;

pub use blocks::{all_indices, block_decompose, content_key, weight_blocks, WeightBlock};
pub use eliminate::{invert, nullspace, rank, Echelon, SpanBuilder};
pub(crate) use sparse::add_entry;
pub use sparse::{axpy, SparseMatrix, SparseVec};
pub use system::{assemble_intertwiner_system, intertwines, IntertwinerSystem};
