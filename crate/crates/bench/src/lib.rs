//! Inputs for the benchmarks in `benches/`.

use reflect_core::linalg::{all_indices, assemble_intertwiner_system, block_decompose, IntertwinerSystem};
use reflect_core::rep::{generator_matrix, rational, ModuleSpec, Space};
use reflect_core::rk::affine_generators;
use reflect_core::Result;

/// The uncached linear system whose kernel is `R: V_{l,x} ⊗ V_{m,y} -> V_{m,y} ⊗ V_{l,x}`.
pub fn r_system(n: usize, l: u32, m: u32, x: i64, y: i64) -> Result<IntertwinerSystem> {
    let a = ModuleSpec::vector(n, l, rational(x, 1))?.build();
    let b = ModuleSpec::vector(n, m, rational(y, 1))?.build();
    let dom = Space::new(vec![a.clone(), b.clone()])?;
    let cod = Space::new(vec![b, a])?;
    let actions = affine_generators(n)
        .into_iter()
        .map(|g| Ok((generator_matrix(&dom, g)?, generator_matrix(&cod, g)?)))
        .collect::<Result<Vec<_>>>()?;
    let pairs = block_decompose(&dom, &cod, &all_indices(n));
    Ok(assemble_intertwiner_system(&actions, &pairs, dom.dim(), cod.dim()))
}
