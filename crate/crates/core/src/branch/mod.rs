//! Branching of `V_l ⊗ V_m` to the black-node `sl_2` copies, and the action
//! of the white-node coideal generators on the resulting highest weight
//! vectors.

mod hw;
mod label;
mod matrix_c;
mod oracle;
mod probe;

pub use hw::{apply_f_monomial, bold_w, branch_space, expand_in_hw, hw_terms, hw_vector, sl2_space, Descendant, HwBasis};
pub use label::{compositions, dimension_identity, enumerate_labels, BranchLabel};
pub use matrix_c::{build_matrix_c, matrix_c_from_oracle, MatrixC};
pub use oracle::{
    oracle_coeffs, oracle_terms, run_suite, suite_contexts, zero_j_terms, CoeffOracle, OracleContext, OracleKind,
    OracleSetup, Term,
};
pub use probe::{invariant_subspace_probe, ProbeResult};
