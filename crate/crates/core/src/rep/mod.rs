//! Symmetric tensor representations `V_{l,x}`, `V*_{l,x}` of
//! `U_q(A^(1)_{2n-1})`, their tensor products, and the type AII coideal
//! generators.

mod action;
mod coideal;
mod generator;
mod module;
mod multiindex;
mod operator;
mod relations;
mod sigma;

pub use action::{
    act_gen, act_word, generator_matrix, generator_operator, simple_action,
    word_combination_matrix, Vector, WordCombination,
};
pub use coideal::{act_b, act_b_closed, b_matrix, b_operator, b_word, coideal_matrix, CoidealParams};
pub use generator::{cartan, wrap, GenKind, Generator};
pub use module::{rational, rational_one, Module, ModuleSpec, Space};
pub use multiindex::{basis_size, enumerate_basis, MultiIndex};
pub use operator::LinearOperator;
pub use relations::{verify_defining_relations, RelationCheck, RelationReport};
pub use sigma::sigma_perm;
