//! Exact R and K matrices for the symmetric tensor representations of
//! `U_q(A^(1)_{2n-1})` and its type AII coideal subalgebras, with
//! verification of the Yang-Baxter and reflection equations over `Q(q)`.

pub mod branch;
pub mod dump;
pub mod error;
pub mod field;
pub mod linalg;
pub mod rep;
pub mod rk;

pub use error::{Error, Result};
pub use field::{qbinom, qint, LaurentPoly, RationalFunction, Rf};
pub use linalg::{SparseMatrix, SparseVec};
pub use rep::{CoidealParams, Generator, LinearOperator, ModuleSpec, MultiIndex, Space, Vector};
