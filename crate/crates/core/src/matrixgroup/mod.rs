//! Finite matrix groups and exact matrix decompositions.
//!
//! - [`group_closure`]: breadth-first closure of a generating set.
//! - [`intertwiner_basis`] / [`conjugacy_witness`]: simultaneous conjugacy.
//! - [`jordan_multiplicative`]: `M = M_s * M_u` over a perfect field.
//! - [`matrix_root`]: `d`-th roots in a deliberately narrow class.

mod closure;
mod conjugacy;
mod jordan;
mod root;

pub use closure::{group_closure, has_finite_order, FiniteMatrixGroup, DEFAULT_CAP};
pub use conjugacy::{conjugacy_witness, intertwiner_basis, Conjugacy};
pub use jordan::{is_semisimple, is_unipotent, jordan_additive, jordan_multiplicative, JordanDecomposition};
pub use root::{matrix_root, scalar_root, RootResult};
