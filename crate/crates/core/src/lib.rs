//! Exact computations with local systems (flat vector bundles) on finite
//! connected 2-complexes.

pub mod basespace;
pub mod cli;
pub mod cohomology;
pub mod coverings;
pub mod descent;
pub mod error;
pub mod exactfield;
pub mod matrix;
pub mod localsystem;
pub mod matrixgroup;
pub mod poly;
pub mod sample;

pub use error::{Error, Result};
pub use exactfield::{Embedding, FieldCtx, FieldElem, Value};
pub use matrix::Matrix;
pub use poly::Poly;
