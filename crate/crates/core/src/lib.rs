//! Vandermonde decompositions, catalecticants, Koszul flattenings and rank
//! certificates for Hankel tensors.

pub mod appendix;
pub mod catalecticant;
pub mod cyclotomic;
pub mod error;
pub mod json;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rank_relations;
pub mod scalar;
pub mod tensor;
pub mod vandermonde;

pub use error::{Error, Result};
pub use matrix::Mat;
pub use scalar::{Mode, Scalar};
