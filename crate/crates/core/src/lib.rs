//! Exact algebra for Galois points of plane curves and their extension to
//! plane Cremona transformations.

pub mod context;
pub mod cremona;
pub mod curve;
pub mod error;
pub mod field;
pub mod galois;
pub mod linalg;
pub mod maps;
pub mod poly;
pub mod scenario;

pub use error::{Error, Result};
