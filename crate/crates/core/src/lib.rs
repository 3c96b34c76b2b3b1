//! Exact construction of Böröczky line configurations and the fat-point
//! computations on their triple points.

pub mod arrangement;
pub mod boroczky;
pub mod elliptic;
pub mod error;
pub mod fatpoints;
pub mod field;
pub mod forms;
pub mod matrix;
pub mod projective;
pub mod symmetry;

pub use error::{Error, Result};
