pub mod error;
pub mod lattice;
pub mod weyl;

pub use error::{Error, Result};
pub mod curves;
pub mod linalg;
pub mod nef;
pub mod polytope;
pub mod verify;
