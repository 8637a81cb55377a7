pub mod commpoly;
pub mod envelope;
pub mod error;
pub mod expr;
pub mod geomcheck;
pub mod hilbert;
pub mod morphlab;
pub mod named;
pub mod scalars;
pub mod twisted;
pub mod veritas;

pub use error::{Error, Result};
