pub mod bott;
pub mod cli;
pub mod diffop;
pub mod error;
pub mod jetbundles;
pub mod linalg;
pub mod partitions;
pub mod quiver;
pub mod schur;

pub use error::{Error, Result};
