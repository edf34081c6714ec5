pub mod algebra;
pub mod error;
pub mod gw;
pub mod identities;
pub mod pairs;
pub mod partitions;
pub mod verify;

pub use algebra::*;
pub use error::{Error, Result};
