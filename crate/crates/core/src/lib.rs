pub mod cli;
pub mod error;
pub mod grpoisson;
pub mod linalg;
pub mod pbw;
pub mod rational;
pub mod rootsys;
pub mod selftest;
pub mod shapes;
pub mod singular;
pub mod slodowy;
pub mod sugawara;
pub mod syntax;

pub use error::{Error, Result};
