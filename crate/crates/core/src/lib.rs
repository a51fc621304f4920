pub mod cli;
pub mod cohomology;
pub mod error;
pub mod levi;
pub mod linalg;
pub mod moduli;
pub mod multivec;
pub mod rational;
pub mod rootsystem;

pub use error::{OrbitError, Result};
