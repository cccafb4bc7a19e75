pub mod algebra;
pub mod audit;
pub mod bimodule;
pub mod classify;
pub mod cli;
pub mod constructions;
pub mod enumerate;
pub mod equiv;
pub mod error;
pub mod field;
pub mod hom;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod smc;
pub mod solve;
pub mod tensor;

pub use error::{Error, Result};
