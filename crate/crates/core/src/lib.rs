pub mod degeneracy;
pub mod error;
pub mod foxcalc;
pub mod gaussian;
pub mod interval;
pub mod joincore;
pub mod laurent;
pub mod linkalex;
pub mod matrix;
pub mod mixedpoly;
pub mod newton;
pub mod ring;
pub mod upoly;
pub mod zeta;

pub use error::{Error, Result};
pub use gaussian::GaussianRational;
