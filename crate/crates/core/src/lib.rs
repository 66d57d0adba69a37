pub mod bounds;
pub mod cochain;
pub mod cocycle;
pub mod complex;
pub mod cover;
pub mod error;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod local_system;

pub use error::{AlgebraError, Error, Result};
pub use field::{Field, Scalar};
