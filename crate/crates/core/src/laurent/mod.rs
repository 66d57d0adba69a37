//! The Laurent polynomial ring `k[t, 1/t]` and matrices over it.

pub mod factor;
pub mod matrix;
pub mod poly;
pub mod snf;

pub use factor::{factor, roots, IrreducibleFactor};
pub use matrix::LaurentMatrix;
pub use poly::{ext_gcd, poly_arith, poly_gcd, poly_lcm, LaurentPoly, PolyOp};
pub use snf::{
    module_presentation, smith_diagonal, smith_normal_form, smith_with_row_transform, LaurentSnf, ModulePresentation,
};
