//! Fourier multipliers, products with periodic functions, and the periodic symbol algebra.

mod algebra;
mod multiplier;
mod periodic;

pub use algebra::symbol_product;
pub use multiplier::{
    apply_multiplier, mikhlin_check, MikhlinConstant, MikhlinPolicy, MikhlinReport, MultiplierKind, MultiplierSymbol,
    MIKHLIN_OVERFLOW,
};
pub use periodic::{periodic_multiply, periodic_multiply_with, PeriodicMultiplier, ProductPath};
