//! Weights, lattice sequences, grids and tolerances.

mod grid;
mod seq;
mod weight;

pub use grid::{GridSpec, Tolerance};
pub(crate) use grid::lattice_box;
pub use seq::{seq_convolve, seq_norm, CoeffSeq, Key};
pub(crate) use seq::check_dim;
pub use weight::{weight_at_index, weight_eval, Weight};

use num_complex::Complex64;

/// Character `e_y(x) = e^{−2πi⟨x,y⟩}`.
///
/// Fourier transforms use `f̂(t) = ∫ f(x) e_t(x) dx`, so translation by `k`
/// becomes multiplication by `e_k`.
#[inline]
pub fn character(y: &[f64], x: &[f64]) -> Complex64 {
    let dot: f64 = y.iter().zip(x).map(|(a, b)| a * b).sum();
    Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * dot)
}
