//! Convolution calculus: delta trains, FGSI convolution, convolutor recovery and duality.

mod convolve;
mod recover;

pub use convolve::{
    delta_train_convolve, fgsi_convolve, generator_convolve, generator_convolve_numeric, ConvolutionResult, YoungCheck,
};
pub use recover::{convolutor_recover, detect_zeros, AnnihilatorSpectrum, Recovery, SpectralZero};

use num_complex::Complex64;

use crate::error::{Error, Result, Rule};
use crate::lattice::GridSpec;
use crate::spectral::{inner_product, SIFunction};
use crate::warn::Warned;

/// Pairing `(F, θ) = ∫ F̂ conj(θ̂)` of `F ∈ H^{−s}` with `θ ∈ H^s`, where `s = θ.order()`.
pub fn dual_pair(f: &SIFunction, theta: &SIFunction, grid: &GridSpec) -> Result<Warned<Complex64>> {
    let s = theta.order();
    if !(s >= 0.0) {
        return Err(Error::Precondition { rule: Rule::DualPairing, detail: format!("order s = {s} must be nonnegative") });
    }
    inner_product(f, theta, 0.0, grid)
}
