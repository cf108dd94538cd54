//! Generators, expansions in their shifts, and frequency-domain quadrature.

pub mod fft;
mod generator;
mod json;
mod norms;
mod sifunction;
mod symbol;

pub use generator::{Generator, GeneratorKind, SampledData, Support};
pub(crate) use generator::bspline_1d;
pub use json::GeneratorSpec;
pub use norms::{
    bracket, generator_fourier, inner_product, periodization_sup, sobolev_norm, sobolev_shells, weighted_l2_space, FreqSamples,
    PeriodizationDiagnostic, WeightedL2Diagnostic,
};
pub(crate) use norms::{fiber_weights, lattice_point};
pub use sifunction::{Combination, SIFunction};
pub use symbol::{symbol_eval, PeriodicSymbol};

use num_complex::Complex64;

/// Anything with a space form and a Fourier form on ℝ^d.
pub trait Spectral: Sync {
    fn dim(&self) -> usize;

    fn eval(&self, x: &[f64]) -> Complex64;

    fn fourier(&self, t: &[f64]) -> Complex64;

    /// Fourier values at `ω + k` for each lattice point `k`.
    fn fiber(&self, omega: &[f64; 2], lattice: &[([i64; 2], bool)]) -> Vec<Complex64> {
        let d = self.dim();
        lattice.iter().map(|(k, _)| self.fourier(&lattice_point(omega, k)[..d])).collect()
    }

    /// Spectral energy already lost to band limitation when the object was built.
    fn alias_fraction(&self) -> f64 {
        0.0
    }
}
