//! Shift-invariant spaces in weighted Sobolev spaces.
//!
//! Fourier transforms follow `f̂(t) = ∫ f(x) e^{−2πi⟨x,t⟩} dx`. Translation by
//! an integer `k` therefore multiplies the transform by `e_k(t) = e^{−2πi⟨k,t⟩}`.

pub mod convcalc;
pub mod ddesolver;
pub mod error;
pub mod lattice;
pub mod frames;
pub mod multproduct;
pub mod spectral;
pub mod wavefront;
mod warn;

pub use error::{Error, Result, Rule};
pub use lattice::{seq_convolve, seq_norm, weight_eval, CoeffSeq, GridSpec, Tolerance, Weight};
pub use spectral::{Generator, PeriodicSymbol, SIFunction, Spectral};
pub use warn::{Warned, Warning};
