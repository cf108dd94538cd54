use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::{character, CoeffSeq};

/// 1-periodic trigonometric series `τ(t) = Σ_k c_k e^{−2πi⟨k,t⟩}`.
///
/// The exponents `(p, r)` record the declared class `(c_k) ∈ ℓ^p_r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSymbol {
    pub coeffs: CoeffSeq,
    pub p: f64,
    pub r: f64,
}

impl PeriodicSymbol {
    pub fn new(coeffs: CoeffSeq, p: f64, r: f64) -> Self {
        Self { coeffs, p, r }
    }

    /// Symbol in the default class `ℓ²_0`.
    pub fn from_coeffs(coeffs: CoeffSeq) -> Self {
        Self::new(coeffs, 2.0, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        symbol_eval(&self.coeffs, t)
    }
}

pub fn symbol_eval(c: &CoeffSeq, t: &[f64]) -> Complex64 {
    let mut kf = [0.0; 2];
    c.iter()
        .map(|(k, v)| {
            for (a, b) in kf.iter_mut().zip(k) {
                *a = *b as f64;
            }
            v * character(&kf[..k.len()], t)
        })
        .sum()
}
