use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result, Rule};
use crate::lattice::{seq_convolve, CoeffSeq, GridSpec};
use crate::spectral::{Generator, GeneratorKind, SIFunction, Spectral};
use crate::warn::{push_unique, Warned};

/// `(Σ a_k δ(· − k)) ∗ g`: coefficients become `a ∗ b^i`, generators and order are kept.
pub fn delta_train_convolve(a: &CoeffSeq, g: &SIFunction, r: f64) -> Result<SIFunction> {
    let s = g.order();
    if s > r {
        return Err(Error::OrderViolation {
            rule: Rule::DeltaTrainConvolution,
            detail: format!("s = {s} exceeds the train order r = {r}"),
        });
    }
    if a.dim() != g.dim() {
        return Err(Error::dim(g.dim(), a.dim()));
    }
    let coeffs = g.coeffs().iter().map(|b| seq_convolve(a, b)).collect::<Result<Vec<_>>>()?;
    g.with_coeffs(coeffs)
}

/// `φ ∗ ψ` through the product of transforms.
///
/// Pairs of B-splines and pairs of Gaussians have closed forms and stay
/// analytic; everything else is resampled on `grid`.
pub fn generator_convolve(phi: &Generator, psi: &Generator, grid: &GridSpec) -> Result<Warned<Generator>> {
    if phi.dim() != psi.dim() {
        return Err(Error::dim(phi.dim(), psi.dim()));
    }
    let d = phi.dim();
    let shift: Vec<f64> = phi.shift().iter().zip(psi.shift()).map(|(a, b)| a + b).collect();
    let amp = phi.amplitude() * psi.amplitude();
    let exact = match (phi.kind(), psi.kind()) {
        (GeneratorKind::BSpline { order: n }, GeneratorKind::BSpline { order: m }) if n + m <= 24 => {
            Some(Generator::bspline(d, n + m)?)
        }
        (GeneratorKind::Gaussian { sigma: a }, GeneratorKind::Gaussian { sigma: b }) => {
            let s = a.hypot(*b);
            Some(Generator::gaussian(d, s)?.scaled(Complex64::new((a * b / s).powi(d as i32), 0.0)))
        }
        _ => None,
    };
    match exact {
        Some(g) => Ok(Warned::clean(g.shifted(&shift).scaled(amp))),
        None => generator_convolve_numeric(phi, psi, grid),
    }
}

/// Grid-sampled `φ ∗ ψ` from `φ̂ ψ̂`, supported in the sum of the supports when both are compact.
pub fn generator_convolve_numeric(phi: &Generator, psi: &Generator, grid: &GridSpec) -> Result<Warned<Generator>> {
    if phi.dim() != psi.dim() {
        return Err(Error::dim(phi.dim(), psi.dim()));
    }
    let support = match (phi.support(), psi.support()) {
        (Some(a), Some(b)) => Some(a.sum(&b)),
        _ => None,
    };
    Generator::from_spectrum(phi.dim(), grid, |t| phi.fourier(t) * psi.fourier(t), support)
}

/// Weighted Young bound `‖a ∗ b‖_{ℓ²_t} ≤ 2^{t/2} ‖a‖_{ℓ¹_t} ‖b‖_{ℓ²_t}` for one product sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YoungCheck {
    pub norm: f64,
    pub bound: f64,
}

impl YoungCheck {
    pub fn holds(&self) -> bool {
        self.norm <= self.bound * (1.0 + 1e-12)
    }
}

#[derive(Debug, Clone)]
pub struct ConvolutionResult {
    /// Expansion over `φ_i ∗ ψ_j` in row-major `(i, j)` order.
    pub result: SIFunction,
    /// `s − d/2 − ε`.
    pub target_order: f64,
    pub epsilon: f64,
    pub young: Vec<YoungCheck>,
}

/// `f ∗ g` for `f ∈ V_s(φ_i)`, `g ∈ V_r(ψ_j)` with `d/2 < s ≤ r`.
pub fn fgsi_convolve(f: &SIFunction, g: &SIFunction, eps: f64, grid: &GridSpec) -> Result<Warned<ConvolutionResult>> {
    let d = f.dim();
    if g.dim() != d {
        return Err(Error::dim(d, g.dim()));
    }
    let (s, r) = (f.order(), g.order());
    let half = d as f64 / 2.0;
    let fail = |detail: String| Err(Error::OrderViolation { rule: Rule::FgsiConvolution, detail });
    if !(s > half) {
        return fail(format!("s = {s} must exceed d/2 = {half}"));
    }
    if s > r {
        return fail(format!("s = {s} exceeds r = {r}"));
    }
    if !(eps > 0.0) {
        return fail(format!("eps = {eps} must be positive"));
    }
    if s < half + eps {
        return fail(format!("s = {s} is below d/2 + eps = {}", half + eps));
    }
    let target = s - half - eps;
    let mut warnings = Vec::new();
    let mut gens = Vec::new();
    let mut coeffs = Vec::new();
    let mut young = Vec::new();
    for (phi, a) in f.generators().iter().zip(f.coeffs()) {
        for (psi, b) in g.generators().iter().zip(g.coeffs()) {
            let w = generator_convolve(phi, psi, grid)?;
            push_unique(&mut warnings, w.warnings);
            gens.push(w.value);
            let c = seq_convolve(a, b)?;
            young.push(YoungCheck {
                norm: c.norm(2.0, target),
                bound: 2f64.powf(target / 2.0) * a.norm(1.0, target) * b.norm(2.0, target),
            });
            coeffs.push(c);
        }
    }
    let result = SIFunction::new(gens, coeffs, target)?;
    Ok(Warned::new(ConvolutionResult { result, target_order: target, epsilon: eps, young }, warnings))
}
