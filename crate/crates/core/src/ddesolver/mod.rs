//! Delay-differential operators `T = Σ a δ^{(j)}(· − b)` in one dimension.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Rule};
use crate::lattice::{CoeffSeq, GridSpec, Tolerance, Weight};
use crate::spectral::fft::{dft, freq_points, idft, space_points};
use crate::spectral::{Generator, SIFunction, Spectral};
use crate::warn::Warned;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdeTerm {
    pub a: Complex64,
    pub j: u32,
    pub b: f64,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    a_re: f64,
    #[serde(default)]
    a_im: f64,
    j: u32,
    b: f64,
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    terms: Vec<TermJson>,
}

/// Finite sum of shifted derivatives of the Dirac mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct DelayDiffOperator {
    terms: Vec<DdeTerm>,
}

impl TryFrom<OperatorJson> for DelayDiffOperator {
    type Error = Error;

    fn try_from(j: OperatorJson) -> Result<Self> {
        Self::new(j.terms.into_iter().map(|t| DdeTerm { a: Complex64::new(t.a_re, t.a_im), j: t.j, b: t.b }).collect())
    }
}

impl From<DelayDiffOperator> for OperatorJson {
    fn from(op: DelayDiffOperator) -> Self {
        OperatorJson {
            terms: op.terms.iter().map(|t| TermJson { a_re: t.a.re, a_im: t.a.im, j: t.j, b: t.b }).collect(),
        }
    }
}

impl DelayDiffOperator {
    pub fn new(terms: Vec<DdeTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("operator needs at least one term".into()));
        }
        for t in &terms {
            if !(t.a.re.is_finite() && t.a.im.is_finite() && t.b.is_finite()) {
                return Err(Error::InvalidInput("operator terms must be finite".into()));
            }
            if t.j > 16 {
                return Err(Error::InvalidInput("derivative order above 16".into()));
            }
        }
        Ok(Self { terms })
    }

    /// Real-amplitude operator from `(a, j, b)` triples.
    pub fn from_real(terms: &[(f64, u32, f64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(a, j, b)| DdeTerm { a: Complex64::new(a, 0.0), j, b }).collect())
    }

    pub fn terms(&self) -> &[DdeTerm] {
        &self.terms
    }

    pub fn symbol(&self, t: f64) -> Complex64 {
        dde_symbol(self, t)
    }
}

/// `T̂(t) = Σ a (2πi t)^j e^{−2πi b t}`.
pub fn dde_symbol(op: &DelayDiffOperator, t: f64) -> Complex64 {
    let w = Complex64::new(0.0, 2.0 * PI * t);
    op.terms.iter().map(|term| term.a * w.powu(term.j) * Complex64::from_polar(1.0, -2.0 * PI * term.b * t)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipticityEstimate {
    pub c: f64,
    pub n: f64,
    pub verdict: bool,
    /// Frequency where `|T̂| / μ_n` is smallest.
    pub min_ratio_location: f64,
    /// Root mean square residual of the log-log slope fit.
    pub fit_rms: f64,
}

/// Residual level above which the slope fit is refused.
pub const FIT_RMS_THRESHOLD: f64 = 1.0;

fn symmetric_freqs(grid: &GridSpec) -> Vec<f64> {
    let dt = grid.dt();
    let m = (grid.freq_radius / dt).round() as i64;
    (-m..=m).map(|i| i as f64 * dt).collect()
}

fn min_ratio(op: &DelayDiffOperator, ts: &[f64], n: f64) -> (f64, f64) {
    let w = Weight::new(n);
    ts.iter()
        .map(|&t| (op.symbol(t).norm() / w.eval(&[t]), t))
        .fold((f64::INFINITY, 0.0), |acc, x| if x.0 < acc.0 { x } else { acc })
}

/// Estimate `c, n` with `c μ_n(t) ≤ |T̂(t)|` on the symmetric grid `|t| ≤ freq_radius`.
///
/// `n` is the slope of `log|T̂|` against `log μ_1` over `|t| ≥ freq_radius/2`,
/// rounded to the nearest multiple of 0.05, unless `n_override` is given.
pub fn estimate_condition_e(op: &DelayDiffOperator, grid: &GridSpec, tol: &Tolerance, n_override: Option<f64>) -> Result<EllipticityEstimate> {
    if grid.freq_radius < 8.0 {
        return Err(Error::InvalidInput("the ellipticity estimate needs freq_radius >= 8".into()));
    }
    let ts = symmetric_freqs(grid);
    let half = grid.freq_radius / 2.0;
    let pts: Vec<(f64, f64)> = ts
        .iter()
        .filter(|t| t.abs() >= half - 1e-12)
        .map(|&t| (0.5 * (1.0 + t * t).ln(), op.symbol(t).norm().ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let rms = (pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>() / k).sqrt();
    if !(rms.is_finite() && rms <= FIT_RMS_THRESHOLD) {
        return Err(Error::FitUnstable { rms: if rms.is_finite() { rms } else { f64::INFINITY }, threshold: FIT_RMS_THRESHOLD });
    }
    let n = n_override.unwrap_or_else(|| (slope * 20.0).round() / 20.0);
    let (c, loc) = min_ratio(op, &ts, n);
    Ok(EllipticityEstimate { c, n, verdict: c >= tol.abs, min_ratio_location: loc, fit_rms: rms })
}

#[derive(Debug, Clone)]
pub struct DdeSolution {
    /// `u = F^{−1}(ψ̂ / T̂)`, so that `T ∗ u = ψ`.
    pub u: Generator,
    /// `Σ c_k u(· − k)` of order `s + n`.
    pub solution: SIFunction,
    /// Grid sup norm of `T ∗ solution − Σ c_k ψ(· − k)`.
    pub residual: f64,
    pub estimate: EllipticityEstimate,
}

/// Threshold on `|T̂|` below which division is refused.
pub const DIVISION_FLOOR: f64 = 1e-12;
/// Largest admissible `|ψ̂ / T̂|`.
pub const BLOWUP_GUARD: f64 = 1e12;

/// Solve `T ∗ u = h` for `h = Σ c_k ψ(· − k)` by spectral division.
pub fn dde_solve(
    op: &DelayDiffOperator,
    psi: &Generator,
    c: &CoeffSeq,
    s: f64,
    grid: &GridSpec,
    tol: &Tolerance,
    n_override: Option<f64>,
) -> Result<Warned<DdeSolution>> {
    if psi.dim() != 1 {
        return Err(Error::InvalidInput("delay-differential operators are one-dimensional".into()));
    }
    if c.dim() != 1 {
        return Err(Error::dim(1, c.dim()));
    }
    if !psi.is_real_analytic() {
        return Err(Error::Precondition {
            rule: Rule::RealAnalyticGenerator,
            detail: "the right-hand side generator must be gaussian or band_limited".into(),
        });
    }
    let est = estimate_condition_e(op, grid, tol, n_override)?;
    if !est.verdict {
        return Err(Error::ConditionEViolated {
            detail: format!("c = {:.3e} at t = {} with n = {}", est.c, est.min_ratio_location, est.n),
        });
    }
    let pts = freq_points(grid, 1);
    for t in &pts {
        let p = psi.fourier(&t[..1]);
        if p.norm() == 0.0 {
            continue;
        }
        let sym = op.symbol(t[0]);
        if sym.norm() < DIVISION_FLOOR {
            return Err(Error::ConditionEViolated { detail: format!("|T^(t)| = {:.3e} at t = {}", sym.norm(), t[0]) });
        }
        let q = p.norm() / sym.norm();
        if q > BLOWUP_GUARD {
            return Err(Error::DivisionBlowup { magnitude: q });
        }
    }
    let mut warnings = Vec::new();
    let u = Generator::from_spectrum(
        1,
        grid,
        |t| {
            let p = psi.fourier(t);
            let sym = op.symbol(t[0]);
            if p.norm() == 0.0 || sym.norm() < 1e-300 {
                Complex64::default()
            } else {
                p / sym
            }
        },
        None,
    )?
    .drain_into(&mut warnings);
    let solution = SIFunction::new(vec![u.clone()], vec![c.clone()], s + est.n)?;
    let h = SIFunction::new(vec![psi.clone()], vec![c.clone()], s)?;
    let residual = apply_residual(op, &solution, &h, grid);
    Ok(Warned::new(DdeSolution { u, solution, residual, estimate: est }, warnings))
}

/// `sup_j |(T ∗ f)(x_j) − h(x_j)|` with `T` applied to the grid samples of `f` in frequency.
pub fn apply_residual(op: &DelayDiffOperator, f: &dyn Spectral, h: &dyn Spectral, grid: &GridSpec) -> f64 {
    let xs = space_points(grid, 1);
    let fs: Vec<Complex64> = xs.par_iter().map(|x| f.eval(&x[..1])).collect();
    let mut spec = dft(&fs, grid, 1);
    for (v, t) in spec.iter_mut().zip(freq_points(grid, 1)) {
        *v *= op.symbol(t[0]);
    }
    let tf = idft(&spec, grid, 1);
    xs.par_iter()
        .zip(tf.par_iter())
        .map(|(x, v)| (v - h.eval(&x[..1])).norm())
        .reduce(|| 0.0, f64::max)
}
