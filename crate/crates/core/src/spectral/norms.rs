use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::fft::freq_points;
use super::Spectral;
use crate::error::{Error, Result};
use crate::lattice::{lattice_box, weight_eval, GridSpec};
use crate::warn::{Warned, Warning};

pub(crate) fn lattice_point(omega: &[f64; 2], k: &[i64; 2]) -> [f64; 2] {
    [omega[0] + k[0] as f64, omega[1] + k[1] as f64]
}

/// Weights `μ_{2s}(ω + k)` along a fiber.
pub(crate) fn fiber_weights(dim: usize, s: f64, omega: &[f64; 2], lattice: &[([i64; 2], bool)]) -> Vec<f64> {
    lattice
        .iter()
        .map(|(k, _)| weight_eval(2.0 * s, &lattice_point(omega, k)[..dim]))
        .collect()
}

/// Periodized cross spectrum `Σ_{|k|≤K} φ̂(ω+k) conj(ψ̂(ω+k)) μ_{2s}(ω+k)`.
pub fn bracket(phi: &dyn Spectral, psi: &dyn Spectral, s: f64, omega: &[f64], k: usize) -> Result<Warned<Complex64>> {
    let d = phi.dim();
    if psi.dim() != d {
        return Err(Error::dim(d, psi.dim()));
    }
    if omega.len() != d {
        return Err(Error::dim(d, omega.len()));
    }
    if k < 1 {
        return Err(Error::InvalidInput("periodization radius must be at least 1".into()));
    }
    let w = [omega[0], omega.get(1).copied().unwrap_or(0.0)];
    let lat = lattice_box(d, k as i64);
    let a = phi.fiber(&w, &lat);
    let b = psi.fiber(&w, &lat);
    let mu = fiber_weights(d, s, &w, &lat);
    let mut total = Complex64::default();
    let mut total_abs = 0.0;
    let mut shell_abs = 0.0;
    for i in 0..lat.len() {
        let v = a[i] * b[i].conj() * mu[i];
        total += v;
        total_abs += v.norm();
        if lat[i].1 {
            shell_abs += v.norm();
        }
    }
    let mut warnings = Vec::new();
    if total_abs > 0.0 && shell_abs > 1e-8 * total_abs {
        warnings.push(Warning::BracketTail { omega: omega.to_vec(), relative: shell_abs / total_abs });
    }
    Ok(Warned::new(total, warnings))
}

/// `∫ f̂ conj(ĝ) μ_{2s}` on the fiber lattice, plus the outer-shell fraction of `∫|f̂|²μ_{2s}`.
pub(crate) fn lattice_quadrature(f: &dyn Spectral, g: Option<&dyn Spectral>, s: f64, grid: &GridSpec) -> (Complex64, f64) {
    let d = f.dim();
    let lat = grid.lattice(d);
    let parts: Vec<(Complex64, f64, f64)> = grid
        .omega_grid(d)
        .par_iter()
        .map(|w| {
            let a = f.fiber(w, &lat);
            let b = g.map(|g| g.fiber(w, &lat));
            let mu = fiber_weights(d, s, w, &lat);
            let mut acc = Complex64::default();
            let mut energy = 0.0;
            let mut shell = 0.0;
            for i in 0..lat.len() {
                let e = a[i].norm_sqr() * mu[i];
                energy += e;
                if lat[i].1 {
                    shell += e;
                }
                acc += match &b {
                    Some(b) => a[i] * b[i].conj() * mu[i],
                    None => Complex64::new(e, 0.0),
                };
            }
            (acc, energy, shell)
        })
        .collect();
    let w = grid.omega_weight(d);
    let mut acc = Complex64::default();
    let mut energy = 0.0;
    let mut shell = 0.0;
    for (a, e, s) in parts {
        acc += a;
        energy += e;
        shell += s;
    }
    let frac = if energy > 0.0 { shell / energy } else { 0.0 };
    (acc * w, frac)
}

fn truncation(frac: f64) -> Vec<Warning> {
    if frac > 1e-6 {
        vec![Warning::Truncation { fraction: frac }]
    } else {
        Vec::new()
    }
}

/// `‖f‖_{H^s} = (∫ |f̂(t)|² μ_{2s}(t) dt)^{1/2}` by quadrature over `ω + k`, `|k| ≤ K`.
pub fn sobolev_norm(f: &dyn Spectral, s: f64, grid: &GridSpec) -> Warned<f64> {
    let (v, frac) = lattice_quadrature(f, None, s, grid);
    Warned::new(v.re.max(0.0).sqrt(), truncation(frac))
}

/// `⟨f, g⟩_{H^s} = ∫ f̂ conj(ĝ) μ_{2s}`.
pub fn inner_product(f: &dyn Spectral, g: &dyn Spectral, s: f64, grid: &GridSpec) -> Result<Warned<Complex64>> {
    if f.dim() != g.dim() {
        return Err(Error::dim(f.dim(), g.dim()));
    }
    let (v, frac) = lattice_quadrature(f, Some(g), s, grid);
    Ok(Warned::new(v, truncation(frac)))
}

/// Fourier samples on the frequency grid of `grid`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreqSamples {
    pub dim: usize,
    pub points: Vec<[f64; 2]>,
    pub values: Vec<Complex64>,
}

impl FreqSamples {
    /// Columns `t, re, im` (`t1, t2, re, im` in two dimensions).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(if self.dim == 1 { "t,re,im\n" } else { "t1,t2,re,im\n" });
        for (p, v) in self.points.iter().zip(&self.values) {
            if self.dim == 1 {
                out.push_str(&format!("{:.12e},{:.12e},{:.12e}\n", p[0], v.re, v.im));
            } else {
                out.push_str(&format!("{:.12e},{:.12e},{:.12e},{:.12e}\n", p[0], p[1], v.re, v.im));
            }
        }
        out
    }
}

/// Fourier transform sampled on the frequency grid, with an aliasing check.
pub fn generator_fourier(phi: &dyn Spectral, grid: &GridSpec) -> Warned<FreqSamples> {
    let d = phi.dim();
    let points = freq_points(grid, d);
    let values: Vec<Complex64> = points.par_iter().map(|t| phi.fourier(&t[..d])).collect();
    let mut frac = phi.alias_fraction();
    let lat = grid.lattice(d);
    let (inside, outside) = grid
        .omega_grid(d)
        .par_iter()
        .map(|w| {
            let mut a = 0.0;
            let mut b = 0.0;
            for (k, v) in lat.iter().zip(phi.fiber(w, &lat)) {
                let t = lattice_point(w, &k.0);
                if t[..d].iter().any(|x| x.abs() >= grid.freq_radius) {
                    b += v.norm_sqr();
                } else {
                    a += v.norm_sqr();
                }
            }
            (a, b)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0.0), |x, y| (x.0 + y.0, x.1 + y.1));
    if inside + outside > 0.0 {
        frac = f64::max(frac, outside / (inside + outside));
    }
    let warnings = if frac > 1e-6 { vec![Warning::Aliasing { fraction: frac }] } else { Vec::new() };
    Warned::new(FreqSamples { dim: d, points, values }, warnings)
}

/// Periodization diagnostic `sup_{x ∈ [0,1)^d} Σ_{|j|≤K} |φ(x + j)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodizationDiagnostic {
    pub sup: f64,
    /// `Σ_x Σ_{|j|_∞ = r} |φ(x + j)|` over the unit-cell samples, for `r = 0..=K`.
    pub shells: Vec<f64>,
}

pub fn periodization_sup(phi: &dyn Spectral, grid: &GridSpec) -> PeriodizationDiagnostic {
    let d = phi.dim();
    let k = grid.periodization_radius as i64;
    let lat = lattice_box(d, k);
    let steps = ((1.0 / grid.h).round() as usize).max(1);
    let cell: Vec<[f64; 2]> = match d {
        1 => (0..steps).map(|i| [i as f64 / steps as f64, 0.0]).collect(),
        _ => (0..steps * steps)
            .map(|i| [(i / steps) as f64 / steps as f64, (i % steps) as f64 / steps as f64])
            .collect(),
    };
    let rows: Vec<(f64, Vec<f64>)> = cell
        .par_iter()
        .map(|x| {
            let mut shells = vec![0.0; k as usize + 1];
            for (j, _) in &lat {
                let p = lattice_point(x, j);
                shells[j[0].abs().max(j[1].abs()) as usize] += phi.eval(&p[..d]).norm();
            }
            (shells.iter().sum(), shells)
        })
        .collect();
    let mut shells = vec![0.0; k as usize + 1];
    for (_, r) in &rows {
        for (a, b) in shells.iter_mut().zip(r) {
            *a += b;
        }
    }
    PeriodizationDiagnostic { sup: rows.iter().map(|r| r.0).fold(0.0, f64::max), shells }
}

/// Weighted space norm `(∫_{box} |φ|² μ_{2s})^{1/2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedL2Diagnostic {
    pub norm: f64,
    /// Contributions of the shells `r ≤ |x|_∞ < r + 1`, `r = 0..R`.
    pub shells: Vec<f64>,
}

pub fn weighted_l2_space(phi: &dyn Spectral, s: f64, grid: &GridSpec) -> WeightedL2Diagnostic {
    let d = phi.dim();
    let pts = super::fft::space_points(grid, d);
    let nshell = grid.box_radius.ceil() as usize + 1;
    let w = grid.h.powi(d as i32);
    let vals: Vec<(usize, f64)> = pts
        .par_iter()
        .map(|x| {
            let v = phi.eval(&x[..d]).norm_sqr() * weight_eval(2.0 * s, &x[..d]);
            let r = x[..d].iter().map(|a| a.abs()).fold(0.0, f64::max);
            ((r.floor() as usize).min(nshell - 1), v * w)
        })
        .collect();
    let mut shells = vec![0.0; nshell];
    for (i, v) in vals {
        shells[i] += v;
    }
    WeightedL2Diagnostic { norm: shells.iter().sum::<f64>().sqrt(), shells }
}

/// Contributions of the lattice shells `|k|_∞ = r`, `r = 0..=K`, to `‖f‖²_{H^s}`.
pub fn sobolev_shells(f: &dyn Spectral, s: f64, grid: &GridSpec) -> Vec<f64> {
    let d = f.dim();
    let lat = grid.lattice(d);
    let kmax = grid.periodization_radius;
    let parts: Vec<Vec<f64>> = grid
        .omega_grid(d)
        .par_iter()
        .map(|w| {
            let a = f.fiber(w, &lat);
            let mu = fiber_weights(d, s, w, &lat);
            let mut shells = vec![0.0; kmax + 1];
            for i in 0..lat.len() {
                let k = lat[i].0;
                shells[k[0].abs().max(k[1].abs()) as usize] += a[i].norm_sqr() * mu[i];
            }
            shells
        })
        .collect();
    let mut shells = vec![0.0; kmax + 1];
    for p in parts {
        for (a, b) in shells.iter_mut().zip(p) {
            *a += b;
        }
    }
    let w = grid.omega_weight(d);
    shells.iter_mut().for_each(|v| *v *= w);
    shells
}
