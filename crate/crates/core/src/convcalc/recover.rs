use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result, Rule};
use crate::frames::{analyze, symbol_coefficients, Verdict};
use crate::lattice::{CoeffSeq, GridSpec, Tolerance};
use crate::spectral::{fft::freq_points, sobolev_norm, Combination, Generator, SIFunction, Spectral};
use crate::warn::{push_unique, Warned};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralZero {
    pub point: Vec<f64>,
    /// Order of vanishing, i.e. the highest admissible derivative order of a point mass plus one.
    pub multiplicity: u32,
    pub value: f64,
}

/// Detected zeros of `φ̂`; point masses there and their derivatives below the
/// multiplicity annihilate `V_s(φ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnihilatorSpectrum {
    pub zeros: Vec<SpectralZero>,
}

#[derive(Debug, Clone)]
pub struct Recovery {
    pub coeffs: CoeffSeq,
    pub spectrum: AnnihilatorSpectrum,
    /// `‖target − Σ a_k φ(· − k)‖_{H^s}`.
    pub residual: f64,
}

/// Components of the sub-tolerance set of `|φ̂|` on the frequency grid inside the band.
pub fn detect_zeros(phi: &Generator, grid: &GridSpec, tol: &Tolerance) -> Result<AnnihilatorSpectrum> {
    let d = phi.dim();
    let n = grid.n();
    let pts = freq_points(grid, d);
    let mags: Vec<f64> = pts.par_iter().map(|t| phi.fourier(&t[..d]).norm()).collect();
    let top = mags.iter().copied().fold(0.0, f64::max);
    if top == 0.0 {
        return Err(Error::NonDiscreteZeroSet { detail: "the transform vanishes identically".into() });
    }
    let thr = tol.threshold(top);
    let inside = |i: usize| pts[i][..d].iter().all(|a| a.abs() < grid.freq_radius);
    // A zero must also be a sharp dip relative to its neighbourhood; smooth
    // decay such as a Gaussian tail is below tolerance but not a zero.
    const W: usize = 4;
    let window_max = |i: usize| -> f64 {
        let idx = |r: usize, c: usize| if d == 1 { c } else { r * n + c };
        let (r0, c0) = if d == 1 { (0, i) } else { (i / n, i % n) };
        let rows = if d == 1 { 0..1 } else { r0.saturating_sub(W)..(r0 + W + 1).min(n) };
        let mut m = 0.0f64;
        for r in rows {
            for c in c0.saturating_sub(W)..(c0 + W + 1).min(n) {
                m = m.max(mags[idx(r, c)]);
            }
        }
        m
    };
    let low: Vec<bool> =
        (0..mags.len()).map(|i| inside(i) && mags[i] <= thr && mags[i] <= 1e-6 * window_max(i)).collect();
    let mut seen = vec![false; mags.len()];
    let mut zeros = Vec::new();
    let neigh = |i: usize| -> Vec<usize> {
        match d {
            1 => [i.wrapping_sub(1), i + 1].into_iter().filter(|&j| j < n).collect(),
            _ => {
                let (r, c) = (i / n, i % n);
                let mut v = Vec::new();
                if r > 0 {
                    v.push(i - n);
                }
                if r + 1 < n {
                    v.push(i + n);
                }
                if c > 0 {
                    v.push(i - 1);
                }
                if c + 1 < n {
                    v.push(i + 1);
                }
                v
            }
        }
    };
    let max_size = 1usize << d;
    for start in 0..mags.len() {
        if !low[start] || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            for j in neigh(comp[head]) {
                if low[j] && !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            head += 1;
        }
        if comp.len() > max_size {
            let p = &pts[comp[0]][..d];
            return Err(Error::NonDiscreteZeroSet {
                detail: format!("{} adjacent grid frequencies near {p:?} fall below {thr:.3e}", comp.len()),
            });
        }
        let best = *comp.iter().min_by(|a, b| mags[**a].total_cmp(&mags[**b])).expect("nonempty");
        let tp = pts[best];
        let m = multiplicity(phi, &tp[..d], grid.dt() / 8.0);
        if m >= 1 {
            zeros.push(SpectralZero { point: tp[..d].to_vec(), multiplicity: m, value: mags[best] });
        }
    }
    Ok(AnnihilatorSpectrum { zeros })
}

/// Order of vanishing at `t` from the ratio `|φ̂(t + δ)| / |φ̂(t + δ/2)| ≈ 2^j`, minimized over a few directions.
fn multiplicity(phi: &Generator, t: &[f64], delta: f64) -> u32 {
    let dirs: Vec<[f64; 2]> = match t.len() {
        1 => vec![[1.0, 0.0], [-1.0, 0.0]],
        _ => vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [0.6, 0.8]],
    };
    let at = |u: &[f64; 2], h: f64| {
        let p = [t[0] + h * u[0], t.get(1).copied().unwrap_or(0.0) + h * u[1]];
        phi.fourier(&p[..t.len()]).norm()
    };
    dirs.iter()
        .map(|u| {
            let a = at(u, delta);
            let b = at(u, delta / 2.0);
            if a == 0.0 || b == 0.0 {
                return 0;
            }
            (a / b).log2().round().max(0.0) as u32
        })
        .min()
        .unwrap_or(0)
}

/// Recover the delta train `a` from `target = (Σ a_k δ(· − k)) ∗ φ` by fiberwise division.
pub fn convolutor_recover(target: &dyn Spectral, phi: &Generator, s: f64, grid: &GridSpec, tol: &Tolerance) -> Result<Warned<Recovery>> {
    let d = phi.dim();
    if target.dim() != d {
        return Err(Error::dim(d, target.dim()));
    }
    let analysis = analyze(std::slice::from_ref(phi), s, grid, tol)?;
    if analysis.report.verdict == Verdict::Violated {
        return Err(Error::Precondition {
            rule: Rule::ConditionA,
            detail: "the shifts of the convolutor generator do not form a frame".into(),
        });
    }
    let spectrum = detect_zeros(phi, grid, tol)?;
    let cutoff = analysis.report.cutoff;
    let lat = grid.lattice(d);
    let taus: Vec<Complex64> = analysis
        .fibers
        .par_iter()
        .map(|f| {
            let den = f.eigvals[0];
            if den < cutoff {
                return Complex64::default();
            }
            let tv = target.fiber(&f.omega, &lat);
            let num: Complex64 = tv.iter().zip(&f.values[0]).zip(&f.mu).map(|((a, b), w)| a * b.conj() * w).sum();
            num / den
        })
        .collect();
    let raw = symbol_coefficients(&taus, grid, d);
    let top = raw.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let coeffs = CoeffSeq::from_entries(d, raw.into_iter().filter(|(_, v)| v.norm() > 1e-13 * top))?;
    let mut warnings = analysis.warnings;
    let rebuilt = SIFunction::new(vec![phi.clone()], vec![coeffs.clone()], s)?;
    let res = sobolev_norm(&Combination::difference(target, &rebuilt), s, grid);
    push_unique(&mut warnings, res.warnings);
    Ok(Warned::new(Recovery { coeffs, spectrum, residual: res.value }, warnings))
}
