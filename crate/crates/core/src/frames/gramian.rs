use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::Verdict;
use crate::error::{Error, Result};
use crate::lattice::{lattice_box, GridSpec, Tolerance};
use crate::spectral::{fiber_weights, Generator, Spectral};
use crate::warn::{Warned, Warning};

/// Gramian data at one torus point.
pub(crate) struct Fiber {
    pub omega: [f64; 2],
    /// `φ̂_i(ω + k)` for each generator and lattice point.
    pub values: Vec<Vec<Complex64>>,
    pub mu: Vec<f64>,
    pub eigvals: DVector<f64>,
    pub eigvecs: DMatrix<Complex64>,
    pub tail: f64,
}

fn check_bank(bank: &[Generator]) -> Result<usize> {
    let first = bank.first().ok_or_else(|| Error::InvalidInput("empty generator bank".into()))?;
    let d = first.dim();
    for g in bank {
        if g.dim() != d {
            return Err(Error::dim(d, g.dim()));
        }
    }
    Ok(d)
}

fn gram(values: &[Vec<Complex64>], mu: &[f64]) -> DMatrix<Complex64> {
    let m = values.len();
    let mut g = DMatrix::<Complex64>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v: Complex64 = values[i].iter().zip(&values[j]).zip(mu).map(|((a, b), w)| a * b.conj() * w).sum();
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    g
}

fn fiber_at(bank: &[Generator], s: f64, omega: [f64; 2], lat: &[([i64; 2], bool)]) -> Fiber {
    let d = bank[0].dim();
    let values: Vec<Vec<Complex64>> = bank.iter().map(|g| g.fiber(&omega, lat)).collect();
    let mu = fiber_weights(d, s, &omega, lat);
    let g = gram(&values, &mu);
    let mut tail = 0.0f64;
    for v in &values {
        let mut tot = 0.0;
        let mut shell = 0.0;
        for ((x, w), (_, on_shell)) in v.iter().zip(&mu).zip(lat) {
            let e = x.norm_sqr() * w;
            tot += e;
            if *on_shell {
                shell += e;
            }
        }
        if tot > 0.0 {
            tail = tail.max(shell / tot);
        }
    }
    let eig = g.symmetric_eigen();
    Fiber { omega, values, mu, eigvals: eig.eigenvalues, eigvecs: eig.eigenvectors, tail }
}

/// `G(ω)_{ij} = Σ_{|k|≤K} φ̂_i(ω+k) conj(φ̂_j(ω+k)) μ_{2s}(ω+k)`.
pub fn gramian_fiber(bank: &[Generator], s: f64, omega: &[f64], k: usize) -> Result<Warned<DMatrix<Complex64>>> {
    let d = check_bank(bank)?;
    if omega.len() != d {
        return Err(Error::dim(d, omega.len()));
    }
    if k < 1 {
        return Err(Error::InvalidInput("periodization radius must be at least 1".into()));
    }
    let w = [omega[0], omega.get(1).copied().unwrap_or(0.0)];
    let lat = lattice_box(d, k as i64);
    let f = fiber_at(bank, s, w, &lat);
    let g = gram(&f.values, &f.mu);
    let mut warnings = Vec::new();
    if f.tail > 1e-8 {
        warnings.push(Warning::BracketTail { omega: omega.to_vec(), relative: f.tail });
    }
    Ok(Warned::new(g, warnings))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    /// Smallest nonzero fiber eigenvalue over the spectrum.
    pub lower: f64,
    /// Largest fiber eigenvalue.
    pub upper: f64,
    /// Fraction of torus samples where the fiber has positive rank.
    pub spectrum_measure: f64,
    /// `rank_profile[r]` counts torus samples whose fiber has rank `r`.
    pub rank_profile: Vec<usize>,
    /// Most negative eigenvalue seen (round-off witness of semidefiniteness).
    pub min_eigenvalue: f64,
    /// Eigenvalues below this count as zero.
    pub cutoff: f64,
    pub verdict: Verdict,
}

pub(crate) struct FiberAnalysis {
    pub fibers: Vec<Fiber>,
    pub report: FrameReport,
    pub warnings: Vec<Warning>,
}

fn sorted_desc(v: &DVector<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = v.iter().copied().collect();
    e.sort_by(|a, b| b.total_cmp(a));
    e
}

/// Index offsets of the axis neighbours of torus sample `i` (periodic wrap).
fn neighbours(i: usize, m: usize, dim: usize) -> Vec<usize> {
    match dim {
        1 => vec![(i + 1) % m, (i + m - 1) % m],
        _ => {
            let (r, c) = (i / m, i % m);
            vec![
                ((r + 1) % m) * m + c,
                ((r + m - 1) % m) * m + c,
                r * m + (c + 1) % m,
                r * m + (c + m - 1) % m,
            ]
        }
    }
}

/// Nearest representative of `b` relative to `a` on the torus.
fn unwrap(a: f64, b: f64) -> f64 {
    a + (b - a - (b - a).round())
}

pub(crate) fn analyze(bank: &[Generator], s: f64, grid: &GridSpec, tol: &Tolerance) -> Result<FiberAnalysis> {
    let d = check_bank(bank)?;
    grid.validate()?;
    let m = bank.len();
    let lat = grid.lattice(d);
    let omegas = grid.omega_grid(d);
    let fibers: Vec<Fiber> = omegas.par_iter().map(|w| fiber_at(bank, s, *w, &lat)).collect();

    let top = fibers.iter().flat_map(|f| f.eigvals.iter().copied()).fold(0.0, f64::max);
    let min_eig = fibers.iter().flat_map(|f| f.eigvals.iter().copied()).fold(f64::INFINITY, f64::min);
    let cutoff = tol.threshold(top);
    let mut rank_profile = vec![0usize; m + 1];
    let mut lower = f64::INFINITY;
    let mut argmin = None;
    let mut ranks = Vec::with_capacity(fibers.len());
    for (i, f) in fibers.iter().enumerate() {
        let kept: Vec<f64> = f.eigvals.iter().copied().filter(|&l| l >= cutoff).collect();
        ranks.push(kept.len());
        rank_profile[kept.len()] += 1;
        if let Some(lo) = kept.iter().copied().reduce(f64::min) {
            if lo < lower {
                lower = lo;
                argmin = Some(i);
            }
        }
    }
    let in_sigma = fibers.len() - rank_profile[0];
    let spectrum_measure = in_sigma as f64 / fibers.len() as f64;

    let mut warnings = Vec::new();
    let worst = fibers.iter().max_by(|a, b| a.tail.total_cmp(&b.tail));
    if let Some(f) = worst {
        if f.tail > 1e-8 {
            warnings.push(Warning::BracketTail { omega: f.omega[..d].to_vec(), relative: f.tail });
        }
    }

    let verdict;
    let upper;
    match argmin {
        None => {
            lower = 0.0;
            upper = 0.0;
            verdict = Verdict::Violated;
        }
        Some(i) => {
            upper = top;
            let r = ranks[i];
            // Refine toward a neighbour of lower rank: a continuous decay of the
            // smallest retained eigenvalue means no positive lower frame bound.
            let mut decays = false;
            for n in neighbours(i, grid.m(), d) {
                if ranks[n] >= r {
                    continue;
                }
                let a = fibers[i].omega;
                let b = fibers[n].omega;
                let b = [unwrap(a[0], b[0]), unwrap(a[1], b[1])];
                for p in 1..=12 {
                    let f = 1.0 - 0.5f64.powi(p);
                    let w = [a[0] + (b[0] - a[0]) * f, a[1] + (b[1] - a[1]) * f];
                    let probe = fiber_at(bank, s, w, &lat);
                    let e = sorted_desc(&probe.eigvals);
                    if e[r - 1] < lower * 1e-3 {
                        decays = true;
                        break;
                    }
                }
                if decays {
                    break;
                }
            }
            verdict = if decays {
                Verdict::Violated
            } else if lower < 10.0 * cutoff {
                Verdict::Inconclusive
            } else {
                Verdict::Consistent
            };
        }
    }
    let report = FrameReport {
        lower,
        upper,
        spectrum_measure,
        rank_profile,
        min_eigenvalue: if min_eig.is_finite() { min_eig } else { 0.0 },
        cutoff,
        verdict,
    };
    Ok(FiberAnalysis { fibers, report, warnings })
}

/// Frame bounds of the integer shifts of `bank` in `H^s`, from the fiber eigenvalues.
pub fn frame_bounds(bank: &[Generator], s: f64, grid: &GridSpec, tol: &Tolerance) -> Result<Warned<FrameReport>> {
    let a = analyze(bank, s, grid, tol)?;
    Ok(Warned::new(a.report, a.warnings))
}
