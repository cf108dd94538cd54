use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{CoeffSeq, GridSpec, Tolerance};
use crate::spectral::PeriodicSymbol;

/// Square matrix of periodic symbols relating two generator banks.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    entries: Vec<Vec<PeriodicSymbol>>,
}

impl TransitionMatrix {
    pub fn new(entries: Vec<Vec<PeriodicSymbol>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::InvalidInput("empty transition matrix".into()));
        }
        let d = entries[0].first().map(|s| s.dim()).unwrap_or(1);
        for row in &entries {
            if row.len() != m {
                return Err(Error::InvalidInput("transition matrix must be square".into()));
            }
            for s in row {
                if s.dim() != d {
                    return Err(Error::dim(d, s.dim()));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn identity(m: usize, dim: usize) -> Result<Self> {
        let zero = PeriodicSymbol::from_coeffs(CoeffSeq::zero(dim)?);
        let one = PeriodicSymbol::from_coeffs(CoeffSeq::delta(&vec![0; dim])?);
        Self::new((0..m).map(|i| (0..m).map(|j| if i == j { one.clone() } else { zero.clone() }).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self) -> usize {
        self.entries[0][0].dim()
    }

    pub fn eval(&self, omega: &[f64]) -> DMatrix<Complex64> {
        let m = self.size();
        DMatrix::from_fn(m, m, |i, j| self.entries[i][j].eval(omega))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub min_abs_det: f64,
    /// Torus samples (in `[0,1)^d`) with `|det A(ω)|` below tolerance, and that modulus.
    pub singular_set: Vec<(Vec<f64>, f64)>,
}

impl RegularityReport {
    /// Columns `ω, |det|` (`ω1, ω2, |det|` in two dimensions).
    pub fn singular_csv(&self) -> String {
        let d = self.singular_set.first().map_or(1, |p| p.0.len());
        let mut out = String::from(if d == 1 { "omega,abs_det\n" } else { "omega1,omega2,abs_det\n" });
        for (w, v) in &self.singular_set {
            let cols: Vec<String> = w.iter().chain(std::iter::once(v)).map(|x| format!("{x:.12e}")).collect();
            out.push_str(&cols.join(","));
            out.push('\n');
        }
        out
    }
}

/// Regularity read as nonvanishing of `det A(ω)` on the torus grid.
pub fn transition_regularity(a: &TransitionMatrix, grid: &GridSpec, tol: &Tolerance) -> RegularityReport {
    let d = a.dim();
    let dets: Vec<([f64; 2], f64)> = grid
        .omega_grid(d)
        .par_iter()
        .map(|w| {
            let det = a.eval(&w[..d]).determinant().norm();
            ([w[0].rem_euclid(1.0), w[1].rem_euclid(1.0)], det)
        })
        .collect();
    let min_abs_det = dets.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let singular_set: Vec<(Vec<f64>, f64)> =
        dets.iter().filter(|p| p.1 < tol.abs).map(|p| (p.0[..d].to_vec(), p.1)).collect();
    RegularityReport { regular: singular_set.is_empty(), min_abs_det, singular_set }
}
