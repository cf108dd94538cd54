use num_complex::Complex64;

use super::symbol::symbol_eval;
use super::{Generator, Spectral};
use crate::error::{Error, Result};
use crate::lattice::CoeffSeq;

/// `f = Σ_i Σ_k c^i_k φ_i(· − k)` tagged with a Sobolev order.
#[derive(Debug, Clone, PartialEq)]
pub struct SIFunction {
    generators: Vec<Generator>,
    coeffs: Vec<CoeffSeq>,
    order: f64,
}

impl SIFunction {
    pub fn new(generators: Vec<Generator>, coeffs: Vec<CoeffSeq>, order: f64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("at least one generator is required".into()));
        }
        if generators.len() != coeffs.len() {
            return Err(Error::InvalidInput(format!(
                "{} generators but {} coefficient sequences",
                generators.len(),
                coeffs.len()
            )));
        }
        if !order.is_finite() {
            return Err(Error::InvalidInput("order must be finite".into()));
        }
        let d = generators[0].dim();
        for g in &generators {
            if g.dim() != d {
                return Err(Error::dim(d, g.dim()));
            }
        }
        for c in &coeffs {
            if c.dim() != d {
                return Err(Error::dim(d, c.dim()));
            }
        }
        Ok(Self { generators, coeffs, order })
    }

    /// `φ` itself, as the expansion with a unit coefficient at the origin.
    pub fn single(g: Generator, order: f64) -> Self {
        let c = CoeffSeq::delta(&vec![0; g.dim()]).expect("valid dim");
        Self { generators: vec![g], coeffs: vec![c], order }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn coeffs(&self) -> &[CoeffSeq] {
        &self.coeffs
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn with_order(mut self, s: f64) -> Self {
        self.order = s;
        self
    }

    pub fn with_coeffs(&self, coeffs: Vec<CoeffSeq>) -> Result<Self> {
        Self::new(self.generators.clone(), coeffs, self.order)
    }

    pub fn with_generators(&self, generators: Vec<Generator>) -> Result<Self> {
        Self::new(generators, self.coeffs.clone(), self.order)
    }

    /// Periodic symbols `τ_i(t) = Σ_k c^i_k e_k(t)` at `t`.
    pub fn symbols_at(&self, t: &[f64]) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| symbol_eval(c, t)).collect()
    }
}

impl Spectral for SIFunction {
    fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    fn eval(&self, x: &[f64]) -> Complex64 {
        let d = self.dim();
        let mut y = [0.0; 2];
        let mut acc = Complex64::default();
        for (g, c) in self.generators.iter().zip(&self.coeffs) {
            let sup = g.support();
            for (k, v) in c.iter() {
                for i in 0..d {
                    y[i] = x[i] - k[i] as f64;
                }
                if let Some(s) = &sup {
                    if !s.contains(&y[..d], 1e-12) {
                        continue;
                    }
                }
                acc += v * g.eval(&y[..d]);
            }
        }
        acc
    }

    fn fourier(&self, t: &[f64]) -> Complex64 {
        self.generators
            .iter()
            .zip(self.symbols_at(t))
            .map(|(g, tau)| if tau == Complex64::default() { tau } else { tau * g.fourier(t) })
            .sum()
    }

    fn fiber(&self, omega: &[f64; 2], lattice: &[([i64; 2], bool)]) -> Vec<Complex64> {
        let d = self.dim();
        let taus = self.symbols_at(&omega[..d]);
        let mut out = vec![Complex64::default(); lattice.len()];
        for (g, tau) in self.generators.iter().zip(taus) {
            if tau == Complex64::default() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(g.fiber(omega, lattice)) {
                *o += tau * v;
            }
        }
        out
    }
}

/// Linear combination `Σ a_j f_j` of spectral objects.
pub struct Combination<'a> {
    dim: usize,
    terms: Vec<(Complex64, &'a dyn Spectral)>,
}

impl<'a> Combination<'a> {
    pub fn new(dim: usize) -> Self {
        Self { dim, terms: Vec::new() }
    }

    pub fn push(mut self, a: Complex64, f: &'a dyn Spectral) -> Self {
        self.terms.push((a, f));
        self
    }

    /// `f − g`.
    pub fn difference(f: &'a dyn Spectral, g: &'a dyn Spectral) -> Self {
        Self::new(f.dim()).push(Complex64::new(1.0, 0.0), f).push(Complex64::new(-1.0, 0.0), g)
    }
}

impl Spectral for Combination<'_> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms.iter().map(|(a, f)| a * f.eval(x)).sum()
    }

    fn fourier(&self, t: &[f64]) -> Complex64 {
        self.terms.iter().map(|(a, f)| a * f.fourier(t)).sum()
    }

    fn fiber(&self, omega: &[f64; 2], lattice: &[([i64; 2], bool)]) -> Vec<Complex64> {
        let mut out = vec![Complex64::default(); lattice.len()];
        for (a, f) in &self.terms {
            for (o, v) in out.iter_mut().zip(f.fiber(omega, lattice)) {
                *o += a * v;
            }
        }
        out
    }
}
