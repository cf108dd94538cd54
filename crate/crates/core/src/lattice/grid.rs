use serde::{Deserialize, Serialize};

use super::seq::check_dim;
use crate::error::{Error, Result};

/// Discretization parameters shared by every numerical operation.
///
/// Space samples sit at `x_j = −R + j h`, `j = 0..N` with `N = 2R/h`, and the
/// matching frequency samples at `t_m = (m − N/2)/(2R)`. The torus 𝕋^d is
/// sampled at `ω_j = (j − M/2)/M` with `M = 2R`, so that `ω + k` runs over the
/// same frequency lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    #[serde(rename = "R")]
    pub box_radius: f64,
    pub h: f64,
    pub freq_radius: f64,
    #[serde(rename = "K")]
    pub periodization_radius: usize,
}

impl GridSpec {
    pub fn new(box_radius: f64, h: f64, freq_radius: f64, periodization_radius: usize) -> Result<Self> {
        let g = Self { box_radius, h, freq_radius, periodization_radius };
        g.validate()?;
        Ok(g)
    }

    pub fn default_for(dim: usize) -> Self {
        match dim {
            1 => Self { box_radius: 32.0, h: 1.0 / 16.0, freq_radius: 8.0, periodization_radius: 32 },
            _ => Self { box_radius: 16.0, h: 1.0 / 8.0, freq_radius: 4.0, periodization_radius: 16 },
        }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.periodization_radius = k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInput(format!("grid: {m}")));
        if !(self.box_radius.is_finite() && self.box_radius > 0.0) {
            return bad("R must be positive");
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return bad("h must be positive");
        }
        if !is_integral(self.box_radius / self.h) {
            return bad("R/h must be an integer");
        }
        if !is_integral(2.0 * self.box_radius) {
            return bad("2R must be an integer");
        }
        if !(self.freq_radius > 0.0 && self.freq_radius <= 0.5 / self.h * (1.0 + 1e-12)) {
            return bad("freq_radius must lie in (0, 1/(2h)]");
        }
        if self.periodization_radius < 1 {
            return bad("K must be at least 1");
        }
        if self.n() > 1 << 16 {
            return bad("too many samples per axis");
        }
        Ok(())
    }

    /// Space samples per axis.
    pub fn n(&self) -> usize {
        (2.0 * self.box_radius / self.h).round() as usize
    }

    /// Torus samples per axis.
    pub fn m(&self) -> usize {
        (2.0 * self.box_radius).round() as usize
    }

    /// Frequency spacing `1/(2R)`.
    pub fn dt(&self) -> f64 {
        1.0 / (2.0 * self.box_radius)
    }

    pub fn x(&self, j: usize) -> f64 {
        -self.box_radius + j as f64 * self.h
    }

    pub fn t(&self, m: usize) -> f64 {
        (m as f64 - (self.n() / 2) as f64) * self.dt()
    }

    /// Torus points `ω_j` per axis, in `[−1/2, 1/2)`.
    pub fn omega_axis(&self) -> Vec<f64> {
        let m = self.m();
        (0..m).map(|j| (j as f64 - (m / 2) as f64) / m as f64).collect()
    }

    /// All torus points in row-major order, padded to two coordinates.
    pub fn omega_grid(&self, dim: usize) -> Vec<[f64; 2]> {
        let ax = self.omega_axis();
        match dim {
            1 => ax.iter().map(|&w| [w, 0.0]).collect(),
            _ => ax.iter().flat_map(|&a| ax.iter().map(move |&b| [a, b])).collect(),
        }
    }

    /// Cell volume of the torus quadrature.
    pub fn omega_weight(&self, dim: usize) -> f64 {
        (self.m() as f64).powi(-(dim as i32))
    }

    /// Integer points of the box `|k|_∞ ≤ K` in row-major order, with the shell flag `|k|_∞ = K`.
    pub fn lattice(&self, dim: usize) -> Vec<([i64; 2], bool)> {
        lattice_box(dim, self.periodization_radius as i64)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        check_dim(dim)
    }
}

pub(crate) fn lattice_box(dim: usize, k: i64) -> Vec<([i64; 2], bool)> {
    match dim {
        1 => (-k..=k).map(|a| ([a, 0], a.abs() == k)).collect(),
        _ => (-k..=k)
            .flat_map(|a| (-k..=k).map(move |b| ([a, b], a.abs().max(b.abs()) == k)))
            .collect(),
    }
}

fn is_integral(v: f64) -> bool {
    (v - v.round()).abs() < 1e-9 * v.abs().max(1.0)
}

/// Absolute/relative tolerance pair used for all numerical verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-9, rel: 1e-7 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.threshold(a.abs().max(b.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for d in [1, 2] {
            let g = GridSpec::default_for(d);
            g.validate().unwrap();
            assert_eq!(g.t(g.n() / 2), 0.0);
            assert_eq!(g.x(g.n() / 2), 0.0);
        }
        let g = GridSpec::default_for(1);
        assert_eq!(g.n(), 1024);
        assert_eq!(g.m(), 64);
        assert_eq!(g.omega_axis()[0], -0.5);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(GridSpec::new(1.0, 0.3, 1.0, 4).is_err());
        assert!(GridSpec::new(-1.0, 0.25, 1.0, 4).is_err());
        assert!(GridSpec::new(4.0, 0.25, 1.0, 0).is_err());
        assert!(GridSpec::new(4.0, 0.25, 3.0, 4).is_err());
        assert!(GridSpec::new(4.0, 0.25, 2.0, 4).is_ok());
    }

    #[test]
    fn json_names() {
        let g = GridSpec::default_for(1);
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"R\":32.0") && s.contains("\"K\":32"));
        let back: GridSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn lattice_shell() {
        let l = lattice_box(2, 2);
        assert_eq!(l.len(), 25);
        assert_eq!(l.iter().filter(|(_, s)| *s).count(), 16);
    }
}
