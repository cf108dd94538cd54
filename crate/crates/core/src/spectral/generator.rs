use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fft::{dft, freq_points, idft};
use super::Spectral;
use crate::error::{Error, Result};
use crate::lattice::{character, check_dim, GridSpec};
use crate::warn::{Warned, Warning};

/// Closed ℓ∞ ball `{x : max_i |x_i − center_i| ≤ radius}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Support {
    pub fn centered(radius: f64) -> Self {
        Self { center: [0.0, 0.0], radius }
    }

    pub fn contains(&self, x: &[f64], slack: f64) -> bool {
        x.iter().zip(self.center).all(|(a, c)| (a - c).abs() <= self.radius + slack)
    }

    /// Minkowski sum of two balls.
    pub fn sum(&self, other: &Support) -> Support {
        Support {
            center: [self.center[0] + other.center[0], self.center[1] + other.center[1]],
            radius: self.radius + other.radius,
        }
    }
}

/// Samples of a function on a space grid together with their transform.
#[derive(Debug, PartialEq)]
pub struct SampledData {
    pub grid: GridSpec,
    pub values: Vec<Complex64>,
    pub support: Option<Support>,
    spectrum: Vec<Complex64>,
    alias_fraction: f64,
}

impl SampledData {
    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    pub fn alias_fraction(&self) -> f64 {
        self.alias_fraction
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorKind {
    Gaussian { sigma: f64 },
    /// Centered cardinal B-spline of order `order` (degree `order − 1`).
    BSpline { order: u32 },
    BandLimited { cutoff: f64 },
    GridSampled(Arc<SampledData>),
}

/// A function on ℝ^d with both a space form and a Fourier form.
///
/// Every kind carries a translation `shift` and a complex amplitude `scale`,
/// so that the represented function is `scale · φ(· − shift)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "super::GeneratorSpec", into = "super::GeneratorSpec")]
pub struct Generator {
    dim: usize,
    kind: GeneratorKind,
    shift: [f64; 2],
    scale: Complex64,
}

/// Remainder `Σ_{n > cap} S_n` of shell sums decaying like `A n^{−q}`,
/// with `q` read off the shells `cap/2` and `cap`.
fn power_tail(mid: Complex64, last: Complex64, cap: i64) -> Complex64 {
    if last == Complex64::default() || mid == Complex64::default() {
        return Complex64::default();
    }
    let ratio = mid / last;
    if ratio.re <= 0.0 || ratio.im.abs() > 1e-6 * ratio.re {
        return Complex64::default();
    }
    let q = ratio.re.log2();
    if !(1.5..=40.0).contains(&q) {
        return Complex64::default();
    }
    let n = cap as f64;
    // Euler-Maclaurin for Σ_{m > n} (m/n)^{−q}
    last * (n / (q - 1.0) - 0.5 + q / (12.0 * n))
}

fn sinc(t: f64) -> f64 {
    let x = PI * t;
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Centered cardinal B-spline of order `n` via the stable two-term recursion.
pub(crate) fn bspline_1d(n: u32, x: f64) -> f64 {
    let y = x + n as f64 / 2.0;
    if y < 0.0 || y > n as f64 {
        return 0.0;
    }
    let n = n as usize;
    let mut a: Vec<f64> = (0..n)
        .map(|j| {
            let u = y - j as f64;
            if u > 0.0 && u < 1.0 {
                1.0
            } else if u == 0.0 || u == 1.0 {
                0.5
            } else {
                0.0
            }
        })
        .collect();
    for k in 2..=n {
        for j in 0..=(n - k) {
            let u = y - j as f64;
            a[j] = (u * a[j] + (k as f64 - u) * a[j + 1]) / (k - 1) as f64;
        }
    }
    a[0]
}

fn band_1d(c: f64, x: f64) -> f64 {
    if x.abs() < 1e-12 {
        2.0 * c
    } else {
        (2.0 * PI * c * x).sin() / (PI * x)
    }
}

fn band_hat_1d(c: f64, t: f64) -> f64 {
    let a = t.abs();
    let eps = 1e-12 * c.max(1.0);
    if a < c - eps {
        1.0
    } else if a <= c + eps {
        0.5
    } else {
        0.0
    }
}

fn near_integer(v: f64) -> Option<i64> {
    let r = v.round();
    ((v - r).abs() <= 1e-9 * v.abs().max(1.0)).then_some(r as i64)
}

const STENCIL: usize = 8;

/// Lagrange weights for nodes `−3, …, 4` at offset `u ∈ [0, 1)`.
fn lagrange_weights(u: f64) -> [f64; STENCIL] {
    let mut w = [1.0; STENCIL];
    for (i, wi) in w.iter_mut().enumerate() {
        let xi = i as f64 - 3.0;
        for j in 0..STENCIL {
            if j != i {
                let xj = j as f64 - 3.0;
                *wi *= (u - xj) / (xi - xj);
            }
        }
    }
    w
}

impl SampledData {
    fn build(dim: usize, grid: GridSpec, mut values: Vec<Complex64>, support: Option<Support>, alias: f64) -> Self {
        if let Some(sup) = support {
            let n = grid.n();
            let slack = 1e-9 * grid.h;
            for (i, v) in values.iter_mut().enumerate() {
                let x = match dim {
                    1 => [grid.x(i), 0.0],
                    _ => [grid.x(i / n), grid.x(i % n)],
                };
                if !sup.contains(&x[..dim], slack) {
                    *v = Complex64::default();
                }
            }
        }
        let mut spectrum = dft(&values, &grid, dim);
        let mut e_in = 0.0;
        let mut e_out = 0.0;
        for (v, t) in spectrum.iter_mut().zip(freq_points(&grid, dim)) {
            if t[..dim].iter().any(|a| a.abs() >= grid.freq_radius) {
                e_out += v.norm_sqr();
                *v = Complex64::default();
            } else {
                e_in += v.norm_sqr();
            }
        }
        let band = if e_in + e_out > 0.0 { e_out / (e_in + e_out) } else { 0.0 };
        Self { grid, values, support, spectrum, alias_fraction: alias.max(band) }
    }

    fn sample(&self, dim: usize, idx: [i64; 2]) -> Complex64 {
        let n = self.grid.n() as i64;
        if idx[..dim].iter().any(|&j| j < 0 || j >= n) {
            return Complex64::default();
        }
        match dim {
            1 => self.values[idx[0] as usize],
            _ => self.values[(idx[0] * n + idx[1]) as usize],
        }
    }

    fn eval(&self, dim: usize, y: &[f64]) -> Complex64 {
        let g = &self.grid;
        if y.iter().any(|v| v.abs() > g.box_radius) {
            return Complex64::default();
        }
        if let Some(sup) = &self.support {
            if !sup.contains(y, 1e-9 * g.h) {
                return Complex64::default();
            }
        }
        let us: Vec<f64> = y.iter().map(|v| (v + g.box_radius) / g.h).collect();
        let mut stencils = [([0i64; STENCIL], [0.0; STENCIL]); 2];
        for (ax, &u) in us.iter().enumerate() {
            stencils[ax] = match near_integer(u) {
                Some(j) => {
                    let mut w = [0.0; STENCIL];
                    w[0] = 1.0;
                    ([j; STENCIL], w)
                }
                None => {
                    let f = u.floor();
                    let j = f as i64;
                    (std::array::from_fn(|i| j + i as i64 - 3), lagrange_weights(u - f))
                }
            };
        }
        let mut acc = Complex64::default();
        match dim {
            1 => {
                let (js, ws) = stencils[0];
                for a in 0..STENCIL {
                    if ws[a] != 0.0 {
                        acc += self.sample(1, [js[a], 0]) * ws[a];
                    }
                }
            }
            _ => {
                let (js0, ws0) = stencils[0];
                let (js1, ws1) = stencils[1];
                for a in 0..STENCIL {
                    for b in 0..STENCIL {
                        let w = ws0[a] * ws1[b];
                        if w != 0.0 {
                            acc += self.sample(2, [js0[a], js1[b]]) * w;
                        }
                    }
                }
            }
        }
        acc
    }

    fn fourier(&self, dim: usize, t: &[f64]) -> Complex64 {
        let g = &self.grid;
        if t.iter().any(|a| a.abs() >= g.freq_radius) {
            return Complex64::default();
        }
        let n = g.n();
        let scale = 2.0 * g.box_radius;
        let on_grid: Option<Vec<usize>> =
            t.iter().map(|a| near_integer(a * scale).map(|m| (m + (n / 2) as i64) as usize)).collect();
        if let Some(ms) = on_grid {
            return match dim {
                1 => self.spectrum[ms[0]],
                _ => self.spectrum[ms[0] * n + ms[1]],
            };
        }
        let phase = |ta: f64| -> Vec<Complex64> { (0..n).map(|j| character(&[g.x(j)], &[ta])).collect() };
        let w = g.h.powi(dim as i32);
        match dim {
            1 => {
                let p = phase(t[0]);
                self.values.iter().zip(&p).map(|(v, e)| v * e).sum::<Complex64>() * w
            }
            _ => {
                let p0 = phase(t[0]);
                let p1 = phase(t[1]);
                let mut acc = Complex64::default();
                for (r, row) in self.values.chunks(n).enumerate() {
                    let inner: Complex64 = row.iter().zip(&p1).map(|(v, e)| v * e).sum();
                    acc += p0[r] * inner;
                }
                acc * w
            }
        }
    }
}

impl Generator {
    fn analytic(dim: usize, kind: GeneratorKind) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, kind, shift: [0.0; 2], scale: Complex64::new(1.0, 0.0) })
    }

    /// `φ(x) = e^{−π|x|²/σ²}`, `φ̂(t) = σ^d e^{−πσ²|t|²}`.
    pub fn gaussian(dim: usize, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidInput("gaussian width must be positive".into()));
        }
        Self::analytic(dim, GeneratorKind::Gaussian { sigma })
    }

    /// Tensor product of centered B-splines, `φ̂(t) = Π sinc(t_i)^n`.
    pub fn bspline(dim: usize, order: u32) -> Result<Self> {
        if !(1..=24).contains(&order) {
            return Err(Error::InvalidInput("B-spline order must lie in 1..=24".into()));
        }
        Self::analytic(dim, GeneratorKind::BSpline { order })
    }

    /// Indicator of the cube `|t_i| ≤ c` in frequency.
    pub fn band_limited(dim: usize, cutoff: f64) -> Result<Self> {
        if !(cutoff.is_finite() && cutoff > 0.0) {
            return Err(Error::InvalidInput("cutoff must be positive".into()));
        }
        Self::analytic(dim, GeneratorKind::BandLimited { cutoff })
    }

    /// Box function `β_1`.
    pub fn boxcar(dim: usize) -> Self {
        Self::bspline(dim, 1).expect("valid order")
    }

    /// Hat function `β_2`.
    pub fn hat(dim: usize) -> Self {
        Self::bspline(dim, 2).expect("valid order")
    }

    /// The zero function.
    pub fn zero(dim: usize) -> Result<Self> {
        Ok(Self::gaussian(dim, 1.0)?.scaled(Complex64::default()))
    }

    /// Samples on `grid`, assumed to vanish outside the box.
    pub fn grid_sampled(dim: usize, grid: GridSpec, values: Vec<Complex64>, support: Option<Support>) -> Result<Self> {
        check_dim(dim)?;
        grid.validate()?;
        let expected = grid.n().pow(dim as u32);
        if values.len() != expected {
            return Err(Error::InvalidInput(format!("expected {expected} samples, got {}", values.len())));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidInput("non-finite sample".into()));
        }
        let data = SampledData::build(dim, grid, values, support, 0.0);
        Self::analytic(dim, GeneratorKind::GridSampled(Arc::new(data)))
    }

    /// Grid-sampled generator whose transform is the given spectrum.
    ///
    /// Space samples are obtained from the periodized spectrum
    /// `Σ_n F(t + n/h)`, so compactly supported functions are sampled exactly
    /// up to the truncation of that sum.
    pub fn from_spectrum<F>(dim: usize, grid: &GridSpec, spectrum: F, support: Option<Support>) -> Result<Warned<Self>>
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        check_dim(dim)?;
        grid.validate()?;
        let pts = freq_points(grid, dim);
        let base: Vec<Complex64> = pts.par_iter().map(|t| spectrum(&t[..dim])).collect();
        let scale = base.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let period = 1.0 / grid.h;
        let cap: i64 = if dim == 1 { 4096 } else { 8 };
        let fr = grid.freq_radius;
        let summed: Vec<(Complex64, f64, f64)> = pts
            .par_iter()
            .zip(base.par_iter())
            .map(|(t, &f0)| {
                let mut acc = f0;
                let mut e_out = 0.0;
                let mut e_in = 0.0;
                if t[..dim].iter().any(|a| a.abs() >= fr) {
                    e_out += f0.norm_sqr();
                } else {
                    e_in += f0.norm_sqr();
                }
                let mut quiet = 0;
                let mut mid = Complex64::default();
                let mut last = Complex64::default();
                for shell in 1..=cap {
                    let mut s_abs = 0.0;
                    let mut s_sum = Complex64::default();
                    let mut visit = |n: [i64; 2]| {
                        let p = [t[0] + n[0] as f64 * period, t[1] + n[1] as f64 * period];
                        let v = spectrum(&p[..dim]);
                        acc += v;
                        e_out += v.norm_sqr();
                        s_abs += v.norm();
                        s_sum += v;
                    };
                    if dim == 1 {
                        visit([shell, 0]);
                        visit([-shell, 0]);
                    } else {
                        for a in -shell..=shell {
                            for b in -shell..=shell {
                                if a.abs().max(b.abs()) == shell {
                                    visit([a, b]);
                                }
                            }
                        }
                    }
                    if shell == cap / 2 {
                        mid = s_sum;
                    }
                    last = s_sum;
                    if s_abs <= 1e-17 * scale {
                        quiet += 1;
                        if quiet >= 2 {
                            last = Complex64::default();
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
                if dim == 1 {
                    acc += power_tail(mid, last, cap);
                }
                (acc, e_in, e_out)
            })
            .collect();
        let (e_in, e_out) = summed.iter().fold((0.0, 0.0), |(a, b), s| (a + s.1, b + s.2));
        let alias = if e_in + e_out > 0.0 { e_out / (e_in + e_out) } else { 0.0 };
        let periodized: Vec<Complex64> = summed.iter().map(|s| s.0).collect();
        let values = idft(&periodized, grid, dim);
        let data = SampledData::build(dim, *grid, values, support, alias);
        let mut warnings = Vec::new();
        if data.alias_fraction > 1e-6 {
            warnings.push(Warning::Aliasing { fraction: data.alias_fraction });
        }
        let g = Self::analytic(dim, GeneratorKind::GridSampled(Arc::new(data)))?;
        Ok(Warned::new(g, warnings))
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.kind
    }

    pub fn shift(&self) -> &[f64] {
        &self.shift[..self.dim]
    }

    pub fn amplitude(&self) -> Complex64 {
        self.scale
    }

    /// `φ(· − x0)`.
    pub fn shifted(&self, x0: &[f64]) -> Self {
        let mut g = self.clone();
        for (a, b) in g.shift.iter_mut().zip(x0) {
            *a += b;
        }
        g
    }

    /// `a · φ`.
    pub fn scaled(&self, a: Complex64) -> Self {
        let mut g = self.clone();
        g.scale *= a;
        g
    }

    pub fn is_zero(&self) -> bool {
        self.scale == Complex64::default()
    }

    /// Kinds whose space form is real analytic.
    pub fn is_real_analytic(&self) -> bool {
        matches!(self.kind, GeneratorKind::Gaussian { .. } | GeneratorKind::BandLimited { .. })
    }

    /// ℓ∞ ball containing the support, when compact.
    pub fn support(&self) -> Option<Support> {
        let base = match &self.kind {
            GeneratorKind::BSpline { order } => Some(Support::centered(*order as f64 / 2.0)),
            GeneratorKind::GridSampled(s) => Some(s.support.unwrap_or(Support::centered(s.grid.box_radius))),
            _ => None,
        };
        base.map(|s| Support { center: [s.center[0] + self.shift[0], s.center[1] + self.shift[1]], radius: s.radius })
    }

    pub fn sampled(&self) -> Option<&SampledData> {
        match &self.kind {
            GeneratorKind::GridSampled(s) => Some(s),
            _ => None,
        }
    }

    fn base_eval(&self, y: &[f64]) -> Complex64 {
        match &self.kind {
            GeneratorKind::Gaussian { sigma } => {
                let r2: f64 = y.iter().map(|v| v * v).sum();
                Complex64::new((-PI * r2 / (sigma * sigma)).exp(), 0.0)
            }
            GeneratorKind::BSpline { order } => Complex64::new(y.iter().map(|&v| bspline_1d(*order, v)).product(), 0.0),
            GeneratorKind::BandLimited { cutoff } => Complex64::new(y.iter().map(|&v| band_1d(*cutoff, v)).product(), 0.0),
            GeneratorKind::GridSampled(s) => s.eval(self.dim, y),
        }
    }

    fn base_fourier(&self, t: &[f64]) -> Complex64 {
        match &self.kind {
            GeneratorKind::Gaussian { sigma } => {
                let r2: f64 = t.iter().map(|v| v * v).sum();
                Complex64::new(sigma.powi(self.dim as i32) * (-PI * sigma * sigma * r2).exp(), 0.0)
            }
            GeneratorKind::BSpline { order } => {
                Complex64::new(t.iter().map(|&v| sinc(v).powi(*order as i32)).product(), 0.0)
            }
            GeneratorKind::BandLimited { cutoff } => {
                Complex64::new(t.iter().map(|&v| band_hat_1d(*cutoff, v)).product(), 0.0)
            }
            GeneratorKind::GridSampled(s) => s.fourier(self.dim, t),
        }
    }
}

impl Spectral for Generator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Complex64 {
        if self.is_zero() {
            return Complex64::default();
        }
        let y = [x[0] - self.shift[0], x.get(1).copied().unwrap_or(0.0) - self.shift[1]];
        self.scale * self.base_eval(&y[..self.dim])
    }

    fn fourier(&self, t: &[f64]) -> Complex64 {
        if self.is_zero() {
            return Complex64::default();
        }
        let mut v = self.scale * self.base_fourier(t);
        if self.shift != [0.0; 2] {
            v *= character(&self.shift[..self.dim], t);
        }
        v
    }

    fn alias_fraction(&self) -> f64 {
        self.sampled().map_or(0.0, |s| s.alias_fraction)
    }
}
