use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Rule};
use crate::lattice::{check_dim, CoeffSeq, GridSpec};
use crate::spectral::fft::space_points;
use crate::spectral::{bspline_1d, symbol_eval, Generator, SIFunction, Spectral};
use crate::warn::{Warned, Warning};

/// Bounded 1-periodic multiplier `g` with `p` bounded derivatives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PeriodicJson", into = "PeriodicJson")]
pub enum PeriodicMultiplier {
    /// `g(x) = Σ_k g_k e^{−2πi⟨k,x⟩}`; `p = None` means every derivative is bounded.
    Trig { coeffs: CoeffSeq, p: Option<u32> },
    /// `g(x) = Σ_i c_i Σ_n B(L x − i − nL)` with `B` the centered B-spline of the given degree.
    Spline { dim: usize, degree: u32, knots: usize, coeffs: Vec<f64> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum PeriodicJson {
    Trig {
        coeffs: CoeffSeq,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u32>,
    },
    Spline { dim: usize, degree: u32, knots: usize, coeffs: Vec<f64> },
}

impl TryFrom<PeriodicJson> for PeriodicMultiplier {
    type Error = Error;

    fn try_from(j: PeriodicJson) -> Result<Self> {
        match j {
            PeriodicJson::Trig { coeffs, p } => Ok(Self::trig(coeffs, p)),
            PeriodicJson::Spline { dim, degree, knots, coeffs } => Self::spline(dim, degree, knots, coeffs),
        }
    }
}

impl From<PeriodicMultiplier> for PeriodicJson {
    fn from(g: PeriodicMultiplier) -> Self {
        match g {
            PeriodicMultiplier::Trig { coeffs, p } => PeriodicJson::Trig { coeffs, p },
            PeriodicMultiplier::Spline { dim, degree, knots, coeffs } => PeriodicJson::Spline { dim, degree, knots, coeffs },
        }
    }
}

impl PeriodicMultiplier {
    pub fn trig(coeffs: CoeffSeq, p: Option<u32>) -> Self {
        Self::Trig { coeffs, p }
    }

    pub fn one(dim: usize) -> Result<Self> {
        Ok(Self::trig(CoeffSeq::delta(&vec![0; dim])?, None))
    }

    /// `cos 2πx` in d = 1.
    pub fn cos_1d() -> Self {
        Self::trig(CoeffSeq::from_real_1d(&[(-1, 0.5), (1, 0.5)]), None)
    }

    pub fn spline(dim: usize, degree: u32, knots: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if !(1..=23).contains(&degree) {
            return Err(Error::InvalidInput("spline degree must lie in 1..=23".into()));
        }
        if knots == 0 || coeffs.len() != knots.pow(dim as u32) {
            return Err(Error::InvalidInput(format!("expected {} spline coefficients", knots.pow(dim as u32))));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite spline coefficient".into()));
        }
        Ok(Self::Spline { dim, degree, knots, coeffs })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Trig { coeffs, .. } => coeffs.dim(),
            Self::Spline { dim, .. } => *dim,
        }
    }

    /// Number of bounded derivatives; a spline of degree `q` counts `q − 1`.
    pub fn smoothness(&self) -> Option<u32> {
        match self {
            Self::Trig { p, .. } => *p,
            Self::Spline { degree, .. } => Some(degree - 1),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match self {
            Self::Trig { coeffs, .. } => symbol_eval(coeffs, x),
            Self::Spline { dim, degree, knots, coeffs } => {
                let l = *knots;
                let axis = |xa: f64, i: usize| periodic_bspline(*degree + 1, l, xa, i);
                let v = if *dim == 1 {
                    (0..l).map(|i| coeffs[i] * axis(x[0], i)).sum()
                } else {
                    let ax: Vec<f64> = (0..l).map(|i| axis(x[0], i)).collect();
                    let ay: Vec<f64> = (0..l).map(|i| axis(x[1], i)).collect();
                    (0..l * l).map(|ij| coeffs[ij] * ax[ij / l] * ay[ij % l]).sum()
                };
                Complex64::new(v, 0.0)
            }
        }
    }

    fn as_constant(&self) -> Option<Complex64> {
        match self {
            Self::Trig { coeffs, .. } if coeffs.len() <= 1 && coeffs.iter().all(|(k, _)| k.iter().all(|&a| a == 0)) => {
                Some(coeffs.iter().map(|(_, v)| v).sum())
            }
            _ => None,
        }
    }
}

fn periodic_bspline(order: u32, l: usize, x: f64, i: usize) -> f64 {
    let lf = l as f64;
    let y = (lf * x - i as f64).rem_euclid(lf);
    let reach = (order as f64 / 2.0 / lf).ceil() as i64 + 1;
    (-reach..=reach).map(|n| bspline_1d(order, y + n as f64 * lf)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductPath {
    /// Pointwise product of grid samples.
    #[default]
    Space,
    /// `(gφ)^(t) = Σ_k g_k φ̂(t + k)`; trigonometric `g` only.
    Frequency,
}

/// `g f` as an element of `V_{s₀}(gφ_1, …, gφ_m)` with `s₀ = min{p, s}`.
pub fn periodic_multiply(g: &PeriodicMultiplier, f: &SIFunction, grid: &GridSpec) -> Result<Warned<SIFunction>> {
    periodic_multiply_with(g, f, grid, ProductPath::Space)
}

pub fn periodic_multiply_with(g: &PeriodicMultiplier, f: &SIFunction, grid: &GridSpec, path: ProductPath) -> Result<Warned<SIFunction>> {
    let s = f.order();
    if s < 0.0 || s.fract() != 0.0 {
        return Err(Error::Precondition { rule: Rule::PeriodicProduct, detail: format!("order s = {s} is not a non-negative integer") });
    }
    let d = f.generators()[0].dim();
    if g.dim() != d {
        return Err(Error::dim(d, g.dim()));
    }
    grid.validate()?;
    let order = g.smoothness().map_or(s, |p| s.min(p as f64));
    let mut warnings: Vec<Warning> = Vec::new();
    let mut gens = Vec::with_capacity(f.generators().len());
    for phi in f.generators() {
        let out = if let Some(c) = g.as_constant() {
            phi.scaled(c)
        } else {
            match (path, g) {
                (ProductPath::Space, _) => {
                    let vals: Vec<Complex64> = space_points(grid, d).par_iter().map(|x| g.eval(&x[..d]) * phi.eval(&x[..d])).collect();
                    Generator::grid_sampled(d, *grid, vals, phi.support())?
                }
                (ProductPath::Frequency, PeriodicMultiplier::Trig { coeffs, .. }) => {
                    let terms: Vec<([f64; 2], Complex64)> = coeffs
                        .iter()
                        .map(|(k, v)| ([k[0] as f64, k.get(1).map_or(0.0, |&b| b as f64)], v))
                        .collect();
                    let spec = |t: &[f64]| -> Complex64 {
                        terms
                            .iter()
                            .map(|(k, v)| {
                                let p = [t[0] + k[0], t.get(1).map_or(0.0, |b| b + k[1])];
                                v * phi.fourier(&p[..d])
                            })
                            .sum()
                    };
                    Generator::from_spectrum(d, grid, spec, phi.support())?.drain_into(&mut warnings)
                }
                (ProductPath::Frequency, PeriodicMultiplier::Spline { .. }) => {
                    return Err(Error::InvalidInput("the frequency path needs a trigonometric multiplier".into()))
                }
            }
        };
        gens.push(out);
    }
    Ok(Warned::new(SIFunction::new(gens, f.coeffs().to_vec(), order)?, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_is_identity() {
        let f = SIFunction::single(Generator::hat(1), 2.0);
        let out = periodic_multiply(&PeriodicMultiplier::one(1).unwrap(), &f, &GridSpec::default_for(1)).unwrap().value;
        assert_eq!(out, f);
    }

    #[test]
    fn order_bookkeeping() {
        let g = GridSpec::default_for(1);
        let f = SIFunction::single(Generator::hat(1), 2.0);
        for (p, want) in [(3, 2.0), (1, 1.0)] {
            let m = PeriodicMultiplier::trig(CoeffSeq::from_real_1d(&[(0, 1.0), (2, 0.5)]), Some(p));
            assert_eq!(periodic_multiply(&m, &f, &g).unwrap().value.order(), want);
        }
        let e = periodic_multiply(&PeriodicMultiplier::cos_1d(), &f.clone().with_order(1.5), &g).unwrap_err();
        assert_eq!(e.rule(), Some(Rule::PeriodicProduct));
    }

    #[test]
    fn cos_hat_paths_agree() {
        let grid = GridSpec::default_for(1);
        let f = SIFunction::single(Generator::hat(1), 0.0);
        let g = PeriodicMultiplier::cos_1d();
        let a = periodic_multiply_with(&g, &f, &grid, ProductPath::Space).unwrap().value;
        let b = periodic_multiply_with(&g, &f, &grid, ProductPath::Frequency).unwrap().value;
        for j in 0..grid.n() {
            let x = [grid.x(j)];
            let want = (2.0 * std::f64::consts::PI * x[0]).cos() * f.eval(&x).re;
            assert!((a.eval(&x).re - want).abs() < 1e-8);
            assert!((a.eval(&x) - b.eval(&x)).norm() < 1e-8);
        }
    }

    #[test]
    fn spline_partition_of_unity() {
        let g = PeriodicMultiplier::spline(1, 3, 5, vec![1.0; 5]).unwrap();
        assert_eq!(g.smoothness(), Some(2));
        for x in [0.0, 0.13, 0.5, 0.99, -2.3] {
            assert!((g.eval(&[x]).re - 1.0).abs() < 1e-12);
        }
        let g2 = PeriodicMultiplier::spline(2, 2, 3, vec![1.0, 2.0, 0.0, 0.5, 0.0, 1.0, 3.0, 0.0, 0.0]).unwrap();
        let a = g2.eval(&[0.2, 0.7]);
        assert!((a - g2.eval(&[1.2, -0.3])).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let g = PeriodicMultiplier::spline(1, 2, 4, vec![1.0, 0.0, 2.0, 0.0]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<PeriodicMultiplier>(&s).unwrap(), g);
        let t: PeriodicMultiplier =
            serde_json::from_str(r#"{"kind":"trig","coeffs":{"dim":1,"entries":[{"k":[1],"re":0.5,"im":0.0}]}}"#).unwrap();
        assert_eq!(t.smoothness(), None);
    }
}
