use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Rule};
use crate::lattice::{character, check_dim, GridSpec};
use crate::spectral::{Generator, SIFunction, Spectral};
use crate::warn::{push_unique, Warned, Warning};

type SymbolFn = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum MultiplierKind {
    Constant(Complex64),
    /// `e^{−2πi⟨t,h⟩}`, i.e. translation by `h`.
    Phase { shift: [f64; 2] },
    /// `−i t_j / |t|`, zero at the origin.
    Riesz { component: usize },
    /// `μ_{−order}(t)`.
    Bessel { order: f64 },
    /// `t_j / μ_1(t)`.
    Normalized { component: usize },
    /// `t_j^power`; unbounded for `power >= 1`.
    Monomial { component: usize, power: u32 },
    Custom(SymbolFn),
}

impl fmt::Debug for MultiplierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::Phase { shift } => write!(f, "Phase({shift:?})"),
            Self::Riesz { component } => write!(f, "Riesz({component})"),
            Self::Bessel { order } => write!(f, "Bessel({order})"),
            Self::Normalized { component } => write!(f, "Normalized({component})"),
            Self::Monomial { component, power } => write!(f, "Monomial({component}, {power})"),
            Self::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Bounded function of frequency acting as `F(T_a f) = a f̂`.
#[derive(Debug, Clone, Deserialize)]
#[serde(try_from = "SymbolJson")]
pub struct MultiplierSymbol {
    dim: usize,
    kind: MultiplierKind,
    /// Claimed smoothness; informational only.
    pub smoothness: u32,
}

impl MultiplierSymbol {
    pub fn new(dim: usize, kind: MultiplierKind) -> Result<Self> {
        check_dim(dim)?;
        match &kind {
            MultiplierKind::Riesz { component } | MultiplierKind::Normalized { component } | MultiplierKind::Monomial { component, .. }
                if *component >= dim =>
            {
                return Err(Error::InvalidInput(format!("component {component} out of range for d = {dim}")));
            }
            MultiplierKind::Bessel { order } if !(*order >= 0.0) => {
                return Err(Error::InvalidInput("Bessel potential order must be >= 0".into()));
            }
            _ => {}
        }
        Ok(Self { dim, kind, smoothness: (dim / 2 + 1) as u32 })
    }

    pub fn constant(dim: usize, c: Complex64) -> Result<Self> {
        Self::new(dim, MultiplierKind::Constant(c))
    }

    pub fn phase(shift: &[f64]) -> Result<Self> {
        let mut s = [0.0; 2];
        s[..shift.len().min(2)].copy_from_slice(&shift[..shift.len().min(2)]);
        Self::new(shift.len(), MultiplierKind::Phase { shift: s })
    }

    pub fn custom(dim: usize, f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static) -> Result<Self> {
        Self::new(dim, MultiplierKind::Custom(Arc::new(f)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &MultiplierKind {
        &self.kind
    }

    pub fn eval(&self, t: &[f64]) -> Complex64 {
        let r2: f64 = t.iter().map(|v| v * v).sum();
        match &self.kind {
            MultiplierKind::Constant(c) => *c,
            MultiplierKind::Phase { shift } => character(&shift[..self.dim], t),
            MultiplierKind::Riesz { component } => {
                if r2 == 0.0 {
                    Complex64::default()
                } else {
                    Complex64::new(0.0, -t[*component] / r2.sqrt())
                }
            }
            MultiplierKind::Bessel { order } => Complex64::new((1.0 + r2).powf(-order / 2.0), 0.0),
            MultiplierKind::Normalized { component } => Complex64::new(t[*component] / (1.0 + r2).sqrt(), 0.0),
            MultiplierKind::Monomial { component, power } => Complex64::new(t[*component].powi(*power as i32), 0.0),
            MultiplierKind::Custom(f) => f(t),
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SymbolJson {
    Constant { dim: usize, re: f64, #[serde(default)] im: f64 },
    Phase { shift: Vec<f64> },
    Riesz { dim: usize, component: usize },
    Bessel { dim: usize, order: f64 },
    Normalized { dim: usize, component: usize },
    Monomial { dim: usize, component: usize, power: u32 },
}

/// JSON form, e.g. `{"kind":"phase","shift":[0.25]}`.
impl TryFrom<SymbolJson> for MultiplierSymbol {
    type Error = Error;

    fn try_from(j: SymbolJson) -> Result<Self> {
        match j {
            SymbolJson::Constant { dim, re, im } => Self::constant(dim, Complex64::new(re, im)),
            SymbolJson::Phase { shift } => Self::phase(&shift),
            SymbolJson::Riesz { dim, component } => Self::new(dim, MultiplierKind::Riesz { component }),
            SymbolJson::Bessel { dim, order } => Self::new(dim, MultiplierKind::Bessel { order }),
            SymbolJson::Normalized { dim, component } => Self::new(dim, MultiplierKind::Normalized { component }),
            SymbolJson::Monomial { dim, component, power } => Self::new(dim, MultiplierKind::Monomial { component, power }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MikhlinConstant {
    pub alpha: Vec<u32>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MikhlinReport {
    pub verdict: bool,
    /// `C_α = sup |t|^{|α|} |∂^α a(t)|` over the ladder, `α = 0` first.
    pub constants: Vec<MikhlinConstant>,
}

/// Values above this are treated as overflow.
pub const MIKHLIN_OVERFLOW: f64 = 1e8;
const RUNGS_PER_OCTAVE: i32 = 4;
const OCTAVES: i32 = 12;

fn multi_indices(dim: usize) -> Vec<Vec<u32>> {
    let top = (dim / 2 + 1) as u32;
    if dim == 1 {
        (0..=top).map(|a| vec![a]).collect()
    } else {
        let mut out = Vec::new();
        for total in 0..=top {
            for a in (0..=total).rev() {
                out.push(vec![a, total - a]);
            }
        }
        out
    }
}

fn directions(dim: usize) -> Vec<[f64; 2]> {
    if dim == 1 {
        vec![[1.0, 0.0], [-1.0, 0.0]]
    } else {
        (0..16)
            .map(|i| {
                let th = (i as f64 + 0.5) * std::f64::consts::PI / 8.0;
                [th.cos(), th.sin()]
            })
            .collect()
    }
}

fn partial(a: &MultiplierSymbol, t: [f64; 2], alpha: &[u32], rho: f64) -> f64 {
    let d = a.dim;
    let f = |p: [f64; 2]| a.eval(&p[..d]);
    let total: u32 = alpha.iter().sum();
    let e = |i: usize| if i == 0 { [1.0, 0.0] } else { [0.0, 1.0] };
    let at = |p: [f64; 2], v: [f64; 2], c: f64| [p[0] + c * v[0], p[1] + c * v[1]];
    match total {
        0 => f(t).norm(),
        1 => {
            let v = e(alpha.iter().position(|&x| x == 1).unwrap());
            let h = 1e-4 * rho;
            ((f(at(t, v, h)) - f(at(t, v, -h))) / (2.0 * h)).norm()
        }
        _ => {
            let h = 1e-3 * rho;
            if let Some(i) = alpha.iter().position(|&x| x == 2) {
                let v = e(i);
                ((f(at(t, v, h)) - 2.0 * f(t) + f(at(t, v, -h))) / (h * h)).norm()
            } else {
                let (u, v) = (e(0), e(1));
                let pp = f(at(at(t, u, h), v, h));
                let pm = f(at(at(t, u, h), v, -h));
                let mp = f(at(at(t, u, -h), v, h));
                let mm = f(at(at(t, u, -h), v, -h));
                ((pp - pm - mp + mm) / (4.0 * h * h)).norm()
            }
        }
    }
}

fn grows(profile: &[f64]) -> bool {
    let span = (3 * RUNGS_PER_OCTAVE) as usize;
    let rising = |hi: f64, lo: f64| hi > 1e-300 && (lo <= 1e-300 || (hi / lo).log2() / 3.0 > 0.25);
    let n = profile.len();
    rising(profile[n - 1], profile[n - 1 - span]) || rising(profile[0], profile[span])
}

/// Finite-difference estimate of the Mikhlin constants on the ladder `|t| = 2^{j/4}`, `|j| ≤ 48`.
///
/// The verdict fails when `a` or some `|t|^{|α|} ∂^α a` exceeds the overflow
/// threshold or keeps growing at either end of the ladder.
pub fn mikhlin_check(a: &MultiplierSymbol, _grid: &GridSpec) -> MikhlinReport {
    let dirs = directions(a.dim);
    let rungs: Vec<f64> = (-OCTAVES * RUNGS_PER_OCTAVE..=OCTAVES * RUNGS_PER_OCTAVE)
        .map(|j| 2f64.powf(j as f64 / RUNGS_PER_OCTAVE as f64))
        .collect();
    let mut verdict = true;
    let constants = multi_indices(a.dim)
        .into_iter()
        .map(|alpha| {
            let total: u32 = alpha.iter().sum();
            let profile: Vec<f64> = rungs
                .par_iter()
                .map(|&rho| {
                    dirs.iter()
                        .map(|u| rho.powi(total as i32) * partial(a, [rho * u[0], rho * u[1]], &alpha, rho))
                        .fold(0.0, f64::max)
                })
                .collect();
            let value = profile.iter().cloned().fold(0.0, f64::max);
            if !(value.is_finite() && value <= MIKHLIN_OVERFLOW) || grows(&profile) {
                verdict = false;
            }
            MikhlinConstant { alpha, value }
        })
        .collect();
    MikhlinReport { verdict, constants }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MikhlinPolicy {
    #[default]
    Enforce,
    /// Apply anyway and attach a warning.
    WarnOnly,
}

/// `T_a f` with generators `F^{−1}(a φ̂_i)` and the coefficients of `f`.
///
/// Translations (pure phases) are isometries on every `H^s` and skip the
/// derivative test; they still carry the override warning.
pub fn apply_multiplier(a: &MultiplierSymbol, f: &SIFunction, grid: &GridSpec, policy: MikhlinPolicy) -> Result<Warned<SIFunction>> {
    let d = f.generators()[0].dim();
    if a.dim != d {
        return Err(Error::dim(d, a.dim));
    }
    let mut warnings = Vec::new();
    match &a.kind {
        MultiplierKind::Phase { .. } => warnings.push(Warning::MikhlinOverride),
        MultiplierKind::Constant(_) => {}
        _ => {
            if !mikhlin_check(a, grid).verdict {
                match policy {
                    MikhlinPolicy::Enforce => {
                        return Err(Error::Precondition {
                            rule: Rule::MikhlinCondition,
                            detail: format!("symbol {:?} fails the derivative bounds", a.kind),
                        })
                    }
                    MikhlinPolicy::WarnOnly => warnings.push(Warning::MikhlinOverride),
                }
            }
        }
    }
    let mut gens = Vec::with_capacity(f.generators().len());
    for g in f.generators() {
        let out = match &a.kind {
            MultiplierKind::Constant(c) => g.scaled(*c),
            MultiplierKind::Phase { shift } => g.shifted(&shift[..d]),
            _ => Generator::from_spectrum(d, grid, |t| a.eval(t) * g.fourier(t), None)?.drain_into(&mut warnings),
        };
        gens.push(out);
    }
    let mut sink = Vec::new();
    push_unique(&mut sink, warnings);
    Ok(Warned::new(f.with_generators(gens)?, sink))
}
