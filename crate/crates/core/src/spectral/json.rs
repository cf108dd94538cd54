use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::generator::{Generator, GeneratorKind, Support};
use super::Spectral;
use crate::error::{Error, Result};
use crate::lattice::GridSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Serialized form of a [`Generator`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<SupportSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<[f64; 2]>,
}

fn need<T>(v: Option<T>, name: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("generator kind {kind} needs field \"{name}\"")))
}

impl GeneratorSpec {
    fn bare(kind: &str, dim: usize) -> Self {
        Self {
            kind: kind.into(),
            dim,
            sigma: None,
            order: None,
            cutoff: None,
            grid: None,
            re: None,
            im: None,
            support: None,
            shift: None,
            scale: None,
        }
    }

    pub fn to_generator(&self) -> Result<Generator> {
        let d = self.dim;
        let base = match self.kind.as_str() {
            "gaussian" => Generator::gaussian(d, need(self.sigma, "sigma", "gaussian")?)?,
            "bspline" => Generator::bspline(d, need(self.order, "order", "bspline")?)?,
            "band_limited" => Generator::band_limited(d, need(self.cutoff, "cutoff", "band_limited")?)?,
            "grid_sampled" => {
                let grid = need(self.grid, "grid", "grid_sampled")?;
                let re = need(self.re.as_ref(), "re", "grid_sampled")?;
                let zeros;
                let im = match &self.im {
                    Some(v) => v,
                    None => {
                        zeros = vec![0.0; re.len()];
                        &zeros
                    }
                };
                if re.len() != im.len() {
                    return Err(Error::InvalidInput("re and im lengths differ".into()));
                }
                let values = re.iter().zip(im).map(|(a, b)| Complex64::new(*a, *b)).collect();
                let support = match &self.support {
                    Some(s) => {
                        if s.center.len() != d {
                            return Err(Error::dim(d, s.center.len()));
                        }
                        let mut c = [0.0; 2];
                        c[..d].copy_from_slice(&s.center);
                        Some(Support { center: c, radius: s.radius })
                    }
                    None => None,
                };
                Generator::grid_sampled(d, grid, values, support)?
            }
            other => return Err(Error::InvalidInput(format!("unknown generator kind \"{other}\""))),
        };
        let mut g = base;
        if let Some(sh) = &self.shift {
            if sh.len() != d {
                return Err(Error::dim(d, sh.len()));
            }
            g = g.shifted(sh);
        }
        if let Some([re, im]) = self.scale {
            g = g.scaled(Complex64::new(re, im));
        }
        Ok(g)
    }
}

impl From<&Generator> for GeneratorSpec {
    fn from(g: &Generator) -> Self {
        let d = g.dim();
        let mut spec = match g.kind() {
            GeneratorKind::Gaussian { sigma } => Self { sigma: Some(*sigma), ..Self::bare("gaussian", d) },
            GeneratorKind::BSpline { order } => Self { order: Some(*order), ..Self::bare("bspline", d) },
            GeneratorKind::BandLimited { cutoff } => Self { cutoff: Some(*cutoff), ..Self::bare("band_limited", d) },
            GeneratorKind::GridSampled(s) => Self {
                grid: Some(s.grid),
                re: Some(s.values.iter().map(|v| v.re).collect()),
                im: Some(s.values.iter().map(|v| v.im).collect()),
                support: s.support.map(|sp| SupportSpec { center: sp.center[..d].to_vec(), radius: sp.radius }),
                ..Self::bare("grid_sampled", d)
            },
        };
        if g.shift().iter().any(|v| *v != 0.0) {
            spec.shift = Some(g.shift().to_vec());
        }
        let a = g.amplitude();
        if a != Complex64::new(1.0, 0.0) {
            spec.scale = Some([a.re, a.im]);
        }
        spec
    }
}

impl From<Generator> for GeneratorSpec {
    fn from(g: Generator) -> Self {
        (&g).into()
    }
}

impl TryFrom<GeneratorSpec> for Generator {
    type Error = Error;

    fn try_from(s: GeneratorSpec) -> Result<Self> {
        s.to_generator()
    }
}
