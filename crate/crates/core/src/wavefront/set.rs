use serde::{Deserialize, Serialize};

use super::cone::{Cone, ConeJson};
use crate::error::{Error, Result};

const BASE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct WFItem {
    pub base: [f64; 2],
    pub cone: Cone,
    /// Stands for `{(base + k, ξ) : k ∈ ℤ^d}`.
    pub periodic: bool,
}

/// Finite description of a wave-front bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetJson", into = "SetJson")]
pub struct WFSet {
    dim: usize,
    items: Vec<WFItem>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemJson {
    base: Vec<f64>,
    cone: ConeJson,
    #[serde(default)]
    periodic: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetJson {
    dim: usize,
    items: Vec<ItemJson>,
}

impl TryFrom<SetJson> for WFSet {
    type Error = Error;

    fn try_from(j: SetJson) -> Result<Self> {
        let mut items = Vec::with_capacity(j.items.len());
        for it in j.items {
            if it.base.len() != j.dim {
                return Err(Error::dim(j.dim, it.base.len()));
            }
            let cone = it.cone.to_cone(j.dim)?;
            items.push(WFItem { base: pad(&it.base), cone, periodic: it.periodic });
        }
        WFSet::new(j.dim, items)
    }
}

impl From<WFSet> for SetJson {
    fn from(w: WFSet) -> Self {
        SetJson {
            dim: w.dim,
            items: w
                .items
                .iter()
                .map(|it| ItemJson { base: it.base[..w.dim].to_vec(), cone: ConeJson::from_cone(&it.cone), periodic: it.periodic })
                .collect(),
        }
    }
}

fn pad(x: &[f64]) -> [f64; 2] {
    [x[0], x.get(1).copied().unwrap_or(0.0)]
}

fn reduce(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r > 1.0 - 1e-12 {
        0.0
    } else {
        r
    }
}

fn near_integer(x: f64) -> Option<i64> {
    let k = x.round();
    ((x - k).abs() <= BASE_TOL).then_some(k as i64)
}

impl WFSet {
    pub fn new(dim: usize, items: Vec<WFItem>) -> Result<Self> {
        crate::lattice::check_dim(dim)?;
        for it in &items {
            if it.cone.dim() != dim {
                return Err(Error::dim(dim, it.cone.dim()));
            }
            if it.base.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput("non-finite base point".into()));
            }
        }
        Ok(Self { dim, items }.canonicalize())
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, items: Vec::new() }
    }

    /// Single item at `base`.
    pub fn point(base: &[f64], cone: Cone) -> Result<Self> {
        Self::new(base.len(), vec![WFItem { base: pad(base), cone, periodic: false }])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn items(&self) -> &[WFItem] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Reduce periodic bases to `[0,1)^d`, merge cones at equal bases, sort, and drop empty cones.
    pub fn canonicalize(mut self) -> Self {
        for it in &mut self.items {
            if it.periodic {
                for v in &mut it.base[..self.dim] {
                    *v = reduce(*v);
                }
            }
            if self.dim == 1 {
                it.base[1] = 0.0;
            }
        }
        self.items.retain(|it| !it.cone.is_empty());
        self.items.sort_by(|a, b| {
            a.periodic.cmp(&b.periodic).then(a.base[0].total_cmp(&b.base[0])).then(a.base[1].total_cmp(&b.base[1]))
        });
        let mut out: Vec<WFItem> = Vec::new();
        for it in self.items {
            match out.last_mut() {
                Some(l)
                    if l.periodic == it.periodic
                        && (l.base[0] - it.base[0]).abs() <= BASE_TOL
                        && (l.base[1] - it.base[1]).abs() <= BASE_TOL =>
                {
                    l.cone = l.cone.union(&it.cone);
                }
                _ => out.push(it),
            }
        }
        Self { dim: self.dim, items: out }
    }

    fn union(dim: usize, parts: impl IntoIterator<Item = WFItem>) -> Self {
        Self { dim, items: parts.into_iter().collect() }.canonicalize()
    }
}

fn same_dim(a: &WFSet, b: &WFSet) -> Result<()> {
    if a.dim != b.dim {
        Err(Error::dim(a.dim, b.dim))
    } else {
        Ok(())
    }
}

/// `{(x + y, ξ) : (x, ξ) ∈ A, (y, ξ) ∈ B}`.
pub fn wf_conv_bound(a: &WFSet, b: &WFSet) -> Result<WFSet> {
    same_dim(a, b)?;
    let mut out = Vec::new();
    for x in &a.items {
        for y in &b.items {
            let cone = x.cone.intersect(&y.cone);
            if !cone.is_empty() {
                out.push(WFItem { base: [x.base[0] + y.base[0], x.base[1] + y.base[1]], cone, periodic: x.periodic || y.periodic });
            }
        }
    }
    Ok(WFSet::union(a.dim, out))
}

/// Base point shared by two items, with its periodic flag.
fn common_base(x: &WFItem, y: &WFItem, dim: usize) -> Option<([f64; 2], bool)> {
    let diff = [y.base[0] - x.base[0], y.base[1] - x.base[1]];
    match (x.periodic, y.periodic) {
        (false, false) => diff[..dim].iter().all(|v| v.abs() <= BASE_TOL).then_some((x.base, false)),
        (true, false) => diff[..dim].iter().all(|v| near_integer(*v).is_some()).then_some((y.base, false)),
        (false, true) | (true, true) => {
            diff[..dim].iter().all(|v| near_integer(*v).is_some()).then_some((x.base, x.periodic))
        }
    }
}

/// `{(x, ξ + η) : (x, ξ) ∈ A or ξ = 0, (x, η) ∈ B or η = 0}` without the zero direction.
///
/// Fails when some base carries `(x, ξ) ∈ A` and `(x, −ξ) ∈ B`.
pub fn wf_prod_bound(a: &WFSet, b: &WFSet) -> Result<WFSet> {
    same_dim(a, b)?;
    let d = a.dim;
    let mut out: Vec<WFItem> = a.items.iter().chain(&b.items).cloned().collect();
    for x in &a.items {
        for y in &b.items {
            if let Some((base, periodic)) = common_base(x, y, d) {
                if let Some(direction) = x.cone.antipodal_witness(&y.cone) {
                    return Err(Error::ProductUndefined { base: base[..d].to_vec(), direction });
                }
                out.push(WFItem { base, cone: x.cone.sum(&y.cone), periodic });
            }
        }
    }
    Ok(WFSet::union(d, out))
}

/// `{(x + k, ξ) : (x, ξ) ∈ A, k ∈ ℤ^d}`.
pub fn wf_shift_bound(a: &WFSet) -> WFSet {
    WFSet::union(a.dim, a.items.iter().map(|it| WFItem { periodic: true, ..it.clone() }))
}

/// Union over generator pairs of the lattice-unfolded convolution bounds.
pub fn wf_fgsi_conv_bound(phis: &[WFSet], psis: &[WFSet]) -> Result<WFSet> {
    let dim = phis.first().or(psis.first()).map_or(1, |w| w.dim);
    let mut out = Vec::new();
    for p in phis {
        for q in psis {
            out.extend(wf_shift_bound(&wf_conv_bound(p, q)?).items);
        }
    }
    for w in phis.iter().chain(psis) {
        if w.dim != dim {
            return Err(Error::dim(dim, w.dim));
        }
    }
    Ok(WFSet::union(dim, out))
}

/// Whether `(x, ξ)` lies in `W`, unfolding periodic items over `|k|∞ ≤ lattice_radius`.
pub fn wf_member(w: &WFSet, x: &[f64], xi: &[f64], lattice_radius: i64) -> bool {
    let d = w.dim;
    if x.len() != d || xi.len() != d || xi.iter().all(|v| *v == 0.0) {
        return false;
    }
    w.items.iter().any(|it| {
        if !it.cone.contains(xi) {
            return false;
        }
        (0..d).all(|i| {
            let diff = x[i] - it.base[i];
            if it.periodic {
                near_integer(diff).is_some_and(|k| k.abs() <= lattice_radius)
            } else {
                diff.abs() <= BASE_TOL
            }
        })
    })
}
