use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::weight::weight_at_index;
use crate::error::{Error, Result};

/// Lattice point in ℤ^d, padded with zeros for d = 1.
pub type Key = [i64; 2];

/// Finitely supported sequence on ℤ^d, d ∈ {1, 2}.
///
/// Zero amplitudes are never stored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeqJson", into = "SeqJson")]
pub struct CoeffSeq {
    dim: usize,
    entries: BTreeMap<Key, Complex64>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    k: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct SeqJson {
    dim: usize,
    entries: Vec<EntryJson>,
}

impl TryFrom<SeqJson> for CoeffSeq {
    type Error = Error;

    fn try_from(j: SeqJson) -> Result<Self> {
        let mut out = CoeffSeq::zero(j.dim)?;
        for e in j.entries {
            if e.k.len() != j.dim {
                return Err(Error::dim(j.dim, e.k.len()));
            }
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::InvalidInput("non-finite coefficient".into()));
            }
            out.add_at(&e.k, Complex64::new(e.re, e.im));
        }
        Ok(out)
    }
}

impl From<CoeffSeq> for SeqJson {
    fn from(c: CoeffSeq) -> Self {
        SeqJson {
            dim: c.dim,
            entries: c
                .entries
                .iter()
                .map(|(k, v)| EntryJson { k: k[..c.dim].to_vec(), re: v.re, im: v.im })
                .collect(),
        }
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("dimension must be 1 or 2, got {dim}")))
    }
}

pub(crate) fn key(k: &[i64]) -> Key {
    match k.len() {
        1 => [k[0], 0],
        _ => [k[0], k[1]],
    }
}

impl CoeffSeq {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, entries: BTreeMap::new() })
    }

    /// Unit mass at `k`.
    pub fn delta(k: &[i64]) -> Result<Self> {
        Self::from_entries(k.len(), [(k.to_vec(), Complex64::new(1.0, 0.0))])
    }

    pub fn from_entries<I, K>(dim: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, Complex64)>,
        K: AsRef<[i64]>,
    {
        let mut out = Self::zero(dim)?;
        for (k, v) in it {
            let k = k.as_ref();
            if k.len() != dim {
                return Err(Error::dim(dim, k.len()));
            }
            out.add_at(k, v);
        }
        Ok(out)
    }

    /// Real-valued one-dimensional sequence from `(k, value)` pairs.
    pub fn from_real_1d(pairs: &[(i64, f64)]) -> Self {
        let mut out = Self { dim: 1, entries: BTreeMap::new() };
        for &(k, v) in pairs {
            out.add_at(&[k], Complex64::new(v, 0.0));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: &[i64]) -> Complex64 {
        self.entries.get(&key(k)).copied().unwrap_or_default()
    }

    pub fn add_at(&mut self, k: &[i64], v: Complex64) {
        debug_assert_eq!(k.len(), self.dim);
        let kk = key(k);
        let slot = self.entries.entry(kk).or_default();
        *slot += v;
        if *slot == Complex64::default() {
            self.entries.remove(&kk);
        }
    }

    /// Entries in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&[i64], Complex64)> + '_ {
        let d = self.dim;
        self.entries.iter().map(move |(k, v)| (&k[..d], *v))
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.iter().map(|(k, _)| k.to_vec()).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest ℓ∞ index magnitude on the support.
    pub fn radius(&self) -> i64 {
        self.entries.keys().map(|k| k[0].abs().max(k[1].abs())).max().unwrap_or(0)
    }

    /// Weighted norm `(Σ |c_k|^p μ_{ps}(k))^{1/p}`; `p = f64::INFINITY` gives `sup |c_k| μ_s(k)`.
    pub fn norm(&self, p: f64, s: f64) -> f64 {
        seq_norm(self, p, s)
    }

    pub fn scale(&self, a: Complex64) -> Self {
        let mut out = Self { dim: self.dim, entries: BTreeMap::new() };
        if a != Complex64::default() {
            for (k, v) in &self.entries {
                out.entries.insert(*k, v * a);
            }
        }
        out
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: Complex64, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::dim(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_at(k, a * v);
        }
        Ok(out)
    }

    /// Sequence translated by `j`: `(c(·−j))_k = c_{k−j}`.
    pub fn shifted(&self, j: &[i64]) -> Self {
        let j = key(j);
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|(k, v)| ([k[0] + j[0], k[1] + j[1]], *v)).collect(),
        }
    }

    /// Drop entries with modulus at or below `threshold`.
    pub fn chopped(&self, threshold: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().filter(|(_, v)| v.norm() > threshold).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        seq_convolve(self, other)
    }

    /// Same support and all amplitudes within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((ka, va), (kb, vb))| ka == kb && (va - vb).norm() <= tol)
    }
}

pub fn seq_norm(c: &CoeffSeq, p: f64, s: f64) -> f64 {
    assert!(p >= 1.0, "exponent must be >= 1");
    if c.is_empty() {
        return 0.0;
    }
    if p.is_infinite() {
        return c.iter().map(|(k, v)| v.norm() * weight_at_index(s, k)).fold(0.0, f64::max);
    }
    if p == 1.0 {
        return c.iter().map(|(k, v)| v.norm() * weight_at_index(s, k)).sum();
    }
    // Scale by the largest term to avoid overflow in |c|^p.
    let terms: Vec<f64> = c.iter().map(|(k, v)| v.norm() * weight_at_index(s, k)).collect();
    let m = terms.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    m * terms.iter().map(|t| (t / m).powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn seq_convolve(a: &CoeffSeq, b: &CoeffSeq) -> Result<CoeffSeq> {
    if a.dim != b.dim {
        return Err(Error::dim(a.dim, b.dim));
    }
    let mut out = CoeffSeq { dim: a.dim, entries: BTreeMap::new() };
    for (ka, va) in &a.entries {
        for (kb, vb) in &b.entries {
            let k = [ka[0] + kb[0], ka[1] + kb[1]];
            *out.entries.entry(k).or_default() += va * vb;
        }
    }
    out.entries.retain(|_, v| *v != Complex64::default());
    Ok(out)
}
