use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;

/// Closed arc `[start, start + len]` in degrees, `start ∈ [0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularInterval {
    pub start: f64,
    pub len: f64,
}

impl AngularInterval {
    pub fn end(&self) -> f64 {
        self.start + self.len
    }

    pub fn contains(&self, deg: f64) -> bool {
        let off = (deg - self.start).rem_euclid(360.0);
        off <= self.len + EPS || off >= 360.0 - EPS
    }

    fn is_full(&self) -> bool {
        self.len >= 360.0 - EPS
    }
}

/// Set of directions in `ℝ^d ∖ {0}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Cone {
    D1 { plus: bool, minus: bool },
    /// Disjoint, sorted arcs.
    D2 { arcs: Vec<AngularInterval> },
}

/// Angle of a nonzero planar vector in `[0, 360)`.
pub fn angle_deg(xi: &[f64]) -> f64 {
    let a = xi[1].atan2(xi[0]).to_degrees().rem_euclid(360.0);
    if a >= 360.0 {
        0.0
    } else {
        a
    }
}

fn normalize_arcs(mut arcs: Vec<AngularInterval>) -> Vec<AngularInterval> {
    if arcs.iter().any(|a| a.is_full()) {
        return vec![AngularInterval { start: 0.0, len: 360.0 }];
    }
    arcs.sort_by(|a, b| a.start.total_cmp(&b.start));
    let mut out: Vec<AngularInterval> = Vec::new();
    for a in arcs {
        match out.last_mut() {
            Some(l) if a.start <= l.end() + EPS => {
                let end = l.end().max(a.end());
                l.len = end - l.start;
            }
            _ => out.push(a),
        }
    }
    // the last arc may wrap past 360 onto the first ones
    while out.len() > 1 {
        let last = *out.last().unwrap();
        let first = out[0];
        if last.end() - 360.0 >= first.start - EPS {
            let end = (last.end() - 360.0).max(first.end());
            out.remove(0);
            let l = out.last_mut().unwrap();
            l.len = end + 360.0 - l.start;
        } else {
            break;
        }
    }
    if out.iter().any(|a| a.is_full()) {
        return vec![AngularInterval { start: 0.0, len: 360.0 }];
    }
    out
}

fn arc(start: f64, len: f64) -> AngularInterval {
    let mut s = start.rem_euclid(360.0);
    if s >= 360.0 - 1e-12 {
        s = 0.0;
    }
    AngularInterval { start: s, len: len.min(360.0) }
}

impl Cone {
    pub fn full(dim: usize) -> Self {
        if dim == 1 {
            Cone::D1 { plus: true, minus: true }
        } else {
            Cone::D2 { arcs: vec![AngularInterval { start: 0.0, len: 360.0 }] }
        }
    }

    pub fn empty(dim: usize) -> Self {
        if dim == 1 {
            Cone::D1 { plus: false, minus: false }
        } else {
            Cone::D2 { arcs: Vec::new() }
        }
    }

    pub fn plus() -> Self {
        Cone::D1 { plus: true, minus: false }
    }

    pub fn minus() -> Self {
        Cone::D1 { plus: false, minus: true }
    }

    /// Union of closed arcs `[a, b]` in degrees, running counterclockwise from `a` to `b`.
    pub fn arcs(intervals: &[[f64; 2]]) -> Result<Self> {
        let mut v = Vec::new();
        for &[a, b] in intervals {
            if !(a.is_finite() && b.is_finite()) {
                return Err(Error::InvalidInput("non-finite cone endpoint".into()));
            }
            let len = if b - a >= 360.0 { 360.0 } else { (b - a).rem_euclid(360.0) };
            v.push(arc(a, len));
        }
        Ok(Cone::D2 { arcs: normalize_arcs(v) })
    }

    pub fn dim(&self) -> usize {
        match self {
            Cone::D1 { .. } => 1,
            Cone::D2 { .. } => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Cone::D1 { plus, minus } => !plus && !minus,
            Cone::D2 { arcs } => arcs.is_empty(),
        }
    }

    pub fn intervals(&self) -> &[AngularInterval] {
        match self {
            Cone::D1 { .. } => &[],
            Cone::D2 { arcs } => arcs,
        }
    }

    /// Membership of the direction of a nonzero vector `xi`.
    pub fn contains(&self, xi: &[f64]) -> bool {
        match self {
            Cone::D1 { plus, minus } => (xi[0] > 0.0 && *plus) || (xi[0] < 0.0 && *minus),
            Cone::D2 { arcs } => {
                if xi[0] == 0.0 && xi[1] == 0.0 {
                    return false;
                }
                let a = angle_deg(xi);
                arcs.iter().any(|r| r.contains(a))
            }
        }
    }

    pub fn union(&self, other: &Cone) -> Cone {
        match (self, other) {
            (Cone::D1 { plus: a, minus: b }, Cone::D1 { plus: c, minus: d }) => Cone::D1 { plus: *a || *c, minus: *b || *d },
            (Cone::D2 { arcs: a }, Cone::D2 { arcs: b }) => Cone::D2 { arcs: normalize_arcs(a.iter().chain(b).copied().collect()) },
            _ => panic!("cone dimension mismatch"),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        match (self, other) {
            (Cone::D1 { plus: a, minus: b }, Cone::D1 { plus: c, minus: d }) => Cone::D1 { plus: *a && *c, minus: *b && *d },
            (Cone::D2 { arcs: a }, Cone::D2 { arcs: b }) => {
                let mut out = Vec::new();
                for x in a {
                    for y in b {
                        for m in [-360.0, 0.0, 360.0] {
                            let lo = x.start.max(y.start + m);
                            let hi = x.end().min(y.end() + m);
                            if lo <= hi + EPS {
                                out.push(arc(lo, (hi - lo).max(0.0)));
                            }
                        }
                    }
                }
                Cone::D2 { arcs: normalize_arcs(out) }
            }
            _ => panic!("cone dimension mismatch"),
        }
    }

    /// `{−ξ : ξ ∈ self}`.
    pub fn antipode(&self) -> Cone {
        match self {
            Cone::D1 { plus, minus } => Cone::D1 { plus: *minus, minus: *plus },
            Cone::D2 { arcs } => Cone::D2 { arcs: normalize_arcs(arcs.iter().map(|a| arc(a.start + 180.0, a.len)).collect()) },
        }
    }

    /// Some direction `ξ` with `ξ ∈ self` and `−ξ ∈ other`, as a label.
    pub fn antipodal_witness(&self, other: &Cone) -> Option<String> {
        let meet = self.intersect(&other.antipode());
        if meet.is_empty() {
            return None;
        }
        match &meet {
            Cone::D1 { plus, .. } => Some(if *plus { "+".into() } else { "-".into() }),
            Cone::D2 { arcs } => Some(format!("{} deg", arcs[0].start)),
        }
    }

    /// Directions of `ξ + η` with `ξ ∈ self ∪ {0}`, `η ∈ other ∪ {0}`, excluding zero.
    ///
    /// Assumes no `ξ ∈ self` has `−ξ ∈ other`; each pair of arcs then spans
    /// less than a half-turn relative to each other and the result is their hull.
    pub fn sum(&self, other: &Cone) -> Cone {
        match (self, other) {
            (Cone::D1 { .. }, Cone::D1 { .. }) => {
                let u = self.union(other);
                if self.antipodal_witness(other).is_some() {
                    Cone::full(1)
                } else {
                    u
                }
            }
            (Cone::D2 { arcs: a }, Cone::D2 { arcs: b }) => {
                let mut out: Vec<AngularInterval> = a.iter().chain(b).copied().collect();
                for x in a {
                    for y in b {
                        let dlo = y.start - x.end();
                        let dhi = y.end() - x.start;
                        let m = (0.5 * (dlo + dhi) / 360.0).round() * 360.0;
                        let (ys, ye) = (y.start - m, y.end() - m);
                        if ye - x.start >= 180.0 || x.end() - ys >= 180.0 {
                            return Cone::full(2);
                        }
                        let lo = x.start.min(ys);
                        let hi = x.end().max(ye);
                        out.push(arc(lo, hi - lo));
                    }
                }
                Cone::D2 { arcs: normalize_arcs(out) }
            }
            _ => panic!("cone dimension mismatch"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum ConeJson {
    D1 { d1: String },
    D2 { intervals: Vec<[f64; 2]> },
}

impl ConeJson {
    pub(crate) fn to_cone(&self, dim: usize) -> Result<Cone> {
        match (self, dim) {
            (ConeJson::D1 { d1 }, 1) => match d1.as_str() {
                "+" => Ok(Cone::plus()),
                "-" => Ok(Cone::minus()),
                "both" => Ok(Cone::full(1)),
                other => Err(Error::InvalidInput(format!("unknown d1 cone {other:?}"))),
            },
            (ConeJson::D2 { intervals }, 2) => Cone::arcs(intervals),
            _ => Err(Error::InvalidInput(format!("cone form does not match dimension {dim}"))),
        }
    }

    pub(crate) fn from_cone(c: &Cone) -> Self {
        match c {
            Cone::D1 { plus: true, minus: true } => ConeJson::D1 { d1: "both".into() },
            Cone::D1 { plus: true, .. } => ConeJson::D1 { d1: "+".into() },
            Cone::D1 { .. } => ConeJson::D1 { d1: "-".into() },
            Cone::D2 { arcs } => ConeJson::D2 { intervals: arcs.iter().map(|a| [a.start, a.end()]).collect() },
        }
    }
}
