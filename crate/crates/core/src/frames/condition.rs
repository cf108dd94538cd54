use serde::Serialize;

use super::{frame_bounds, FrameReport, Verdict};
use crate::error::{Error, Result, Rule};
use crate::lattice::{GridSpec, Tolerance};
use crate::spectral::{periodization_sup, sobolev_shells, weighted_l2_space, Generator};
use crate::warn::{push_unique, Warned};

/// Convergence test of a series from its shell contributions `E_0, E_1, …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailCheck {
    /// Fitted exponent of `E_r ~ r^slope` over the outer half, if the tail is not negligible.
    pub slope: Option<f64>,
    pub verdict: Verdict,
}

/// Classify a shell sequence: negligible or fast-decaying tails pass, tails
/// decaying like `1/r` or slower fail.
pub fn tail_verdict(shells: &[f64]) -> TailCheck {
    let total: f64 = shells.iter().sum();
    let n = shells.len();
    let start = (n / 2).max(1);
    let outer: f64 = shells[start.min(n)..].iter().sum();
    if total == 0.0 || outer <= 1e-12 * total {
        return TailCheck { slope: None, verdict: Verdict::Consistent };
    }
    let pts: Vec<(f64, f64)> = (start..n)
        .filter(|&r| shells[r] > 0.0)
        .map(|r| ((r as f64).ln(), shells[r].ln()))
        .collect();
    if pts.len() < 3 {
        return TailCheck { slope: None, verdict: Verdict::Inconclusive };
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let verdict = if slope <= -1.25 {
        Verdict::Consistent
    } else if slope >= -1.05 {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    TailCheck { slope: Some(slope), verdict }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorDiagnostics {
    /// `sup_x Σ_j |φ(x + j)|` on the unit cell.
    pub periodization_sup: f64,
    pub periodization: TailCheck,
    /// `‖φ‖_{L²_s}` over the box.
    pub weighted_l2: f64,
    pub weighted_l2_tail: TailCheck,
    pub sobolev_tail: TailCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionAReport {
    /// Frame check with weight order 0 (closedness in `L²_s` proxy).
    pub frame_unweighted: FrameReport,
    /// Frame check with weight order `s`.
    pub frame_weighted: FrameReport,
    pub generators: Vec<GeneratorDiagnostics>,
    /// `consistent` never means proved: it only says no check failed.
    pub verdict: Verdict,
}

pub fn check_condition_a(bank: &[Generator], s: f64, grid: &GridSpec, tol: &Tolerance) -> Result<Warned<ConditionAReport>> {
    if !(s >= 0.0) {
        return Err(Error::Precondition { rule: Rule::ConditionA, detail: format!("order s = {s} must be nonnegative") });
    }
    let mut warnings = Vec::new();
    let f0 = frame_bounds(bank, 0.0, grid, tol)?;
    push_unique(&mut warnings, f0.warnings);
    let fs = frame_bounds(bank, s, grid, tol)?;
    push_unique(&mut warnings, fs.warnings);
    let mut verdict = f0.value.verdict.and(fs.value.verdict);
    let mut generators = Vec::with_capacity(bank.len());
    for g in bank {
        let p = periodization_sup(g, grid);
        let l = weighted_l2_space(g, s, grid);
        let diag = GeneratorDiagnostics {
            periodization_sup: p.sup,
            periodization: tail_verdict(&p.shells),
            weighted_l2: l.norm,
            weighted_l2_tail: tail_verdict(&l.shells),
            sobolev_tail: tail_verdict(&sobolev_shells(g, s, grid)),
        };
        verdict = verdict
            .and(diag.periodization.verdict)
            .and(diag.weighted_l2_tail.verdict)
            .and(diag.sobolev_tail.verdict);
        generators.push(diag);
    }
    Ok(Warned::new(
        ConditionAReport { frame_unweighted: f0.value, frame_weighted: fs.value, generators, verdict },
        warnings,
    ))
}
