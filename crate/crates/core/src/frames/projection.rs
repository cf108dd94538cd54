use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{analyze, Verdict};
use crate::error::{Error, Result, Rule};
use crate::lattice::{CoeffSeq, GridSpec, Tolerance};
use crate::spectral::{lattice_point, sobolev_norm, Combination, Generator, SIFunction, Spectral};
use crate::warn::{push_unique, Warned, Warning};

#[derive(Debug, Clone)]
pub struct Projection {
    /// Best approximation in `V_s(bank)`.
    pub approx: SIFunction,
    /// `‖h − Ph‖_{H^s}`.
    pub residual: f64,
}

/// Coefficients `c_k = ∫_𝕋 τ(ω) e^{2πi⟨k,ω⟩} dω` from torus samples, `k ∈ [−M/2, M/2)^d`.
pub(crate) fn symbol_coefficients(taus: &[Complex64], grid: &GridSpec, dim: usize) -> Vec<(Vec<i64>, Complex64)> {
    let m = grid.m();
    let half = (m / 2) as i64;
    let ax = grid.omega_axis();
    let ks: Vec<i64> = (-half..(m as i64 - half)).collect();
    // phase[k][j] = e^{2πi k ω_j}
    let phase: Vec<Vec<Complex64>> = ks
        .iter()
        .map(|&k| ax.iter().map(|&w| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 * w)).collect())
        .collect();
    let wgt = grid.omega_weight(dim);
    match dim {
        1 => ks
            .par_iter()
            .enumerate()
            .map(|(ki, &k)| {
                let v: Complex64 = taus.iter().zip(&phase[ki]).map(|(t, p)| t * p).sum();
                (vec![k], v * wgt)
            })
            .collect(),
        _ => {
            // separable: first along the second axis
            let partial: Vec<Vec<Complex64>> = (0..m)
                .map(|r| (0..ks.len()).map(|ki| (0..m).map(|c| taus[r * m + c] * phase[ki][c]).sum()).collect())
                .collect();
            (0..ks.len())
                .into_par_iter()
                .flat_map_iter(|a| {
                    let partial = &partial;
                    let phase = &phase;
                    let ks = &ks;
                    (0..ks.len()).map(move |b| {
                        let v: Complex64 = (0..m).map(|r| partial[r][b] * phase[a][r]).sum();
                        (vec![ks[a], ks[b]], v * wgt)
                    })
                })
                .collect()
        }
    }
}

fn to_seqs(raw: Vec<Vec<(Vec<i64>, Complex64)>>, dim: usize) -> Result<Vec<CoeffSeq>> {
    let top = raw.iter().flatten().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let cut = 1e-13 * top;
    raw.into_iter()
        .map(|r| CoeffSeq::from_entries(dim, r.into_iter().filter(|(_, v)| v.norm() > cut)))
        .collect()
}

/// Orthogonal projection of `h` onto `V_s(bank)` by per-fiber least squares.
///
/// Coefficients are recovered on `[−R, R)^d`; expansions reaching further
/// alias onto that window.
pub fn project(h: &dyn Spectral, bank: &[Generator], s: f64, grid: &GridSpec, tol: &Tolerance) -> Result<Warned<Projection>> {
    let analysis = analyze(bank, s, grid, tol)?;
    let d = bank[0].dim();
    if h.dim() != d {
        return Err(Error::dim(d, h.dim()));
    }
    if analysis.report.verdict == Verdict::Violated {
        return Err(Error::Precondition {
            rule: Rule::ConditionA,
            detail: "the generator shifts do not form a frame (lower bound vanishes)".into(),
        });
    }
    let cutoff = analysis.report.cutoff;
    let m = bank.len();
    let lat = grid.lattice(d);
    let solved: Vec<(Vec<Complex64>, f64, [f64; 2])> = analysis
        .fibers
        .par_iter()
        .map(|f| {
            let hv = h.fiber(&f.omega, &lat);
            // b_i = Σ ĥ conj(φ̂_i) μ; the normal equations read conj(G) τ = b.
            let b = DVector::from_iterator(
                m,
                f.values.iter().map(|v| hv.iter().zip(v).zip(&f.mu).map(|((x, y), w)| x * y.conj() * w).sum::<Complex64>()),
            );
            let bc = b.map(|z| z.conj());
            let mut tau_c = DVector::<Complex64>::zeros(m);
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for (idx, &l) in f.eigvals.iter().enumerate() {
                if l < cutoff {
                    continue;
                }
                lo = lo.min(l);
                hi = hi.max(l);
                let u = f.eigvecs.column(idx);
                let proj = u.dotc(&bc);
                tau_c += u * (proj / l);
            }
            let cond = if lo.is_finite() { hi / lo } else { 1.0 };
            (tau_c.iter().map(|z| z.conj()).collect(), cond, f.omega)
        })
        .collect();
    let mut warnings = analysis.warnings;
    if let Some(worst) = solved.iter().max_by(|a, b| a.1.total_cmp(&b.1)) {
        if worst.1 > 1e8 {
            warnings.push(Warning::IllConditionedFiber { omega: worst.2[..d].to_vec(), condition: worst.1 });
        }
    }
    let raw: Vec<Vec<(Vec<i64>, Complex64)>> = (0..m)
        .map(|i| {
            let taus: Vec<Complex64> = solved.iter().map(|r| r.0[i]).collect();
            symbol_coefficients(&taus, grid, d)
        })
        .collect();
    let coeffs = to_seqs(raw, d)?;
    let approx = SIFunction::new(bank.to_vec(), coeffs, s)?;
    let res = sobolev_norm(&Combination::difference(h, &approx), s, grid);
    let residual = res.drain_into(&mut warnings);
    Ok(Warned::new(Projection { approx, residual }, warnings))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceVerdict {
    Equal,
    NotEqual,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SameSpaceReport {
    pub verdict: SpaceVerdict,
    /// `‖ψ_j − P_Φ ψ_j‖_{H^s}` for each `ψ_j`.
    pub residuals_psi_on_phi: Vec<f64>,
    /// `‖φ_i − P_Ψ φ_i‖_{H^s}` for each `φ_i`.
    pub residuals_phi_on_psi: Vec<f64>,
    /// Frequency samples where exactly one bank has a nonvanishing transform.
    pub support_mismatch: usize,
    pub support_mismatch_fraction: f64,
}

/// Decide `V_s(Φ) = V_s(Ψ)` by projecting each bank onto the other.
pub fn same_space_check(phi: &[Generator], psi: &[Generator], s: f64, grid: &GridSpec, tol: &Tolerance) -> Result<Warned<SameSpaceReport>> {
    let mut warnings = Vec::new();
    let mut state = SpaceVerdict::Equal;
    let mut one_side = |from: &[Generator], onto: &[Generator], warnings: &mut Vec<Warning>| -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for g in from {
            let p = project(g, onto, s, grid, tol)?;
            push_unique(warnings, p.warnings);
            let r = p.value.residual;
            let thr = tol.threshold(sobolev_norm(g, s, grid).value);
            if r > 10.0 * thr {
                state = SpaceVerdict::NotEqual;
            } else if r > thr && state == SpaceVerdict::Equal {
                state = SpaceVerdict::Inconclusive;
            }
            out.push(r);
        }
        Ok(out)
    };
    let a = one_side(psi, phi, &mut warnings)?;
    let b = one_side(phi, psi, &mut warnings)?;

    let d = phi[0].dim();
    let lat = grid.lattice(d);
    let omegas = grid.omega_grid(d);
    let total = omegas.len() * lat.len();
    let mismatch: usize = omegas
        .par_iter()
        .map(|w| {
            let mut n = 0;
            for (k, _) in &lat {
                let t = lattice_point(w, k);
                let on = |bank: &[Generator]| bank.iter().any(|g| g.fourier(&t[..d]).norm() > tol.abs);
                if on(phi) != on(psi) {
                    n += 1;
                }
            }
            n
        })
        .sum();
    Ok(Warned::new(
        SameSpaceReport {
            verdict: state,
            residuals_psi_on_phi: a,
            residuals_phi_on_psi: b,
            support_mismatch: mismatch,
            support_mismatch_fraction: mismatch as f64 / total as f64,
        },
        warnings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_member_projects_exactly() {
        let hat = Generator::hat(1);
        let g = GridSpec::default_for(1);
        let p = project(&hat.shifted(&[3.0]), &[hat.clone()], 0.0, &g, &Tolerance::default()).unwrap().value;
        assert!(p.residual <= 1e-8, "{}", p.residual);
        assert!(p.approx.coeffs()[0].approx_eq(&CoeffSeq::delta(&[3]).unwrap(), 1e-10));
    }

    #[test]
    fn zero_projects_to_zero() {
        let g = GridSpec::default_for(1);
        let z = Generator::zero(1).unwrap();
        let p = project(&z, &[Generator::hat(1)], 0.0, &g, &Tolerance::default()).unwrap().value;
        assert!(p.approx.coeffs()[0].is_empty());
        assert_eq!(p.residual, 0.0);
    }

    #[test]
    fn violated_bank_is_rejected() {
        let g = GridSpec::default_for(1);
        let err = project(&Generator::hat(1), &[Generator::zero(1).unwrap()], 0.0, &g, &Tolerance::default()).unwrap_err();
        assert_eq!(err.rule(), Some(Rule::ConditionA));
    }

    #[test]
    fn same_bank_is_equal() {
        let g = GridSpec::default_for(1);
        let b = [Generator::gaussian(1, 1.0).unwrap()];
        let r = same_space_check(&b, &b, 0.5, &g, &Tolerance::default()).unwrap().value;
        assert_eq!(r.verdict, SpaceVerdict::Equal);
        assert!(r.residuals_phi_on_psi[0] < 1e-9);
        assert_eq!(r.support_mismatch, 0);
    }
}
