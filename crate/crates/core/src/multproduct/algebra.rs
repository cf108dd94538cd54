use crate::error::{Error, Result};
use crate::lattice::seq_convolve;
use crate::spectral::PeriodicSymbol;

fn recip(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Product `τ₁ τ₂` in `𝒫^{p,r}` with `1/p₁ + 1/p₂ = 1/p + 1` and `r = min{r₁, r₂}`.
pub fn symbol_product(a: &PeriodicSymbol, b: &PeriodicSymbol) -> Result<PeriodicSymbol> {
    for p in [a.p, b.p] {
        if !(p >= 1.0) {
            return Err(Error::ExponentViolation { detail: format!("exponent p = {p} is below 1") });
        }
    }
    let inv = recip(a.p) + recip(b.p) - 1.0;
    if inv < -1e-12 {
        return Err(Error::ExponentViolation {
            detail: format!("1/p1 + 1/p2 = {} < 1 leaves no admissible p", inv + 1.0),
        });
    }
    if a.r + b.r < 0.0 {
        return Err(Error::ExponentViolation { detail: format!("r1 + r2 = {} is negative", a.r + b.r) });
    }
    let p = if inv <= 1e-12 { f64::INFINITY } else { 1.0 / inv };
    Ok(PeriodicSymbol::new(seq_convolve(&a.coeffs, &b.coeffs)?, p, a.r.min(b.r)))
}
