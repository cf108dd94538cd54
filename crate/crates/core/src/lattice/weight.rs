/// Polynomial weight `μ_s(x) = (1 + |x|²)^{s/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight {
    pub s: f64,
}

impl Weight {
    pub const fn new(s: f64) -> Self {
        Self { s }
    }

    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        weight_eval(self.s, x)
    }

    /// Constant in the Peetre inequality `μ_s(x+y) <= 2^{|s|/2} μ_s(x) μ_{|s|}(y)`.
    pub fn peetre_constant(&self) -> f64 {
        2f64.powf(self.s.abs() / 2.0)
    }
}

#[inline]
pub fn weight_eval(s: f64, x: &[f64]) -> f64 {
    if s == 0.0 {
        return 1.0;
    }
    let r2: f64 = x.iter().map(|v| v * v).sum();
    (1.0 + r2).powf(s / 2.0)
}

/// Same weight evaluated at an integer lattice point.
#[inline]
pub fn weight_at_index(s: f64, k: &[i64]) -> f64 {
    if s == 0.0 {
        return 1.0;
    }
    let r2: f64 = k.iter().map(|&v| (v as f64) * (v as f64)).sum();
    (1.0 + r2).powf(s / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trivial_values() {
        assert_eq!(weight_eval(0.0, &[123.0]), 1.0);
        assert!((weight_eval(2.0, &[1.0]) - 2.0).abs() < 1e-15);
        assert!((weight_eval(-1.0, &[0.0]) - 1.0).abs() < 1e-15);
        assert!((weight_eval(2.0, &[1.0, 1.0]) - 3.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn reciprocal_and_positive(s in -6.0f64..6.0, x in -50.0f64..50.0, y in -50.0f64..50.0) {
            let p = [x, y];
            let a = weight_eval(s, &p);
            prop_assert!(a > 0.0);
            prop_assert!((a * weight_eval(-s, &p) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn peetre(s in -5.0f64..5.0, x in -40.0f64..40.0, y in -40.0f64..40.0) {
            let w = Weight::new(s);
            let lhs = w.eval(&[x + y]);
            let rhs = w.peetre_constant() * w.eval(&[x]) * weight_eval(s.abs(), &[y]);
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
            if s >= 0.0 {
                prop_assert!(lhs <= w.peetre_constant() * w.eval(&[x]) * w.eval(&[y]) * (1.0 + 1e-12));
            }
        }
    }
}
