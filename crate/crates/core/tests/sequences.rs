use num_complex::Complex64;
use proptest::prelude::*;
use sispace::convcalc::delta_train_convolve;
use sispace::{seq_convolve, seq_norm, CoeffSeq, Error, Generator, SIFunction};

fn seq_1d() -> impl Strategy<Value = CoeffSeq> {
    prop::collection::vec((-12i64..=12, -3.0f64..3.0, -3.0f64..3.0), 0..8)
        .prop_map(|v| CoeffSeq::from_entries(1, v.into_iter().map(|(k, a, b)| ([k], Complex64::new(a, b)))).unwrap())
}

fn seq_2d() -> impl Strategy<Value = CoeffSeq> {
    prop::collection::vec((-5i64..=5, -5i64..=5, -2.0f64..2.0), 0..6)
        .prop_map(|v| CoeffSeq::from_entries(2, v.into_iter().map(|(a, b, x)| ([a, b], Complex64::new(x, 0.0)))).unwrap())
}

// direct double loop, kept independent of the library
fn brute_convolve(a: &CoeffSeq, b: &CoeffSeq) -> Vec<(Vec<i64>, Complex64)> {
    let mut acc: std::collections::BTreeMap<Vec<i64>, Complex64> = Default::default();
    for (ka, va) in a.iter() {
        for (kb, vb) in b.iter() {
            let k: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            *acc.entry(k).or_default() += va * vb;
        }
    }
    acc.into_iter().filter(|(_, v)| *v != Complex64::default()).collect()
}

proptest! {
    #[test]
    fn convolution_commutes(a in seq_1d(), b in seq_1d()) {
        prop_assert!(seq_convolve(&a, &b).unwrap().approx_eq(&seq_convolve(&b, &a).unwrap(), 1e-12));
    }

    #[test]
    fn convolution_associates(a in seq_2d(), b in seq_2d(), c in seq_2d()) {
        let l = seq_convolve(&seq_convolve(&a, &b).unwrap(), &c).unwrap();
        let r = seq_convolve(&a, &seq_convolve(&b, &c).unwrap()).unwrap();
        prop_assert!(Combined(&l, &r).close(1e-10));
    }

    #[test]
    fn convolution_matches_double_sum(a in seq_1d(), b in seq_1d()) {
        let c = seq_convolve(&a, &b).unwrap();
        for (k, v) in brute_convolve(&a, &b) {
            prop_assert!((c.get(&k) - v).norm() <= 1e-12);
        }
    }

    #[test]
    fn weighted_young(a in seq_1d(), b in seq_1d(), s in 0.0f64..3.0) {
        let lhs = seq_norm(&seq_convolve(&a, &b).unwrap(), 2.0, s);
        let rhs = 2f64.powf(s / 2.0) * seq_norm(&a, 1.0, s) * seq_norm(&b, 2.0, s);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn norm_monotone_in_order(a in seq_2d(), s in -2.0f64..2.0, ds in 0.0f64..2.0) {
        prop_assert!(seq_norm(&a, 2.0, s) <= seq_norm(&a, 2.0, s + ds) * (1.0 + 1e-14));
    }

    #[test]
    fn norm_monotone_in_exponent(a in seq_1d(), p in 1.0f64..4.0, dp in 0.0f64..4.0) {
        prop_assert!(seq_norm(&a, p + dp, 0.0) <= seq_norm(&a, p, 0.0) * (1.0 + 1e-12));
        prop_assert!(seq_norm(&a, f64::INFINITY, 0.5) <= seq_norm(&a, p, 0.5) * (1.0 + 1e-12));
    }

    #[test]
    fn json_round_trip(a in seq_2d()) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<CoeffSeq>(&s).unwrap(), a);
    }

    #[test]
    fn delta_train_order_rule(a in seq_1d(), s in 0.0f64..3.0, r in 0.0f64..3.0) {
        let g = SIFunction::new(vec![Generator::hat(1)], vec![CoeffSeq::from_real_1d(&[(0, 1.0), (1, -0.5)])], s).unwrap();
        match delta_train_convolve(&a, &g, r) {
            Ok(out) => {
                prop_assert!(s <= r);
                prop_assert_eq!(out.order(), s);
                prop_assert_eq!(&out.coeffs()[0], &seq_convolve(&a, &g.coeffs()[0]).unwrap());
            }
            Err(e) => {
                prop_assert!(s > r);
                let is_order_violation = matches!(e, Error::OrderViolation { .. });
                prop_assert!(is_order_violation);
            }
        }
    }
}

struct Combined<'a>(&'a CoeffSeq, &'a CoeffSeq);

impl Combined<'_> {
    fn close(&self, tol: f64) -> bool {
        let diff = self.0.axpy(Complex64::new(-1.0, 0.0), self.1).unwrap();
        diff.max_abs() <= tol
    }
}
