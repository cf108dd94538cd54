use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sispace::multproduct::{
    apply_multiplier, mikhlin_check, periodic_multiply, periodic_multiply_with, symbol_product, MikhlinPolicy, MultiplierKind,
    MultiplierSymbol, PeriodicMultiplier, ProductPath,
};
use sispace::spectral::fft::freq_points;
use sispace::spectral::sobolev_norm;
use sispace::{seq_norm, CoeffSeq, Generator, GridSpec, PeriodicSymbol, SIFunction, Spectral};

fn random_seq(rng: &mut StdRng, dim: usize, radius: i64, len: usize) -> CoeffSeq {
    let mut c = CoeffSeq::zero(dim).unwrap();
    for _ in 0..len {
        let k: Vec<i64> = (0..dim).map(|_| rng.gen_range(-radius..=radius)).collect();
        c.add_at(&k, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    c
}

fn shipped() -> Vec<MultiplierSymbol> {
    vec![
        MultiplierSymbol::constant(1, Complex64::new(0.5, 2.0)).unwrap(),
        MultiplierSymbol::new(1, MultiplierKind::Riesz { component: 0 }).unwrap(),
        MultiplierSymbol::new(1, MultiplierKind::Bessel { order: 1.0 }).unwrap(),
        MultiplierSymbol::new(1, MultiplierKind::Normalized { component: 0 }).unwrap(),
    ]
}

#[test]
fn sobolev_boundedness_surrogate() {
    let grid = GridSpec::default_for(1);
    let mut rng = StdRng::seed_from_u64(5);
    for a in shipped() {
        assert!(mikhlin_check(&a, &grid).verdict);
        let c = freq_points(&grid, 1).iter().map(|t| a.eval(&t[..1]).norm()).fold(0.0, f64::max);
        for _ in 0..50 {
            let s = rng.gen_range(0.0..2.0);
            let g = Generator::gaussian(1, rng.gen_range(0.6..1.4)).unwrap();
            let mut coeffs = random_seq(&mut rng, 1, 5, 4);
            if coeffs.is_empty() {
                coeffs = CoeffSeq::delta(&[0]).unwrap();
            }
            let f = SIFunction::new(vec![g], vec![coeffs], s).unwrap();
            let tf = apply_multiplier(&a, &f, &grid, MikhlinPolicy::Enforce).unwrap().value;
            assert_eq!(tf.coeffs(), f.coeffs());
            assert_eq!(tf.order(), f.order());
            let lhs = sobolev_norm(&tf, s, &grid).value;
            let rhs = c * sobolev_norm(&f, s, &grid).value;
            assert!(lhs <= rhs * (1.0 + 1e-9), "{a:?}: {lhs} > {rhs}");
        }
    }
}

#[test]
fn identity_and_phase() {
    let grid = GridSpec::default_for(1);
    let f = SIFunction::new(vec![Generator::hat(1)], vec![CoeffSeq::from_real_1d(&[(0, 1.0), (2, -0.5)])], 1.0).unwrap();
    let one = MultiplierSymbol::constant(1, Complex64::new(1.0, 0.0)).unwrap();
    assert_eq!(apply_multiplier(&one, &f, &grid, MikhlinPolicy::Enforce).unwrap().value, f);
    let h0 = 0.3;
    // generic symbol path for the same phase, compared against direct evaluation
    let phase = MultiplierSymbol::custom(1, move |t| Complex64::from_polar(1.0, -2.0 * PI * t[0] * h0)).unwrap();
    let g = SIFunction::single(Generator::gaussian(1, 1.0).unwrap(), 0.0);
    let out = apply_multiplier(&phase, &g, &grid, MikhlinPolicy::WarnOnly).unwrap().value;
    let exact = apply_multiplier(&MultiplierSymbol::phase(&[h0]).unwrap(), &g, &grid, MikhlinPolicy::Enforce).unwrap().value;
    for x in [-1.0, -0.2, 0.3, 0.77, 1.9] {
        let want = g.eval(&[x - h0]);
        assert!((out.eval(&[x]) - want).norm() <= 1e-6, "x={x}");
        assert!((exact.eval(&[x]) - want).norm() <= 1e-12);
    }
    let t = MultiplierSymbol::new(1, MultiplierKind::Monomial { component: 0, power: 1 }).unwrap();
    assert!(!mikhlin_check(&t, &grid).verdict);
}

#[test]
fn periodic_product_sweep_and_oracles() {
    let grid = GridSpec::default_for(1);
    let hat = Generator::hat(1);
    for p in 1..=3u32 {
        for s in 0..=2u32 {
            let g = PeriodicMultiplier::trig(CoeffSeq::from_real_1d(&[(-1, 0.5), (1, 0.5)]), Some(p));
            let f = SIFunction::single(hat.clone(), s as f64);
            let out = periodic_multiply(&g, &f, &grid).unwrap().value;
            assert_eq!(out.order(), p.min(s) as f64);
        }
    }
    let g = PeriodicMultiplier::trig(
        CoeffSeq::from_entries(1, [([0], Complex64::new(1.0, 0.0)), ([2], Complex64::new(0.25, -0.5)), ([-3], Complex64::new(0.0, 0.3))]).unwrap(),
        None,
    );
    let f = SIFunction::new(vec![Generator::bspline(1, 3).unwrap()], vec![CoeffSeq::from_real_1d(&[(0, 1.0), (1, 2.0)])], 2.0).unwrap();
    let space = periodic_multiply_with(&g, &f, &grid, ProductPath::Space).unwrap().value;
    let freq = periodic_multiply_with(&g, &f, &grid, ProductPath::Frequency).unwrap().value;
    for j in (0..grid.n()).step_by(3) {
        let x = [grid.x(j)];
        let want = g.eval(&x) * f.eval(&x);
        assert!((space.eval(&x) - want).norm() <= 1e-8);
        assert!((freq.eval(&x) - space.eval(&x)).norm() <= 1e-8, "x={}", x[0]);
    }
}

#[test]
fn two_dimensional_product_paths_agree() {
    let grid = GridSpec::default_for(2);
    let g = PeriodicMultiplier::trig(CoeffSeq::from_entries(2, [([1, 0], Complex64::new(0.5, 0.0)), ([0, -1], Complex64::new(0.0, 1.0))]).unwrap(), None);
    let f = SIFunction::single(Generator::gaussian(2, 1.0).unwrap(), 1.0);
    let a = periodic_multiply_with(&g, &f, &grid, ProductPath::Space).unwrap().value;
    let b = periodic_multiply_with(&g, &f, &grid, ProductPath::Frequency).unwrap().value;
    for j in (0..grid.n()).step_by(17) {
        for i in (0..grid.n()).step_by(13) {
            let x = [grid.x(j), grid.x(i)];
            assert!((a.eval(&x) - g.eval(&x) * f.eval(&x)).norm() <= 1e-8);
            assert!((a.eval(&x) - b.eval(&x)).norm() <= 1e-8);
        }
    }
}

#[test]
fn spline_multiplier_orders() {
    let grid = GridSpec::default_for(1);
    let g = PeriodicMultiplier::spline(1, 2, 4, vec![1.0, 0.5, 0.0, 0.5]).unwrap();
    let f = SIFunction::single(Generator::gaussian(1, 1.0).unwrap(), 3.0);
    let out = periodic_multiply(&g, &f, &grid).unwrap().value;
    assert_eq!(out.order(), 1.0);
    let x = [grid.x(500)];
    assert!((out.eval(&x) - g.eval(&x) * f.eval(&x)).norm() < 1e-12);
}

#[test]
fn symbol_products() {
    let mut rng = StdRng::seed_from_u64(9);
    for case in 0..100 {
        let dim = 1 + case % 2;
        let c1 = random_seq(&mut rng, dim, 4, 5);
        let c2 = random_seq(&mut rng, dim, 4, 5);
        let (p1, p2) = ([1.0, 1.0, 2.0][case % 3], [1.0, 2.0, 2.0][case % 3]);
        let r: f64 = rng.gen_range(-1.5..1.5);
        let a = PeriodicSymbol::new(c1.clone(), p1, r.abs());
        let b = PeriodicSymbol::new(c2.clone(), p2, r);
        let ab = symbol_product(&a, &b).unwrap();
        let ba = symbol_product(&b, &a).unwrap();
        assert!(ab.coeffs.approx_eq(&ba.coeffs, 1e-12));
        assert_eq!((ab.p, ab.r), (ba.p, ba.r));
        let t: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        assert!((ab.eval(&t) - a.eval(&t) * b.eval(&t)).norm() <= 1e-9);
        // Peetre and Young: ‖c1 ∗ c2‖_{ℓ^p_r} ≤ 2^{|r|/2} ‖c1‖_{ℓ^{p1}_{|r|}} ‖c2‖_{ℓ^{p2}_r}
        let lhs = seq_norm(&ab.coeffs, ab.p, r);
        let rhs = 2f64.powf(r.abs() / 2.0) * seq_norm(&c1, p1, r.abs()) * seq_norm(&c2, p2, r);
        assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-300, "case {case}");
    }
}
