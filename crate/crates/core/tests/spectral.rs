use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use sispace::spectral::{bracket, generator_fourier, inner_product, sobolev_norm, Combination};
use sispace::{CoeffSeq, Generator, GridSpec, SIFunction, Spectral};

#[test]
fn gaussian_bracket_matches_poisson_dual_series() {
    // Σ_k e^{−2π(ω+k)²} = 2^{−1/2} Σ_n e^{−πn²/2} e^{2πinω}
    for omega in [0.0, 0.2, 0.5] {
        let dual: f64 = (-20i32..=20).map(|n| (-PI * (n * n) as f64 / 2.0).exp() * (2.0 * PI * n as f64 * omega).cos()).sum::<f64>()
            / 2f64.sqrt();
        let g = Generator::gaussian(1, 1.0).unwrap();
        let b = bracket(&g, &g, 0.0, &[omega], 32).unwrap().value;
        assert!((b.re - dual).abs() < 1e-13, "ω={omega}: {} vs {dual}", b.re);
        assert!(b.im.abs() < 1e-15);
    }
    let g = Generator::gaussian(1, 1.0).unwrap();
    assert!((bracket(&g, &g, 0.0, &[0.0], 32).unwrap().value.re - 1.0037348854877393).abs() < 1e-12);
}

#[test]
fn hat_bracket_closed_form() {
    // Σ_k sinc⁴(ω + k) = (1 + 2cos²πω) / 3
    let hat = Generator::hat(1);
    for omega in [0.0, 0.125, 0.3, 0.5] {
        let want = (1.0 + 2.0 * (PI * omega).cos().powi(2)) / 3.0;
        let b = bracket(&hat, &hat, 0.0, &[omega], 64).unwrap().value.re;
        assert!((b - want).abs() < 1e-7, "ω={omega}");
    }
}

#[test]
fn gaussian_sobolev_norms_closed_form() {
    let grid = GridSpec::default_for(1);
    for sigma in [0.5, 1.0, 2.0] {
        let g = Generator::gaussian(1, sigma).unwrap();
        // ∫ σ² e^{−a t²} (1 + t²)^s dt with a = 2πσ²
        let a = 2.0 * PI * sigma * sigma;
        let i0 = (PI / a).sqrt();
        let i2 = PI.sqrt() / (2.0 * a.powf(1.5));
        let i4 = 3.0 * PI.sqrt() / (4.0 * a.powf(2.5));
        let n0 = sigma * sigma * i0;
        let n1 = sigma * sigma * (i0 + i2);
        let n2 = sigma * sigma * (i0 + 2.0 * i2 + i4);
        for (s, want) in [(0.0, n0), (1.0, n1), (2.0, n2)] {
            let got = sobolev_norm(&g, s, &grid).value;
            assert!((got * got - want).abs() < 1e-9 * want.max(1.0), "σ={sigma} s={s}");
        }
    }
}

#[test]
fn gaussian_2d_norm_is_product() {
    let grid = GridSpec::default_for(2);
    let g = Generator::gaussian(2, 1.0).unwrap();
    let got = sobolev_norm(&g, 0.0, &grid).value;
    assert!((got * got - 0.5).abs() < 1e-9);
    assert!((g.fourier(&[0.3, -0.4]) - Complex64::new((-PI * 0.25).exp(), 0.0)).norm() < 1e-15);
}

#[test]
fn parseval_against_space_quadrature() {
    let grid = GridSpec::default_for(1);
    let f = SIFunction::new(vec![Generator::gaussian(1, 0.8).unwrap()], vec![CoeffSeq::from_real_1d(&[(0, 1.0), (1, -0.5), (3, 0.25)])], 0.0)
        .unwrap();
    let g = SIFunction::new(vec![Generator::gaussian(1, 1.3).unwrap()], vec![CoeffSeq::from_real_1d(&[(-1, 2.0), (2, 0.5)])], 0.0).unwrap();
    let freq = inner_product(&f, &g, 0.0, &grid).unwrap().value;
    let h = 1.0 / 64.0;
    let space: Complex64 = (-4096..4096).map(|j| {
        let x = [j as f64 * h];
        f.eval(&x) * g.eval(&x).conj()
    })
    .sum::<Complex64>()
        * h;
    assert!((freq - space).norm() < 1e-9, "{freq} vs {space}");
}

#[test]
fn hat_fourier_samples() {
    let grid = GridSpec::default_for(1);
    let fs = generator_fourier(&Generator::hat(1), &grid).value;
    for (t, v) in fs.points.iter().zip(&fs.values).step_by(37) {
        let want = if t[0] == 0.0 { 1.0 } else { ((PI * t[0]).sin() / (PI * t[0])).powi(2) };
        assert!((v.re - want).abs() < 1e-15);
    }
}

#[test]
fn sampled_generators_round_trip() {
    let grid = GridSpec::default_for(1);
    let g = Generator::gaussian(1, 0.7).unwrap();
    let s = Generator::from_spectrum(1, &grid, |t| g.fourier(t), None).unwrap().value;
    let diff = sobolev_norm(&Combination::difference(&g, &s), 0.0, &grid).value;
    assert!(diff < 1e-9);
}

proptest! {
    #[test]
    fn bspline_partition_of_unity(order in 1u32..8, x in -3.0f64..3.0) {
        let b = Generator::bspline(1, order).unwrap();
        let sum: f64 = (-20i64..=20).map(|k| b.eval(&[x - k as f64]).re).sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bracket_hermitian_periodic_cauchy_schwarz(s1 in 0.4f64..2.0, s2 in 0.4f64..2.0, x0 in -2.0f64..2.0, omega in -0.5f64..0.5, s in 0.0f64..2.0) {
        let phi = Generator::gaussian(1, s1).unwrap();
        let psi = Generator::gaussian(1, s2).unwrap().shifted(&[x0]);
        let ab = bracket(&phi, &psi, s, &[omega], 32).unwrap().value;
        let ba = bracket(&psi, &phi, s, &[omega], 32).unwrap().value;
        prop_assert!((ab - ba.conj()).norm() <= 1e-12 * ab.norm().max(1.0));
        let moved = bracket(&phi, &psi, s, &[omega + 1.0], 32).unwrap().value;
        prop_assert!((ab - moved).norm() <= 1e-9 * ab.norm().max(1.0));
        let aa = bracket(&phi, &phi, s, &[omega], 32).unwrap().value.re;
        let bb = bracket(&psi, &psi, s, &[omega], 32).unwrap().value.re;
        prop_assert!(ab.norm_sqr() <= aa * bb * (1.0 + 1e-12));
    }

    #[test]
    fn inner_product_cauchy_schwarz(s1 in 0.5f64..1.5, s2 in 0.5f64..1.5, x0 in -3.0f64..3.0, s in -1.0f64..2.0) {
        let grid = GridSpec::default_for(1);
        let f = Generator::gaussian(1, s1).unwrap();
        let g = Generator::gaussian(1, s2).unwrap().shifted(&[x0]);
        let ip = inner_product(&f, &g, s, &grid).unwrap().value.norm();
        let nf = sobolev_norm(&f, s, &grid).value;
        let ng = sobolev_norm(&g, s, &grid).value;
        prop_assert!(ip <= nf * ng * (1.0 + 1e-9));
    }

    #[test]
    fn shift_is_modulation(x0 in -4.0f64..4.0, t in -6.0f64..6.0) {
        let g = Generator::bspline(1, 3).unwrap();
        let e = Complex64::from_polar(1.0, -2.0 * PI * x0 * t);
        prop_assert!((g.shifted(&[x0]).fourier(&[t]) - e * g.fourier(&[t])).norm() < 1e-14);
    }
}
