use std::f64::consts::PI;

use num_complex::Complex64;
use sispace::convcalc::generator_convolve;
use sispace::frames::{
    check_condition_a, frame_bounds, gramian_fiber, project, same_space_check, transition_regularity, SpaceVerdict,
    TransitionMatrix, Verdict,
};
use sispace::spectral::{inner_product, Combination};
use sispace::{CoeffSeq, Generator, GridSpec, PeriodicSymbol, Spectral, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn hat_fibers_follow_closed_form() {
    let hat = Generator::hat(1);
    for omega in [-0.5, -0.2, 0.0, 0.37, 0.5] {
        let g = gramian_fiber(&[hat.clone()], 0.0, &[omega], 32).unwrap().value;
        let want = (1.0 + 2.0 * (PI * omega).cos().powi(2)) / 3.0;
        assert!((g[(0, 0)].re - want).abs() < 1e-6);
    }
}

#[test]
fn box_bounds_need_long_periodization() {
    // Σ_k sinc²(ω + k) = 1; the tail past |k| = K is about 2 sin²(πω) / (π² K)
    let grid = GridSpec::default_for(1).with_k(1024);
    let r = frame_bounds(&[Generator::boxcar(1)], 0.0, &grid, &tol()).unwrap().value;
    assert!((r.lower - 1.0).abs() < 1e-3 && (r.upper - 1.0).abs() < 1e-3, "{r:?}");
}

#[test]
fn two_dimensional_hat_bounds() {
    // tensor product of the one-dimensional bracket
    let r = frame_bounds(&[Generator::hat(2)], 0.0, &GridSpec::default_for(2), &tol()).unwrap().value;
    assert!((r.lower - 1.0 / 9.0).abs() < 1e-3 && (r.upper - 1.0).abs() < 1e-3, "{r:?}");
}

#[test]
fn redundant_bank_keeps_bounds() {
    let hat = Generator::hat(1);
    let r = frame_bounds(&[hat.clone(), hat.shifted(&[1.0])], 0.0, &GridSpec::default_for(1), &tol()).unwrap().value;
    assert_eq!(r.verdict, Verdict::Consistent);
    // every fiber is rank one with eigenvalue 2 [φ̂, φ̂](ω)
    assert_eq!(r.rank_profile, vec![0, 64, 0]);
    assert!((r.lower - 2.0 / 3.0).abs() < 1e-3 && (r.upper - 2.0).abs() < 1e-3);
}

#[test]
fn condition_a_on_smooth_bank() {
    let r = check_condition_a(&[Generator::gaussian(1, 1.0).unwrap()], 1.0, &GridSpec::default_for(1), &tol()).unwrap().value;
    assert_eq!(r.verdict, Verdict::Consistent);
    assert!(check_condition_a(&[Generator::hat(1)], -0.5, &GridSpec::default_for(1), &tol()).is_err());
}

#[test]
fn projection_is_idempotent_and_orthogonal() {
    let grid = GridSpec::default_for(1);
    let hat = Generator::hat(1);
    let h = Generator::gaussian(1, 1.3).unwrap().shifted(&[0.4]);
    let p = project(&h, &[hat.clone()], 0.0, &grid, &tol()).unwrap().value;
    let pp = project(&p.approx, &[hat.clone()], 0.0, &grid, &tol()).unwrap().value;
    assert!(pp.residual <= 1e-8, "idempotence residual {}", pp.residual);
    let diff = p.approx.coeffs()[0].axpy(Complex64::new(-1.0, 0.0), &pp.approx.coeffs()[0]).unwrap();
    assert!(diff.max_abs() <= 1e-8);
    let resid = Combination::difference(&h, &p.approx);
    for k in -4..=4 {
        let ip = inner_product(&resid, &hat.shifted(&[k as f64]), 0.0, &grid).unwrap().value;
        assert!(ip.norm() <= 1e-6, "k={k}: {ip}");
    }
}

#[test]
fn hat_star_hat_is_outside_hat_space() {
    let grid = GridSpec::default_for(1);
    let hat = Generator::hat(1);
    let hh = generator_convolve(&hat, &hat, &grid).unwrap().value;
    let p = project(&hh, &[hat], 0.0, &grid, &tol()).unwrap().value;
    assert!(p.residual >= 0.01, "{}", p.residual);
}

#[test]
fn projection_recovers_expansion_in_two_dimensions() {
    let grid = GridSpec::default_for(2);
    let g = Generator::gaussian(2, 1.0).unwrap();
    let c = CoeffSeq::from_entries(2, [([0, 0], Complex64::new(1.0, 0.0)), ([1, -2], Complex64::new(0.0, 0.5))]).unwrap();
    let f = sispace::SIFunction::new(vec![g.clone()], vec![c.clone()], 0.0).unwrap();
    let p = project(&f, &[g], 0.0, &grid, &tol()).unwrap().value;
    assert!(p.approx.coeffs()[0].approx_eq(&c, 1e-8));
    assert!(p.residual <= 1e-8);
    assert!((p.approx.eval(&[0.3, 0.1]) - f.eval(&[0.3, 0.1])).norm() < 1e-8);
}

#[test]
fn same_space_verdicts() {
    let grid = GridSpec::default_for(1);
    let hat = Generator::hat(1);
    let r = same_space_check(&[hat.clone()], &[hat.shifted(&[1.0])], 0.0, &grid, &tol()).unwrap().value;
    assert_eq!(r.verdict, SpaceVerdict::Equal);
    let hh = generator_convolve(&hat, &hat, &grid).unwrap().value;
    let r = same_space_check(&[hat], &[hh], 0.0, &grid, &tol()).unwrap().value;
    assert_eq!(r.verdict, SpaceVerdict::NotEqual);
}

#[test]
fn transition_singular_at_half() {
    let tau = PeriodicSymbol::from_coeffs(CoeffSeq::from_real_1d(&[(0, 1.0), (1, 1.0)]));
    let a = TransitionMatrix::new(vec![vec![tau]]).unwrap();
    let r = transition_regularity(&a, &GridSpec::default_for(1), &tol());
    assert!(!r.regular);
    assert!(r.singular_set.iter().any(|(w, _)| (w[0] - 0.5).abs() < 1e-12));
    assert!(r.singular_set.iter().all(|(w, _)| (w[0] - 0.5).abs() < 1e-12));
    let id = TransitionMatrix::identity(2, 1).unwrap();
    assert!(transition_regularity(&id, &GridSpec::default_for(1), &tol()).regular);
}
