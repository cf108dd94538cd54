use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::lattice::GridSpec;

fn sign(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// In-place transform along every axis of a row-major `n^dim` array.
fn transform(data: &mut [Complex64], n: usize, dim: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    match dim {
        1 => fft.process(data),
        _ => {
            for row in data.chunks_mut(n) {
                fft.process(row);
            }
            let mut col = vec![Complex64::default(); n];
            for c in 0..n {
                for r in 0..n {
                    col[r] = data[r * n + c];
                }
                fft.process(&mut col);
                for r in 0..n {
                    data[r * n + c] = col[r];
                }
            }
        }
    }
}

fn checkerboard(data: &mut [Complex64], n: usize, dim: usize, offset: usize) {
    match dim {
        1 => {
            for (j, v) in data.iter_mut().enumerate() {
                *v *= sign(j + offset);
            }
        }
        _ => {
            for (idx, v) in data.iter_mut().enumerate() {
                *v *= sign(idx / n + idx % n + 2 * offset);
            }
        }
    }
}

/// Continuous Fourier transform of space samples, evaluated at the frequency grid.
///
/// `f̂(t_m) ≈ h^d Σ_j f(x_j) e^{−2πi⟨x_j, t_m⟩}`.
pub fn dft(samples: &[Complex64], grid: &GridSpec, dim: usize) -> Vec<Complex64> {
    let n = grid.n();
    assert_eq!(samples.len(), n.pow(dim as u32));
    let mut data = samples.to_vec();
    checkerboard(&mut data, n, dim, 0);
    transform(&mut data, n, dim, false);
    checkerboard(&mut data, n, dim, n / 2);
    let w = grid.h.powi(dim as i32);
    data.iter_mut().for_each(|v| *v *= w);
    data
}

/// Inverse of [`dft`]: space samples from frequency samples.
pub fn idft(spectrum: &[Complex64], grid: &GridSpec, dim: usize) -> Vec<Complex64> {
    let n = grid.n();
    assert_eq!(spectrum.len(), n.pow(dim as u32));
    let mut data = spectrum.to_vec();
    checkerboard(&mut data, n, dim, n / 2);
    transform(&mut data, n, dim, true);
    checkerboard(&mut data, n, dim, 0);
    let w = grid.dt().powi(dim as i32);
    data.iter_mut().for_each(|v| *v *= w);
    data
}

/// Points of the space grid in row-major order, padded to two coordinates.
pub fn space_points(grid: &GridSpec, dim: usize) -> Vec<[f64; 2]> {
    let n = grid.n();
    match dim {
        1 => (0..n).map(|j| [grid.x(j), 0.0]).collect(),
        _ => (0..n * n).map(|i| [grid.x(i / n), grid.x(i % n)]).collect(),
    }
}

/// Points of the frequency grid in row-major order, padded to two coordinates.
pub fn freq_points(grid: &GridSpec, dim: usize) -> Vec<[f64; 2]> {
    let n = grid.n();
    match dim {
        1 => (0..n).map(|m| [grid.t(m), 0.0]).collect(),
        _ => (0..n * n).map(|i| [grid.t(i / n), grid.t(i % n)]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_transform_1d() {
        let g = GridSpec::default_for(1);
        let xs = space_points(&g, 1);
        let f: Vec<Complex64> = xs.iter().map(|x| Complex64::new((-std::f64::consts::PI * x[0] * x[0]).exp(), 0.0)).collect();
        let spec = dft(&f, &g, 1);
        for (m, t) in freq_points(&g, 1).iter().enumerate() {
            let exact = (-std::f64::consts::PI * t[0] * t[0]).exp();
            assert!((spec[m] - exact).norm() < 1e-12, "m={m}");
        }
        let back = idft(&spec, &g, 1);
        for (a, b) in back.iter().zip(&f) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn shifted_gaussian_2d() {
        let g = GridSpec::new(4.0, 0.125, 4.0, 4).unwrap();
        let x0 = [0.5, -1.0];
        let f: Vec<Complex64> = space_points(&g, 2)
            .iter()
            .map(|x| {
                let r2 = (x[0] - x0[0]).powi(2) + (x[1] - x0[1]).powi(2);
                Complex64::new((-std::f64::consts::PI * r2).exp(), 0.0)
            })
            .collect();
        let spec = dft(&f, &g, 2);
        for (m, t) in freq_points(&g, 2).iter().enumerate() {
            let mag = (-std::f64::consts::PI * (t[0] * t[0] + t[1] * t[1])).exp();
            let exact = crate::lattice::character(&x0, t) * mag;
            assert!((spec[m] - exact).norm() < 1e-9, "{t:?}");
        }
    }
}
