//! Cached FFT plans shared by the quadrature and factorization pipelines.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type PlanCache = Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>;

fn cache() -> &'static PlanCache {
    static CACHE: OnceLock<PlanCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut guard = cache().lock().expect("fft plan cache poisoned");
    guard
        .entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

/// In-place forward transform: `X[k] = sum_m x[m] exp(-2*pi*i*k*m/N)`.
pub(crate) fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// In-place inverse transform including the 1/N factor, so that
/// `inverse(forward(x)) == x` up to rounding.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    let scale = 1.0 / buf.len() as f64;
    plan(buf.len(), true).process(buf);
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let n = 64;
        let orig: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut buf = orig.clone();
        forward(&mut buf);
        inverse(&mut buf);
        for (a, b) in orig.iter().zip(&buf) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn forward_matches_direct_dft() {
        let n = 8;
        let x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let mut buf = x.clone();
        forward(&mut buf);
        for k in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, v) in x.iter().enumerate() {
                let ang = -2.0 * std::f64::consts::PI * (k * m) as f64 / n as f64;
                acc += v * Complex64::new(ang.cos(), ang.sin());
            }
            assert!((acc - buf[k]).norm() < 1e-10);
        }
    }
}
