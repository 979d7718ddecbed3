//! The singular symbol `a(z) = (2 - z - 1/z)^alpha (-z)^beta` on the unit
//! circle, its Fourier coefficients, and the traced image curve.
//!
//! Branch convention: with `z = e^{-ip}`, `p` in `(-pi, pi]`, the first
//! factor `2 - z - 1/z = 2 - 2 cos p` is real and nonnegative on the circle,
//! so `(2 - 2 cos p)^alpha` is taken real nonnegative. The second factor uses
//! the principal logarithm, `(-z)^beta = exp(i beta sigma(p))` with
//! `sigma(p) = pi - p` for `p >= 0` and `sigma(p) = -pi - p` for `p < 0`.
//! The resulting `a` is continuous on the circle (in particular across
//! `p = +/-pi`, where sigma -> 0 from both sides) except at `z = 1`: for
//! `alpha > 0` the modulus vanishes there while the phase jumps by
//! `2 pi beta`; for `alpha = 0` the jump is a genuine discontinuity.

use crate::fft;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

/// |z| must be within this distance of 1 for on-circle evaluation.
const CIRCLE_TOL: f64 = 1e-12;
/// Grid-doubling stops once extrapolated coefficients move less than this.
const QUADRATURE_TOL: f64 = 1e-10;
const FFT_GRID_START: usize = 1 << 16;
const FFT_GRID_CAP: usize = 1 << 20;
/// Samples with modulus below this fail the winding-number zero check.
const WINDING_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymbolError {
    #[error("branch point: a(z) is not single-valued at z = 1 for alpha = {alpha}")]
    BranchPoint { alpha: f64 },
    #[error("|z| = {0} is off the unit circle beyond tolerance")]
    OffCircle(f64),
    #[error("Fourier grid doubling did not converge below {tol:.1e} at {grid} points (last change {change:.3e})")]
    Convergence { grid: usize, tol: f64, change: f64 },
    #[error("winding number: |f| = {0:.3e} too close to zero on the contour")]
    ZeroOnContour(f64),
    #[error("winding number: phase step {0:.3} >= pi, contour undersampled")]
    Undersampled(f64),
}

/// Fisher-Hartwig exponent pair: `alpha` controls the zero at `z = 1` and
/// `beta` the jump there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolParams {
    pub alpha: f64,
    pub beta: f64,
}

impl SymbolParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    /// The main-pipeline regime `0 < alpha < -beta < 1`; everything else is
    /// allowed for construction but flagged for the expansion pipeline.
    pub fn is_case_one(&self) -> bool {
        0.0 < self.alpha && self.alpha < -self.beta && -self.beta < 1.0
    }

    /// Laurent-polynomial family: nonnegative integer `alpha` with `beta = 0`.
    pub fn is_laurent(&self) -> bool {
        self.beta == 0.0 && self.alpha >= 0.0 && self.alpha.fract() == 0.0
    }

    /// Expansion parameter `lambda = n^{-(1+2 alpha)}`.
    pub fn lambda(&self, n: usize) -> f64 {
        (n as f64).powf(-(1.0 + 2.0 * self.alpha))
    }
}

/// One sample of the symbol on the circle: `z = e^{-ip}` and `a(z)`.
#[derive(Debug, Clone, Copy)]
pub struct SymbolSample {
    pub p: f64,
    pub z: Complex64,
    pub value: Complex64,
}

/// Fourier coefficients `T(k)` of the symbol for `|k| <= n_max`, with the
/// grid-doubling change retained as a quadrature error estimate.
#[derive(Debug, Clone)]
pub struct FourierCoeffs {
    n_max: usize,
    coeffs: Vec<Complex64>,
    pub quadrature_error: f64,
}

impl FourierCoeffs {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `T(k)`; zero outside `[-n_max, n_max]`.
    pub fn get(&self, k: i64) -> Complex64 {
        let n = self.n_max as i64;
        if k < -n || k > n {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + n) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.n_max as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - n, c))
    }

    /// Exact coefficients of a Laurent polynomial symbol (tests and toys).
    pub fn from_laurent(pairs: &[(i64, Complex64)]) -> Self {
        let n_max = pairs.iter().map(|&(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); 2 * n_max + 1];
        for &(k, v) in pairs {
            coeffs[(k + n_max as i64) as usize] += v;
        }
        Self { n_max, coeffs, quadrature_error: 0.0 }
    }
}

/// A symbol the pipeline can factorize: the Fisher-Hartwig family or a
/// Laurent polynomial (the latter mostly as closed-form test material).
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    FisherHartwig(SymbolParams),
    Laurent(Vec<(i64, Complex64)>),
}

impl Symbol {
    pub fn fisher_hartwig(alpha: f64, beta: f64) -> Self {
        Symbol::FisherHartwig(SymbolParams::new(alpha, beta))
    }

    pub fn params(&self) -> Option<SymbolParams> {
        match self {
            Symbol::FisherHartwig(p) => Some(*p),
            Symbol::Laurent(_) => None,
        }
    }

    /// Zero-strength exponent controlling the algebraic decay rates;
    /// 0 for Laurent polynomials (which have no circle singularity).
    pub fn alpha(&self) -> f64 {
        match self {
            Symbol::FisherHartwig(p) => p.alpha,
            Symbol::Laurent(_) => 0.0,
        }
    }

    pub fn is_case_one(&self) -> bool {
        matches!(self, Symbol::FisherHartwig(p) if p.is_case_one())
    }

    /// Expansion parameter `lambda = n^{-(1+2 alpha)}`.
    pub fn lambda(&self, n: usize) -> f64 {
        (n as f64).powf(-(1.0 + 2.0 * self.alpha()))
    }

    pub fn eval_at_momentum(&self, p: f64) -> Complex64 {
        match self {
            Symbol::FisherHartwig(params) => eval_symbol_at_momentum(*params, p),
            Symbol::Laurent(coeffs) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(k, c) in coeffs {
                    let ang = -(k as f64) * p; // z^k = e^{-ikp}
                    acc += c * Complex64::new(ang.cos(), ang.sin());
                }
                acc
            }
        }
    }

    /// Value and z-derivative of the analytic continuation off the circle.
    pub fn eval_analytic(&self, z: Complex64) -> (Complex64, Complex64) {
        match self {
            Symbol::FisherHartwig(params) => eval_symbol_analytic(*params, z),
            Symbol::Laurent(coeffs) => {
                let mut val = Complex64::new(0.0, 0.0);
                let mut der = Complex64::new(0.0, 0.0);
                for &(k, c) in coeffs {
                    let zp = z.powi(k as i32);
                    val += c * zp;
                    der += c * k as f64 * zp / z;
                }
                (val, der)
            }
        }
    }

    /// Exact or quadrature Fourier coefficients of the symbol.
    pub fn fourier_coeffs(&self, n_max: usize) -> Result<FourierCoeffs, SymbolError> {
        match self {
            Symbol::FisherHartwig(params) => fourier_coeffs(*params, n_max),
            Symbol::Laurent(coeffs) => Ok(FourierCoeffs::from_laurent(coeffs)),
        }
    }
}

fn sigma(p: f64) -> f64 {
    if p >= 0.0 {
        PI - p
    } else {
        -PI - p
    }
}

/// Evaluate the symbol at momentum `p` in `(-pi, pi]`, i.e. at `z = e^{-ip}`.
///
/// At `p = 0` this returns the limit 0 for `alpha > 0` and the `p -> 0+`
/// one-sided value for `alpha = 0`.
pub fn eval_symbol_at_momentum(params: SymbolParams, p: f64) -> Complex64 {
    let w = (2.0 - 2.0 * p.cos()).max(0.0);
    if w == 0.0 {
        if params.alpha > 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let phase = params.beta * PI;
        return Complex64::new(phase.cos(), phase.sin());
    }
    let modulus = if params.alpha == 0.0 { 1.0 } else { w.powf(params.alpha) };
    let phase = params.beta * sigma(p);
    Complex64::new(modulus * phase.cos(), modulus * phase.sin())
}

/// Evaluate the symbol at a point `z` on the unit circle.
pub fn eval_symbol(params: SymbolParams, z: Complex64) -> Result<Complex64, SymbolError> {
    let r = z.norm();
    if (r - 1.0).abs() > CIRCLE_TOL {
        return Err(SymbolError::OffCircle(r));
    }
    let p = -z.arg();
    if 2.0 - 2.0 * p.cos() <= 0.0 && !(params.alpha >= 0.0 && params.alpha.fract() == 0.0) {
        return Err(SymbolError::BranchPoint { alpha: params.alpha });
    }
    Ok(eval_symbol_at_momentum(params, p))
}

/// Analytic continuation of the symbol off the circle via principal
/// logarithms, together with its z-derivative. The branch cut lies along the
/// nonnegative real axis. Used for locating the zero of `K^>` outside the
/// unit circle.
pub(crate) fn eval_symbol_analytic(params: SymbolParams, z: Complex64) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let w1 = Complex64::new(2.0, 0.0) - z - one / z;
    let a = (params.alpha * w1.ln() + params.beta * (-z).ln()).exp();
    let da = a * (params.alpha * (one / (z * z) - one) / w1 + params.beta / z);
    (a, da)
}

/// `m` samples of `a(e^{-ip})` at uniformly spaced momenta `p = 2 pi k / m`
/// (wrapped into `(-pi, pi]`). For case-I parameters the samples trace a
/// closed curve through the origin.
pub fn symbol_image(params: SymbolParams, m: usize) -> Vec<SymbolSample> {
    assert!(m >= 4, "symbol_image needs at least 4 samples");
    (0..m)
        .map(|k| {
            let mut p = 2.0 * PI * k as f64 / m as f64;
            if p > PI {
                p -= 2.0 * PI;
            }
            SymbolSample {
                p,
                z: Complex64::new((-p).cos(), (-p).sin()),
                value: eval_symbol_at_momentum(params, p),
            }
        })
        .collect()
}

/// Winding number of a circle-sampled function traversed counterclockwise
/// in `z`: total argument change divided by `2 pi`.
pub fn winding_number(samples: &[Complex64]) -> Result<i64, SymbolError> {
    assert!(samples.len() >= 8, "winding_number needs at least 8 samples");
    let max_mod = samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = max_mod * WINDING_ZERO_TOL;
    let mut total = 0.0;
    for i in 0..samples.len() {
        let cur = samples[i];
        let next = samples[(i + 1) % samples.len()];
        if cur.norm() <= floor || cur.norm() == 0.0 {
            return Err(SymbolError::ZeroOnContour(cur.norm()));
        }
        let step = (next / cur).arg();
        if step.abs() >= PI * (1.0 - 1e-9) {
            return Err(SymbolError::Undersampled(step.abs()));
        }
        total += step;
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 1e-6 {
        return Err(SymbolError::Undersampled((winding - rounded).abs()));
    }
    Ok(rounded as i64)
}

/// Raw trapezoid-by-FFT coefficients on a half-shifted grid of `grid` points
/// (the shift keeps the singular node `p = 0` off the grid).
fn raw_coeffs(params: SymbolParams, n_max: usize, grid: usize) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = (0..grid)
        .map(|m| {
            let mut p = -PI + 2.0 * PI * (m as f64 + 0.5) / grid as f64;
            if p > PI {
                p -= 2.0 * PI;
            }
            eval_symbol_at_momentum(params, p)
        })
        .collect();
    // T(k) = (1/M) sum_m a(p_m) e^{i k p_m}; with p_m = -pi + 2 pi (m+1/2)/M
    // this is an inverse DFT bin times the twiddle e^{i k (-pi + pi/M)}.
    fft::inverse(&mut buf);
    let mut out = Vec::with_capacity(2 * n_max + 1);
    for k in -(n_max as i64)..=(n_max as i64) {
        let bin = k.rem_euclid(grid as i64) as usize;
        let ang = k as f64 * (-PI + PI / grid as f64);
        out.push(buf[bin] * Complex64::new(ang.cos(), ang.sin()));
    }
    out
}

/// Fourier coefficients `T(k) = (1/2 pi) int a(e^{-ip}) e^{ikp} dp` for
/// `|k| <= n_max`.
///
/// Trapezoid-by-FFT with Richardson extrapolation across grid doubling; the
/// weak `|p|^{2 alpha}` singularity at `p = 0` makes the raw trapezoid error
/// decay like `N^{-(1+2 alpha)}`, so one extrapolation level with that known
/// exponent converges fast. Doubling stops when extrapolated coefficients
/// move below 1e-10, with the grid capped at 2^20.
pub fn fourier_coeffs(params: SymbolParams, n_max: usize) -> Result<FourierCoeffs, SymbolError> {
    assert!(n_max >= 1, "fourier_coeffs requires n_max >= 1");
    let mut grid = FFT_GRID_START.max((8 * n_max).next_power_of_two());
    let rate = 2f64.powf(1.0 + 2.0 * params.alpha);
    let richardson = |coarse: &[Complex64], fine: &[Complex64]| -> (Vec<Complex64>, f64) {
        let mut out = Vec::with_capacity(fine.len());
        let mut corr: f64 = 0.0;
        for (c, f) in coarse.iter().zip(fine) {
            let delta = (f - c) / (rate - 1.0);
            corr = corr.max(delta.norm());
            out.push(f + delta);
        }
        (out, corr)
    };

    let mut coarse = raw_coeffs(params, n_max, grid);
    let mut fine = raw_coeffs(params, n_max, grid * 2);
    let (mut extrapolated, first_corr) = richardson(&coarse, &fine);
    let mut err_est = first_corr;
    while grid * 4 <= FFT_GRID_CAP {
        grid *= 2;
        coarse = std::mem::take(&mut fine);
        fine = raw_coeffs(params, n_max, grid * 2);
        let (next, _) = richardson(&coarse, &fine);
        let change = next
            .iter()
            .zip(&extrapolated)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        extrapolated = next;
        err_est = change;
        if change < QUADRATURE_TOL {
            return Ok(FourierCoeffs {
                n_max,
                coeffs: extrapolated,
                quadrature_error: change.max(1e-15),
            });
        }
    }
    if err_est > QUADRATURE_TOL {
        return Err(SymbolError::Convergence {
            grid: grid * 2,
            tol: QUADRATURE_TOL,
            change: err_est,
        });
    }
    Ok(FourierCoeffs { n_max, coeffs: extrapolated, quadrature_error: err_est.max(1e-15) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FH: SymbolParams = SymbolParams { alpha: 0.25, beta: -0.5 };

    #[test]
    fn eval_trivial_points() {
        let a = eval_symbol(SymbolParams::new(0.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
        assert!((a - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let b = eval_symbol(SymbolParams::new(1.0, 0.0), Complex64::new(-1.0, 0.0)).unwrap();
        assert!((b - Complex64::new(4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn eval_fh_pinned_value() {
        // z = e^{-i pi/2}: modulus 2^{1/4}, phase -pi/4 under the declared
        // branch, i.e. 2^{-1/4} (1 - i).
        let z = Complex64::new(0.0, -1.0);
        let got = eval_symbol(FH, z).unwrap();
        let want = Complex64::new(2f64.powf(-0.25), -(2f64.powf(-0.25)));
        assert!((got - want).norm() < 1e-14, "got {got}");
        // and it is the on-circle limit along p -> pi/2
        for dp in [1e-5, 1e-6] {
            for s in [-1.0, 1.0] {
                let p = PI / 2.0 + s * dp;
                let v = eval_symbol_at_momentum(FH, p);
                assert!((v - want).norm() < 1e-4);
            }
        }
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(
            eval_symbol(FH, Complex64::new(1.0, 0.0)),
            Err(SymbolError::BranchPoint { .. })
        ));
        assert!(matches!(
            eval_symbol(FH, Complex64::new(1.1, 0.0)),
            Err(SymbolError::OffCircle(_))
        ));
        // alpha a nonnegative integer is fine at z = 1
        assert!(eval_symbol(SymbolParams::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_ok());
    }

    #[test]
    fn continuity_across_pi() {
        // sigma changes sheet at p = +/-pi; the symbol must not jump there.
        let a = eval_symbol_at_momentum(FH, PI - 1e-9);
        let b = eval_symbol_at_momentum(FH, -PI + 1e-9);
        assert!((a - b).norm() < 1e-7);
    }

    #[test]
    fn fourier_identity_symbol() {
        let t = fourier_coeffs(SymbolParams::new(0.0, 0.0), 6).unwrap();
        for k in -6i64..=6 {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((t.get(k) - Complex64::new(want, 0.0)).norm() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn fourier_laurent_symbol() {
        let t = fourier_coeffs(SymbolParams::new(1.0, 0.0), 5).unwrap();
        assert!((t.get(0) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((t.get(1) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((t.get(-1) - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        for k in [2i64, -2, 3, -3, 4, -4, 5, -5] {
            assert!(t.get(k).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn fourier_reconstructs_symbol_away_from_singularity() {
        let n_max = 256;
        let t = fourier_coeffs(FH, n_max).unwrap();
        let tail_amp = t.get(n_max as i64).norm().max(t.get(-(n_max as i64)).norm());
        for m in 1..40 {
            let p = -PI + 0.1 + (2.0 * PI - 0.2) * m as f64 / 40.0;
            if p.abs() < 0.1 {
                continue; // stay an arc distance 0.1 away from z = 1
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in t.iter() {
                let ang = -(k as f64) * p; // z^k = e^{-ikp}
                acc += c * Complex64::new(ang.cos(), ang.sin());
            }
            let direct = eval_symbol_at_momentum(FH, p);
            // retained coefficients are good to the quadrature bound; the
            // discarded tail contributes an Abel-summation term ~ |T(n_max)|/|1-z|
            let tol = 10.0 * t.quadrature_error + 4.0 * tail_amp / (2.0 * (p / 2.0).sin().abs());
            assert!((acc - direct).norm() < tol, "p={p}: {} vs tol {tol}", (acc - direct).norm());
        }
    }

    #[test]
    fn hermitian_symmetry_iff_beta_zero() {
        let real_sym = fourier_coeffs(SymbolParams::new(0.4, 0.0), 8).unwrap();
        for k in 0..=8i64 {
            assert!((real_sym.get(-k) - real_sym.get(k).conj()).norm() < 1e-10);
        }
        let fh = fourier_coeffs(FH, 4).unwrap();
        assert!((fh.get(-1) - fh.get(1).conj()).norm() > 1e-2);
    }

    #[test]
    fn image_trivial_and_laurent() {
        let flat = symbol_image(SymbolParams::new(0.0, 0.0), 8);
        for s in &flat {
            assert!((s.value - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            assert!((s.z.norm() - 1.0).abs() < 1e-14);
        }
        let lap = symbol_image(SymbolParams::new(1.0, 0.0), 4);
        let want = [0.0, 2.0, 4.0, 2.0];
        for (s, w) in lap.iter().zip(want) {
            assert!((s.value - Complex64::new(w, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn image_closed_curve_winding() {
        let samples = symbol_image(FH, 256);
        let n = samples.len();
        // closed curve: endpoints both approach the origin
        assert!(samples[0].value.norm() < 1e-12);
        let centroid = samples.iter().map(|s| s.value).sum::<Complex64>() / n as f64;
        // traversal in increasing p is clockwise in z; reverse for the
        // counterclockwise-in-z contract, which must report -1, i.e. +1 in p.
        let rev: Vec<Complex64> = samples.iter().rev().map(|s| s.value - centroid).collect();
        assert_eq!(winding_number(&rev).unwrap(), -1);
    }

    #[test]
    fn image_depends_only_on_beta_magnitude() {
        // case II mirror: the traced point set for beta and -beta coincides
        // (a_{-beta}(p) = a_{beta}(-p)), resolving the sign ambiguity in
        // favor of |beta|.
        let m = 512;
        let plus = symbol_image(SymbolParams::new(0.25, 0.5), m);
        let minus = symbol_image(FH, m);
        for (i, s) in plus.iter().enumerate() {
            let mirror = &minus[(m - i) % m];
            assert!((s.value - mirror.value).norm() < 1e-12);
        }
    }

    #[test]
    fn winding_of_powers() {
        let m = 512;
        let grid: Vec<Complex64> = (0..m)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / m as f64;
                Complex64::new(th.cos(), th.sin())
            })
            .collect();
        assert_eq!(winding_number(&grid).unwrap(), 1);
        let inv: Vec<Complex64> = grid.iter().map(|z| 1.0 / z).collect();
        assert_eq!(winding_number(&inv).unwrap(), -1);
    }

    #[test]
    fn winding_of_shifted_symbol_is_minus_one() {
        // argument-principle count for a(z) - eps on a 2^14-point grid,
        // eps interior to the image
        let m = 1 << 14;
        let eps = Complex64::new(0.9, -0.3);
        let f: Vec<Complex64> = (0..m)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / m as f64;
                let mut p = -th;
                if p <= -PI {
                    p += 2.0 * PI;
                }
                eval_symbol_at_momentum(FH, p) - eps
            })
            .collect();
        assert_eq!(winding_number(&f).unwrap(), -1);
    }

    #[test]
    fn winding_errors() {
        let m = 64;
        let with_zero: Vec<Complex64> = (0..m)
            .map(|i| {
                if i == 10 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
            .collect();
        assert!(matches!(winding_number(&with_zero), Err(SymbolError::ZeroOnContour(_))));
        // z^32 on 64 samples: phase step exactly pi, ambiguous direction
        let fast: Vec<Complex64> = (0..m)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / m as f64 * 32.0;
                Complex64::new(th.cos(), th.sin())
            })
            .collect();
        assert!(matches!(winding_number(&fast), Err(SymbolError::Undersampled(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn conjugation_symmetry_for_real_symbols(alpha in 0.1f64..0.9, idx in 1usize..255) {
            // beta = 0 makes a real on the circle: a(conj z) = conj(a(z))
            let params = SymbolParams::new(alpha, 0.0);
            let p = -PI + 2.0 * PI * (idx as f64 + 0.5) / 256.0;
            let a = eval_symbol_at_momentum(params, p);
            let b = eval_symbol_at_momentum(params, -p);
            prop_assert!((a - b.conj()).norm() < 1e-13);
        }

        #[test]
        fn winding_invariant_under_positive_multiplier(
            seed in 0u64..1000,
            k in -2i64..3,
        ) {
            let m = 1024;
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut rand = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) as f64 / (1u64 << 31) as f64 - 1.0
            };
            let (c1, c2, c3) = (rand(), rand(), rand());
            let f: Vec<Complex64> = (0..m)
                .map(|i| {
                    let th = 2.0 * PI * i as f64 / m as f64;
                    let z = Complex64::new(th.cos(), th.sin());
                    let zp = z.powi(k as i32);
                    // positive real circle function
                    let mult = 1.5 + c1 * th.sin() * 0.3 + c2 * (2.0 * th).cos() * 0.2 + c3 * 0.1;
                    zp * mult
                })
                .collect();
            prop_assert_eq!(winding_number(&f).unwrap(), k);
        }
    }
}
