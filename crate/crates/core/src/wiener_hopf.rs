//! Wiener-Hopf factorization of `K(z) = a(z) - eps` into
//! `K^>(z) / (z K^<(z))` and the semi-infinite (Toeplitz-operator) solution.
//!
//! The split is computed on a circle grid: with the winding carried by the
//! explicit `z`, `G(z) = z K(z)` has winding zero, so `log G` is single
//! valued; its nonnegative-power part exponentiates to `K^>` and the
//! negative-power part to `1/K^<`. Grid doubling with Richardson
//! extrapolation (known error exponent `1 + 2 alpha` from the `|p|^{2 alpha}`
//! cusp at `z = 1`) pins every retained coefficient. The normalization puts
//! the constant term of `log G` into `K^>`, so `K^<(inf) = 1`. Kernels whose
//! winding is not -1 are factorized without the explicit `z` power moved in
//! Eq-style bookkeeping (the winding is carried verbatim) and flagged
//! non-canonical; the expansion pipeline refuses them.

use crate::series::{convolve, IndexedSequence};
use crate::symbol::{winding_number, FourierCoeffs, Symbol, SymbolError, SymbolParams};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// eps counts as on the image when min |K| over the probe grid falls below
/// this many grid spacings (scale-free via the max |K| normalization).
const ON_IMAGE_GRID_FACTOR: f64 = 8.0;
/// Extrapolated-coefficient disagreement above which the split is rejected.
const SPLIT_TOL: f64 = 1e-6;
/// Newton tolerance on the zero of K^> reported outside the circle.
const ZC_TOL: f64 = 1e-9;
const ZC_SEED_ANGLES: usize = 64;
const ZC_RADII: [f64; 6] = [1.001, 1.01, 1.05, 1.15, 1.4, 2.0];

#[derive(Debug, Clone, Error)]
pub enum FactorizeError {
    #[error("eps = {eps} lies on the image of the symbol (min |K| / max |K| = {ratio:.3e})")]
    OnImage { eps: Complex64, ratio: f64 },
    #[error("winding mismatch: case-I parameters but winding(K) = {0}, expected -1")]
    WindingMismatch(i64),
    #[error("log-split grid doubling left coefficient disagreement {change:.3e} > {tol:.1e} at grid {grid}")]
    Convergence { grid: usize, change: f64, tol: f64 },
    #[error("factorization stores {stored} coefficients, {requested} requested")]
    StoreTooShort { stored: usize, requested: usize },
    #[error("non-canonical factorization (winding {0}), operator solution undefined")]
    NonCanonical(i64),
    #[error("asymptotic fit basis is numerically collinear on the window (gram ratio {0:.3e})")]
    FitDegenerate(f64),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}

/// The shifted kernel `K(j,k) = T(j-k) - eps delta(j,k)`.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub symbol: Symbol,
    pub epsilon: Complex64,
    pub t: FourierCoeffs,
    pub n: usize,
}

impl Kernel {
    /// Fisher-Hartwig kernel; `t` should extend to about `4 n` for the
    /// downstream truncated convolutions.
    pub fn new(params: SymbolParams, epsilon: Complex64, t: FourierCoeffs, n: usize) -> Self {
        Self { symbol: Symbol::FisherHartwig(params), epsilon, t, n }
    }

    /// Laurent-polynomial kernel with exact coefficients.
    pub fn laurent(coeffs: Vec<(i64, Complex64)>, epsilon: Complex64, n: usize) -> Self {
        let t = FourierCoeffs::from_laurent(&coeffs);
        Self { symbol: Symbol::Laurent(coeffs), epsilon, t, n }
    }

    pub fn from_symbol(
        symbol: Symbol,
        epsilon: Complex64,
        n: usize,
        n_max: usize,
    ) -> Result<Self, SymbolError> {
        let t = symbol.fourier_coeffs(n_max)?;
        Ok(Self { symbol, epsilon, t, n })
    }

    /// Kernel coefficient `K(m) = T(m) - eps delta(m, 0)`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        if m == 0 {
            self.t.get(0) - self.epsilon
        } else {
            self.t.get(m)
        }
    }

    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        self.coeff(j as i64 - k as i64)
    }
}

/// The split `K = K^> z^w / K^<` with retained coefficient sequences; the
/// canonical case is `w = -1` (case I), anything else is flagged.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub symbol: Symbol,
    pub epsilon: Complex64,
    /// `K^>` coefficients on `[0, m]`.
    pub k_gt: IndexedSequence,
    /// `K^<` coefficients on `[-m, 0]`.
    pub k_lt: IndexedSequence,
    /// `1/K^>` coefficients on `[0, m]`.
    pub inv_k_gt: IndexedSequence,
    /// `1/K^<` coefficients on `[-m, 0]`.
    pub inv_k_lt: IndexedSequence,
    /// Zero of (the continuation of) `K^>` outside the unit circle.
    pub z_c: Option<Complex64>,
    pub winding: i64,
    pub canonical: bool,
    /// Max relative error of the reconstructed product on the check grid,
    /// combined with the causality leak of the split spectra.
    pub recon_error: f64,
    /// Elementwise change of the extrapolated coefficients across the final
    /// grid doubling.
    pub coeff_delta: f64,
    pub grid_size: usize,
}

impl Factorization {
    /// `(1/K^>)(j)`; zero for negative `j`, panics past the stored window.
    pub fn inv_gt(&self, j: i64) -> Complex64 {
        if j < 0 {
            Complex64::new(0.0, 0.0)
        } else {
            assert!(j <= self.inv_k_gt.hi(), "1/K^> index {j} beyond stored window");
            self.inv_k_gt.get(j)
        }
    }

    /// `(1/K^<)(j)`; zero for positive `j`.
    pub fn inv_lt(&self, j: i64) -> Complex64 {
        if j > 0 {
            Complex64::new(0.0, 0.0)
        } else {
            assert!(j >= self.inv_k_lt.lo(), "1/K^< index {j} beyond stored window");
            self.inv_k_lt.get(j)
        }
    }

    pub fn stored_len(&self) -> usize {
        self.inv_k_gt.len()
    }

    /// `p_c` with `z_c = e^{i p_c}`; complex, `Im(p_c) = -ln |z_c| < 0`.
    pub fn p_c(&self) -> Option<Complex64> {
        self.z_c.map(|z| {
            let l = z.ln();
            Complex64::new(l.im, -l.re)
        })
    }
}

struct GridSplit {
    k_gt: Vec<Complex64>,
    k_lt: Vec<Complex64>,
    inv_k_gt: Vec<Complex64>,
    inv_k_lt: Vec<Complex64>,
    recon: f64,
    leak: f64,
}

/// One split at a fixed grid size; `shift` is the winding moved into an
/// explicit power of z, so `G = z^{-shift} K` has winding zero on the grid.
fn split_at_grid(
    symbol: &Symbol,
    epsilon: Complex64,
    grid: usize,
    shift: i64,
    store: usize,
) -> GridSplit {
    let mut kvals = Vec::with_capacity(grid);
    for m in 0..grid {
        let theta = 2.0 * PI * m as f64 / grid as f64;
        let mut p = -theta;
        if p <= -PI {
            p += 2.0 * PI;
        }
        kvals.push(symbol.eval_at_momentum(p) - epsilon);
    }
    // log G with a continuous branch: unwrap the phase around the circle
    let mut logs = Vec::with_capacity(grid);
    let mut prev_arg = 0.0f64;
    let mut offset = 0.0f64;
    for (m, kv) in kvals.iter().enumerate() {
        let theta = 2.0 * PI * m as f64 / grid as f64;
        let ang = -theta * shift as f64;
        let g = kv * Complex64::new(ang.cos(), ang.sin());
        let raw = g.arg();
        if m == 0 {
            prev_arg = raw;
        } else {
            let mut d = raw + offset - prev_arg;
            while d > PI {
                offset -= 2.0 * PI;
                d -= 2.0 * PI;
            }
            while d < -PI {
                offset += 2.0 * PI;
                d += 2.0 * PI;
            }
            prev_arg = raw + offset;
        }
        logs.push(Complex64::new(g.norm().ln(), prev_arg));
    }
    let mut spectrum = logs.clone();
    crate::fft::forward(&mut spectrum);
    let mut l_plus = spectrum;
    for v in l_plus.iter_mut().skip(grid / 2) {
        *v = Complex64::new(0.0, 0.0);
    }
    crate::fft::inverse(&mut l_plus);
    let l_minus: Vec<Complex64> = logs.iter().zip(&l_plus).map(|(l, p)| l - p).collect();

    let gt_grid: Vec<Complex64> = l_plus.iter().map(|l| l.exp()).collect();
    let inv_gt_grid: Vec<Complex64> = l_plus.iter().map(|l| (-l).exp()).collect();
    let lt_grid: Vec<Complex64> = l_minus.iter().map(|l| (-l).exp()).collect();
    let inv_lt_grid: Vec<Complex64> = l_minus.iter().map(|l| l.exp()).collect();

    // reconstruction check on the grid: K^> z^shift / K^< against K
    let mut recon = 0.0f64;
    let step = (grid / 4096).max(1);
    for m in (0..grid).step_by(step) {
        let theta = 2.0 * PI * m as f64 / grid as f64;
        let ang = theta * shift as f64;
        let zs = Complex64::new(ang.cos(), ang.sin());
        let prod = gt_grid[m] * zs * inv_lt_grid[m];
        let denom = kvals[m].norm().max(1e-30);
        recon = recon.max((prod - kvals[m]).norm() / denom);
    }

    let extract = |vals: &[Complex64], negative: bool| -> (Vec<Complex64>, f64) {
        let mut buf = vals.to_vec();
        crate::fft::forward(&mut buf);
        let scale = 1.0 / grid as f64;
        let coeffs: Vec<Complex64> = (0..store)
            .map(|s| {
                let bin = if negative { (grid - s) % grid } else { s };
                buf[bin] * scale
            })
            .collect();
        // causality leak: mass on the wrong side of the spectrum
        let mut leak = 0.0f64;
        for probe in 1..64 {
            let bin = if negative { probe } else { grid - probe };
            leak = leak.max(buf[bin].norm() * scale);
        }
        (coeffs, leak)
    };
    let (k_gt, leak_a) = extract(&gt_grid, false);
    let (inv_k_gt, leak_b) = extract(&inv_gt_grid, false);
    let (k_lt, leak_c) = extract(&lt_grid, true);
    let (inv_k_lt, leak_d) = extract(&inv_lt_grid, true);
    GridSplit {
        k_gt,
        k_lt,
        inv_k_gt,
        inv_k_lt,
        recon,
        leak: leak_a.max(leak_b).max(leak_c).max(leak_d),
    }
}

/// Factorize the kernel on a circle grid of `grid_size` points (a power of
/// two >= 2^12). The split runs at `grid_size / 2` and `grid_size` and the
/// coefficient arrays are Richardson-extrapolated across the pair.
pub fn factorize(kernel: &Kernel, grid_size: usize) -> Result<Factorization, FactorizeError> {
    assert!(
        grid_size.is_power_of_two() && grid_size >= (1 << 12),
        "grid_size must be a power of two >= 4096"
    );
    let symbol = &kernel.symbol;
    let epsilon = kernel.epsilon;

    // winding and on-image check on the coarse grid
    let probe = grid_size / 2;
    let mut kvals = Vec::with_capacity(probe);
    let mut min_mod = f64::INFINITY;
    let mut max_mod = 0.0f64;
    for m in 0..probe {
        let theta = 2.0 * PI * m as f64 / probe as f64;
        let mut p = -theta;
        if p <= -PI {
            p += 2.0 * PI;
        }
        let v = symbol.eval_at_momentum(p) - epsilon;
        min_mod = min_mod.min(v.norm());
        max_mod = max_mod.max(v.norm());
        kvals.push(v);
    }
    if min_mod / max_mod < ON_IMAGE_GRID_FACTOR / probe as f64 {
        return Err(FactorizeError::OnImage { eps: epsilon, ratio: min_mod / max_mod });
    }
    // a phase step >= pi on the probe also means K passes too close to zero
    let winding = winding_number(&kvals).map_err(|e| match e {
        SymbolError::ZeroOnContour(r) => FactorizeError::OnImage { eps: epsilon, ratio: r },
        SymbolError::Undersampled(_) => {
            FactorizeError::OnImage { eps: epsilon, ratio: min_mod / max_mod }
        }
        other => FactorizeError::Symbol(other),
    })?;
    if symbol.is_case_one() && winding != -1 {
        return Err(FactorizeError::WindingMismatch(winding));
    }
    let canonical = winding == -1;

    // The top end of the stored window sits near the coarse grid's Nyquist
    // bin where aliasing is not small; store a quarter of the coarse grid so
    // downstream use stays well inside the accurate range.
    let store = grid_size / 8;
    let coarse = split_at_grid(symbol, epsilon, grid_size / 2, winding, store);
    let fine = split_at_grid(symbol, epsilon, grid_size, winding, store);

    let rate = 2f64.powf(1.0 + 2.0 * symbol.alpha().max(0.0));
    let mut coeff_delta = 0.0f64;
    let extrapolate = |c: &[Complex64], f: &[Complex64], delta: &mut f64| -> Vec<Complex64> {
        c.iter()
            .zip(f)
            .map(|(cv, fv)| {
                let corr = (fv - cv) / (rate - 1.0);
                *delta = delta.max(corr.norm());
                fv + corr
            })
            .collect()
    };
    let k_gt = extrapolate(&coarse.k_gt, &fine.k_gt, &mut coeff_delta);
    let k_lt = extrapolate(&coarse.k_lt, &fine.k_lt, &mut coeff_delta);
    let inv_k_gt = extrapolate(&coarse.inv_k_gt, &fine.inv_k_gt, &mut coeff_delta);
    let inv_k_lt = extrapolate(&coarse.inv_k_lt, &fine.inv_k_lt, &mut coeff_delta);
    if coeff_delta > SPLIT_TOL {
        return Err(FactorizeError::Convergence {
            grid: grid_size,
            change: coeff_delta,
            tol: SPLIT_TOL,
        });
    }

    // tail bounds from the fitted algebraic decay |c_j| ~ A j^{-(1+2 alpha)},
    // with the amplitude read off at 3/4 of the window (the very top sits
    // closer to the coarse grid's aliasing region)
    let tail_of = |coeffs: &[Complex64]| -> f64 {
        let m = coeffs.len();
        let q = (3 * m / 4).max(1);
        let exponent = 2.0 * symbol.alpha().max(0.025);
        let amp = coeffs[q].norm() * (q as f64).powf(1.0 + exponent);
        amp * (m as f64).powf(-exponent) / exponent
    };
    let mk = |coeffs: Vec<Complex64>, negative: bool| -> IndexedSequence {
        let tail = tail_of(&coeffs);
        if negative {
            let lo = -(coeffs.len() as i64 - 1);
            IndexedSequence::with_tail(lo, coeffs.into_iter().rev().collect(), tail)
        } else {
            IndexedSequence::with_tail(0, coeffs, tail)
        }
    };

    let z_c = if canonical { locate_zc(symbol, epsilon) } else { None };
    let recon_error = fine.recon.max(fine.leak);

    Ok(Factorization {
        symbol: symbol.clone(),
        epsilon,
        k_gt: mk(k_gt, false),
        k_lt: mk(k_lt, true),
        inv_k_gt: mk(inv_k_gt, false),
        inv_k_lt: mk(inv_k_lt, true),
        z_c,
        winding,
        canonical,
        recon_error,
        coeff_delta,
        grid_size,
    })
}

/// The zero of `K^>` outside the unit circle. The canonical `K^> = exp(L^+)`
/// cannot vanish on its own series domain; its analytic continuation beyond
/// the circle satisfies `K^>(z) = z (a(z) - eps) K^<(z)` with `K^<`
/// convergent and nonvanishing for |z| > 1, so `z_c` is located as the root
/// of `a(z) = eps` by Newton iteration seeded on annulus rings.
fn locate_zc(symbol: &Symbol, epsilon: Complex64) -> Option<Complex64> {
    let mut best: Option<Complex64> = None;
    let mut seeds: Vec<Complex64> = Vec::new();
    for &r in &ZC_RADII {
        let mut local_best = (f64::INFINITY, Complex64::new(0.0, 0.0));
        for k in 0..ZC_SEED_ANGLES {
            let th = 2.0 * PI * (k as f64 + 0.5) / ZC_SEED_ANGLES as f64;
            let z = Complex64::new(r * th.cos(), r * th.sin());
            let (a, _) = symbol.eval_analytic(z);
            let err = (a - epsilon).norm();
            if err.is_finite() && err < local_best.0 {
                local_best = (err, z);
            }
        }
        seeds.push(local_best.1);
    }
    for seed in seeds {
        let mut z = seed;
        let mut ok = false;
        for _ in 0..80 {
            let (a, da) = symbol.eval_analytic(z);
            if !a.is_finite() || da.norm() < 1e-16 {
                break;
            }
            let mut step = (a - epsilon) / da;
            if step.norm() > 0.25 {
                step *= 0.25 / step.norm();
            }
            // damp steps that would leave the exterior: the continuation
            // zero lies strictly outside the circle
            let mut tentative = z - step;
            let mut halvings = 0;
            while tentative.norm() < 1.0 && halvings < 12 {
                step *= 0.5;
                tentative = z - step;
                halvings += 1;
            }
            z = tentative;
            if z.norm() > 8.0 {
                break;
            }
            if step.norm() < 1e-14 {
                ok = true;
                break;
            }
        }
        if !ok {
            continue;
        }
        let (a, _) = symbol.eval_analytic(z);
        if (a - epsilon).norm() < ZC_TOL && z.norm() > 1.0 + 1e-9 && z.norm() < 4.0 {
            match best {
                Some(b) if z.norm() >= b.norm() => {}
                _ => best = Some(z),
            }
        }
    }
    best
}

/// Evaluate the continuation of `K^>` at a point strictly outside the unit
/// circle through `K^>(z) = z^{1 - w} (a(z) - eps) K^<(z)` (canonical
/// `w = -1` gives the familiar `z (a - eps) K^<`).
pub fn eval_k_gt_outside(fact: &Factorization, z: Complex64) -> Complex64 {
    let (a, _) = fact.symbol.eval_analytic(z);
    let mut klt = Complex64::new(0.0, 0.0);
    let mut zpow = Complex64::new(1.0, 0.0);
    for s in 0..fact.k_lt.len() as i64 {
        klt += fact.k_lt.get(-s) * zpow;
        zpow /= z;
    }
    z.powi(-fact.winding as i32) * (a - fact.epsilon) * klt
}

/// The infinite-n solution: `Psi(j) = C (1/K^>)(j)` and
/// `Phi^-(j) = C (1/K^<)(j+1)` with `C = 1`.
#[derive(Debug, Clone)]
pub struct OperatorSolution {
    pub psi_inf: IndexedSequence,
    pub phi_minus_inf: IndexedSequence,
    pub c: Complex64,
}

pub fn operator_solution(
    fact: &Factorization,
    j_max: usize,
) -> Result<OperatorSolution, FactorizeError> {
    if !fact.canonical {
        return Err(FactorizeError::NonCanonical(fact.winding));
    }
    if j_max + 1 > fact.stored_len() {
        return Err(FactorizeError::StoreTooShort {
            stored: fact.stored_len(),
            requested: j_max + 1,
        });
    }
    let psi = fact.inv_k_gt.restricted(0, j_max as i64);
    let phi: Vec<Complex64> = (-(j_max as i64)..=-1).map(|j| fact.inv_lt(j + 1)).collect();
    Ok(OperatorSolution {
        psi_inf: psi,
        phi_minus_inf: IndexedSequence::with_tail(
            -(j_max as i64),
            phi,
            fact.inv_k_lt.tail_bound(),
        ),
        c: Complex64::new(1.0, 0.0),
    })
}

/// Residual of the semi-infinite eigen-equation
/// `sum_k T(j-k) Psi(k) - eps Psi(j)` over `j in [0, j_hi]`, relative to
/// `max |Psi|`.
pub fn operator_residual(
    sol: &OperatorSolution,
    t: &FourierCoeffs,
    epsilon: Complex64,
    j_hi: usize,
) -> f64 {
    let psi = &sol.psi_inf;
    let mut worst = 0.0f64;
    for j in 0..=j_hi as i64 {
        let mut acc = -epsilon * psi.get(j);
        let k_lo = (j - t.n_max() as i64).max(0);
        let k_hi = (j + t.n_max() as i64).min(psi.hi());
        for k in k_lo..=k_hi {
            acc += t.get(j - k) * psi.get(k);
        }
        worst = worst.max(acc.norm());
    }
    worst / psi.max_norm()
}

/// Least-squares amplitudes of the large-j form
/// `Psi(j) ~ A^> j^{-(1+2 alpha)} + B z_c^{-j}` on `[j_max/2, j_max]`, and
/// `Phi^-(-j) ~ A^< j^{-(1+2 alpha)}`.
#[derive(Debug, Clone)]
pub struct AsymptoticFit {
    pub a_gt: Complex64,
    pub b: Complex64,
    pub a_lt: Complex64,
    pub fit_residual: f64,
}

pub fn fit_asymptotics(
    sol: &OperatorSolution,
    fact: &Factorization,
) -> Result<AsymptoticFit, FactorizeError> {
    let j_max = sol.psi_inf.hi();
    let j_lo = j_max / 2;
    assert!(j_max - j_lo + 1 >= 20, "fit window needs at least 20 points");
    let z_c = fact.z_c.ok_or(FactorizeError::NonCanonical(fact.winding))?;
    let expo = -(1.0 + 2.0 * fact.symbol.alpha());

    // complex linear least squares on the two basis functions
    let basis_alg = |j: i64| Complex64::new((j as f64).powf(expo), 0.0);
    let basis_exp = |j: i64| z_c.powf(-(j as f64));
    let mut g11 = Complex64::new(0.0, 0.0);
    let mut g12 = Complex64::new(0.0, 0.0);
    let mut g22 = Complex64::new(0.0, 0.0);
    let mut r1 = Complex64::new(0.0, 0.0);
    let mut r2 = Complex64::new(0.0, 0.0);
    for j in j_lo..=j_max {
        let (b1, b2) = (basis_alg(j), basis_exp(j));
        let y = sol.psi_inf.get(j);
        g11 += b1.conj() * b1;
        g12 += b1.conj() * b2;
        g22 += b2.conj() * b2;
        r1 += b1.conj() * y;
        r2 += b2.conj() * y;
    }
    let det = g11 * g22 - g12 * g12.conj();
    let scale = (g11.norm() * g22.norm()).max(1e-300);
    // collinear basis: the gram determinant collapses relative to its scale
    if det.norm() / scale < 1e-10 {
        return Err(FactorizeError::FitDegenerate(det.norm() / scale));
    }
    let a_gt = (r1 * g22 - g12 * r2) / det;
    let b = (g11 * r2 - g12.conj() * r1) / det;

    let mut fit_residual = 0.0f64;
    let mut ref_scale = 0.0f64;
    for j in j_lo..=j_max {
        let fit = a_gt * basis_alg(j) + b * basis_exp(j);
        fit_residual = fit_residual.max((sol.psi_inf.get(j) - fit).norm());
        ref_scale = ref_scale.max(sol.psi_inf.get(j).norm());
    }
    fit_residual /= ref_scale.max(1e-300);

    // Phi^-(-j) ~ A^< j^{-(1+2 alpha)}: single-basis least squares
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0f64;
    for j in j_lo..=j_max.min(-sol.phi_minus_inf.lo()) {
        let b1 = (j as f64).powf(expo);
        num += sol.phi_minus_inf.get(-j) * b1;
        den += b1 * b1;
    }
    let a_lt = num / den.max(1e-300);

    Ok(AsymptoticFit { a_gt, b, a_lt, fit_residual })
}

/// Consistency check `K^> * (1/K^>) = delta` (and the anticausal mirror),
/// evaluated over `[0, count]`; returns the max deviation.
pub fn inverse_identity_error(fact: &Factorization, count: usize) -> f64 {
    let conv_gt = convolve(&fact.k_gt, &fact.inv_k_gt, 0, count as i64);
    let conv_lt = convolve(&fact.k_lt, &fact.inv_k_lt, -(count as i64), 0);
    let mut worst = 0.0f64;
    for j in 0..=count as i64 {
        let want = if j == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
        worst = worst.max((conv_gt.get(j) - want).norm());
        worst = worst.max((conv_lt.get(-j) - want).norm());
    }
    worst
}
