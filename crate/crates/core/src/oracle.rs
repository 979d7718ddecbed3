//! Ground truth at desk scale: the literal dense Toeplitz matrix and a
//! self-contained dense complex eigensolver (balancing, Householder
//! Hessenberg reduction, Wilkinson-shifted QR, inverse iteration). No
//! external linear-algebra dependency, so every reported spectrum is
//! auditable down to this file.

use crate::series::IndexedSequence;
use crate::symbol::{fourier_coeffs, FourierCoeffs, SymbolParams};
use num_complex::Complex64;
use thiserror::Error;

const MAX_DENSE_N: usize = 2048;
const MAX_SPECTRUM_N: usize = 512;
/// QR gives up after this many iterations per matrix dimension.
const QR_ITER_PER_N: usize = 30;
const EXCEPTIONAL_SHIFT_PERIOD: usize = 10;

#[derive(Debug, Clone, Error)]
pub enum OracleError {
    #[error("dense matrix guard: n = {0} exceeds {MAX_DENSE_N}")]
    TooLargeDense(usize),
    #[error("full-spectrum guard: n = {0} exceeds {MAX_SPECTRUM_N}")]
    TooLargeSpectrum(usize),
    #[error("QR stalled after {iterations} iterations with {deflated} of {n} eigenvalues deflated")]
    QrStall { iterations: usize, deflated: usize, n: usize, partial: Vec<Complex64> },
    #[error("zero eigenvector candidate (max |psi| = {0:.3e})")]
    ZeroVector(f64),
    #[error(transparent)]
    Symbol(#[from] crate::symbol::SymbolError),
}

/// The n x n matrix with entries `T(j - k)`.
#[derive(Debug, Clone)]
pub struct DenseToeplitz {
    pub n: usize,
    entries: Vec<Complex64>,
    pub quadrature_error: f64,
}

impl DenseToeplitz {
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn from_coeffs(t: &FourierCoeffs, n: usize) -> Result<Self, OracleError> {
        if n > MAX_DENSE_N {
            return Err(OracleError::TooLargeDense(n));
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..n {
                entries[j * n + k] = t.get(j as i64 - k as i64);
            }
        }
        Ok(Self { n, entries, quadrature_error: t.quadrature_error })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let row = &self.entries[j * n..(j + 1) * n];
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(v) {
                acc += a * b;
            }
            out[j] = acc;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|j| self.get(j, j)).sum()
    }

    /// Max row sum of absolute values (infinity norm).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|j| {
                self.entries[j * self.n..(j + 1) * self.n]
                    .iter()
                    .map(|c| c.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Assemble the dense matrix from the symbol's Fourier coefficients.
pub fn build_dense(params: SymbolParams, n: usize) -> Result<DenseToeplitz, OracleError> {
    if n > MAX_DENSE_N {
        return Err(OracleError::TooLargeDense(n));
    }
    let t = fourier_coeffs(params, n.max(1))?;
    DenseToeplitz::from_coeffs(&t, n)
}

/// Full spectrum of a dense matrix with per-eigenvalue backward errors.
#[derive(Debug, Clone)]
pub struct OracleSpectrum {
    pub eigenvalues: Vec<Complex64>,
    pub backward_errors: Vec<f64>,
}

/// All n eigenvalues via the self-contained QR pipeline, sorted by
/// (re, im); backward errors from recomputed inverse-iteration eigenvectors.
pub fn dense_spectrum(t: &DenseToeplitz) -> Result<OracleSpectrum, OracleError> {
    if t.n > MAX_SPECTRUM_N {
        return Err(OracleError::TooLargeSpectrum(t.n));
    }
    let mut eigenvalues = complex_eigenvalues(&t.entries, t.n)?;
    eigenvalues.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
    });
    let norm = t.norm_inf();
    let mut backward_errors = Vec::with_capacity(t.n);
    for &ev in &eigenvalues {
        let v = eigenvector(t, ev)?;
        let av = t.apply(&v);
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, x) in av.iter().zip(&v) {
            num += (a - ev * x).norm_sqr();
            den += x.norm_sqr();
        }
        backward_errors.push((num / den).sqrt() / norm.max(1e-300));
    }
    Ok(OracleSpectrum { eigenvalues, backward_errors })
}

/// Relative residual `max_j |sum_k T(j-k) psi(k) - eps psi(j)| / max |psi|`
/// of a candidate eigenpair against the literal dense matrix.
pub fn residual(
    t: &DenseToeplitz,
    epsilon: Complex64,
    psi: &IndexedSequence,
) -> Result<f64, OracleError> {
    let scale = psi.max_norm();
    if scale < 1e-300 {
        return Err(OracleError::ZeroVector(scale));
    }
    let n = t.n;
    let mut worst = 0.0f64;
    for j in 0..n {
        let mut acc = -epsilon * psi.get(j as i64);
        for k in 0..n {
            acc += t.get(j, k) * psi.get(k as i64);
        }
        worst = worst.max(acc.norm());
    }
    Ok(worst / scale)
}

// ---------------------------------------------------------------------------
// dense complex eigensolver internals
// ---------------------------------------------------------------------------

fn complex_eigenvalues(a: &[Complex64], n: usize) -> Result<Vec<Complex64>, OracleError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![a[0]]);
    }
    let mut h = a.to_vec();
    balance(&mut h, n);
    hessenberg(&mut h, n);
    qr_eigenvalues(&mut h, n)
}

/// Parlett-Reinsch balancing by radix-2 diagonal similarity.
fn balance(a: &mut [Complex64], n: usize) {
    const RADIX: f64 = 2.0;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c: f64 = (0..n).filter(|&j| j != i).map(|j| a[j * n + i].norm()).sum();
            let mut r: f64 = (0..n).filter(|&j| j != i).map(|j| a[i * n + j].norm()).sum();
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / RADIX {
                c *= RADIX;
                r /= RADIX;
                f *= RADIX;
            }
            while c >= r * RADIX {
                c /= RADIX;
                r *= RADIX;
                f /= RADIX;
            }
            if (c + r) < 0.95 * s {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= inv;
                    a[j * n + i] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form (eigenvalues
/// only; transformations are not accumulated).
fn hessenberg(a: &mut [Complex64], n: usize) {
    for col in 0..n.saturating_sub(2) {
        let norm_x: f64 = (col + 1..n).map(|i| a[i * n + col].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = a[(col + 1) * n + col];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;
        // v = x - alpha e1; with this phase choice v^H x is real and
        // tau = 2/|v|^2 yields a unitary reflector I - tau v v^H.
        let mut v = vec![Complex64::new(0.0, 0.0); n - col - 1];
        v[0] = x0 - alpha;
        for i in col + 2..n {
            v[i - col - 1] = a[i * n + col];
        }
        let vnorm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vnorm2;
        // left: A <- A - tau v (v^H A) on rows col+1..n
        for j in col..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in col + 1..n {
                dot += v[i - col - 1].conj() * a[i * n + j];
            }
            let dot = dot * tau;
            for i in col + 1..n {
                let dv = v[i - col - 1] * dot;
                a[i * n + j] -= dv;
            }
        }
        // right: A <- A - tau (A v) v^H on columns col+1..n
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in col + 1..n {
                dot += a[i * n + j] * v[j - col - 1];
            }
            let dot = dot * tau;
            for j in col + 1..n {
                let dv = dot * v[j - col - 1].conj();
                a[i * n + j] -= dv;
            }
        }
        // enforce exact zeros below the subdiagonal
        for i in col + 2..n {
            a[i * n + col] = Complex64::new(0.0, 0.0);
        }
    }
}

struct Givens {
    c: f64,
    s: Complex64,
}

/// Rotation with [c, s; -conj(s), c] @ [f; g] = [r; 0], c real.
fn givens(f: Complex64, g: Complex64) -> (Givens, Complex64) {
    if g.norm() == 0.0 {
        return (Givens { c: 1.0, s: Complex64::new(0.0, 0.0) }, f);
    }
    if f.norm() == 0.0 {
        let phase = g.conj() / g.norm();
        return (Givens { c: 0.0, s: phase }, Complex64::new(g.norm(), 0.0));
    }
    let d = (f.norm_sqr() + g.norm_sqr()).sqrt();
    let c = f.norm() / d;
    let fs = f / f.norm();
    let s = fs * g.conj() / d;
    (Givens { c, s }, fs * d)
}

/// Eigenvalues of an upper Hessenberg matrix by explicit single-shift QR
/// with Wilkinson shifts and deflation.
fn qr_eigenvalues(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>, OracleError> {
    let mut eigs: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iterations = 0usize;
    let max_iterations = QR_ITER_PER_N * n;
    let mut since_deflation = 0usize;
    loop {
        // deflate converged trailing 1x1 blocks
        loop {
            if hi == 0 {
                eigs.push(h[0]);
                return Ok(eigs);
            }
            let sub = h[hi * n + hi - 1].norm();
            let diag = h[(hi - 1) * n + hi - 1].norm() + h[hi * n + hi].norm();
            if sub <= f64::EPSILON * diag || sub < 1e-300 {
                eigs.push(h[hi * n + hi]);
                h[hi * n + hi - 1] = Complex64::new(0.0, 0.0);
                hi -= 1;
                since_deflation = 0;
                continue;
            }
            break;
        }
        // find the start of the active block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let diag = h[(lo - 1) * n + lo - 1].norm() + h[lo * n + lo].norm();
            if sub <= f64::EPSILON * diag || sub < 1e-300 {
                h[lo * n + lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        iterations += 1;
        since_deflation += 1;
        if iterations > max_iterations {
            return Err(OracleError::QrStall {
                iterations,
                deflated: eigs.len(),
                n,
                partial: eigs,
            });
        }

        let shift = if since_deflation % EXCEPTIONAL_SHIFT_PERIOD == 0 {
            // exceptional shift from subdiagonal magnitudes
            let m = h[hi * n + hi - 1].norm()
                + if hi >= 2 { h[(hi - 1) * n + hi - 2].norm() } else { 0.0 };
            h[hi * n + hi] + Complex64::new(m, 0.0)
        } else {
            wilkinson_shift(h, n, hi)
        };

        // explicit shifted QR step on [lo, hi]: factor H - shift I with
        // adjacent-row rotations, then form R Q + shift I.
        let mut rots: Vec<Givens> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            h[i * n + i] -= shift;
        }
        h[hi * n + hi] -= shift;
        for i in lo..hi {
            let (rot, r) = givens(h[i * n + i], h[(i + 1) * n + i]);
            h[i * n + i] = r;
            h[(i + 1) * n + i] = Complex64::new(0.0, 0.0);
            for j in i + 1..=hi {
                let x = h[i * n + j];
                let y = h[(i + 1) * n + j];
                h[i * n + j] = rot.c * x + rot.s * y;
                h[(i + 1) * n + j] = -rot.s.conj() * x + rot.c * y;
            }
            rots.push(rot);
        }
        for (idx, rot) in rots.iter().enumerate() {
            let col = lo + idx;
            // right-multiply rows lo..=col+1 by G^H on columns (col, col+1)
            for i in lo..=(col + 1).min(hi) {
                let x = h[i * n + col];
                let y = h[i * n + col + 1];
                h[i * n + col] = rot.c * x + rot.s.conj() * y;
                h[i * n + col + 1] = -rot.s * x + rot.c * y;
            }
        }
        for i in lo..=hi {
            h[i * n + i] += shift;
        }
    }
}

fn wilkinson_shift(h: &[Complex64], n: usize, hi: usize) -> Complex64 {
    let a = h[(hi - 1) * n + hi - 1];
    let b = h[(hi - 1) * n + hi];
    let c = h[hi * n + hi - 1];
    let d = h[hi * n + hi];
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) * 0.5;
    let l2 = (tr - disc) * 0.5;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// LU with partial pivoting; near-zero pivots are replaced by a small
/// multiple of the matrix norm so inverse iteration can proceed on
/// singular shifts.
struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
}

fn lu_factor(a: &[Complex64], n: usize) -> Lu {
    let mut lu = a.to_vec();
    let norm: f64 = lu.iter().map(|c| c.norm()).fold(0.0, f64::max);
    // floor large enough that |pivot|^2 stays normal in complex division
    let floor = (norm * f64::EPSILON).max(1e-150);
    let mut pivots = vec![0usize; n];
    for col in 0..n {
        let mut piv = col;
        let mut best = lu[col * n + col].norm();
        for row in col + 1..n {
            let v = lu[row * n + col].norm();
            if v > best {
                best = v;
                piv = row;
            }
        }
        pivots[col] = piv;
        if piv != col {
            for j in 0..n {
                lu.swap(col * n + j, piv * n + j);
            }
        }
        if lu[col * n + col].norm() < floor {
            lu[col * n + col] = Complex64::new(floor, 0.0);
        }
        let inv = Complex64::new(1.0, 0.0) / lu[col * n + col];
        for row in col + 1..n {
            let factor = lu[row * n + col] * inv;
            lu[row * n + col] = factor;
            for j in col + 1..n {
                let sub = factor * lu[col * n + j];
                lu[row * n + j] -= sub;
            }
        }
    }
    Lu { n, lu, pivots }
}

impl Lu {
    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x = b.to_vec();
        for col in 0..n {
            x.swap(col, self.pivots[col]);
            let xc = x[col];
            for row in col + 1..n {
                let sub = self.lu[row * n + col] * xc;
                x[row] -= sub;
            }
        }
        for col in (0..n).rev() {
            x[col] /= self.lu[col * n + col];
            let xc = x[col];
            for row in 0..col {
                let sub = self.lu[row * n + col] * xc;
                x[row] -= sub;
            }
        }
        x
    }
}

/// Eigenvector for a computed eigenvalue by inverse iteration,
/// max-norm-normalized with the largest entry made real positive.
pub fn eigenvector(t: &DenseToeplitz, epsilon: Complex64) -> Result<Vec<Complex64>, OracleError> {
    let n = t.n;
    let mut shifted = t.entries.clone();
    for j in 0..n {
        shifted[j * n + j] -= epsilon;
    }
    let lu = lu_factor(&shifted, n);
    // deterministic pseudo-random start vector
    let mut state = 88172645463325252u64;
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let re = (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let im = (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
            Complex64::new(re, im)
        })
        .collect();
    for _ in 0..3 {
        v = lu.solve(&v);
        let scale = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale < 1e-300 {
            return Err(OracleError::ZeroVector(scale));
        }
        for c in v.iter_mut() {
            *c /= scale;
        }
    }
    let (idx, _) = v
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.norm().partial_cmp(&b.norm()).unwrap())
        .expect("nonempty");
    let phase = v[idx] / v[idx].norm();
    for c in v.iter_mut() {
        *c /= phase;
    }
    Ok(v)
}
