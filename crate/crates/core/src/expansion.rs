//! Coupled finite-n corrections to the operator solution: the master fixed
//! point for `phi^-`, the bridge to `phi^+`, and the two eigenfunction
//! assemblies (direct and transposed).
//!
//! All equations are evaluated literally in the series algebra with the
//! region projections at indices 0 and n. The master iteration is
//!
//! `phi^- = (z K^<)^{-1} { C + (z K^< K^> [(1/K^>) phi^-]^{>= n-1})^- }`
//!
//! whose leading term is the operator solution `Phi^-` and whose correction
//! enters at relative order `lambda^2`. The bridge
//! `phi^+ = -K^> [(1/K^>) phi^-]^{>= n-1}` produces a sequence whose lowest
//! coefficient sits at index `n - 1`; that coefficient is `K^>(0)` times the
//! eigenvalue condition and vanishes at eigenvalues, so it is reported
//! separately as the `defect` while the stored `phi^+` keeps plus-type
//! support.

use crate::series::{convolve, IndexedSequence};
use crate::wiener_hopf::{FactorizeError, Factorization};
use num_complex::Complex64;
use thiserror::Error;

const DEFAULT_MAX_SWEEPS: usize = 12;
const DEFAULT_TOL: f64 = 1e-10;
/// Window factor: phi^- lives on [-Wn, -1], phi^+ on [n, Wn].
const WINDOW_FACTOR: usize = 4;

#[derive(Debug, Clone, Error)]
pub enum ExpansionError {
    #[error("expansion requires a canonical (winding -1) factorization, got winding {0}")]
    NonCanonical(i64),
    #[error("iteration diverged: delta grew from {prev:.3e} to {cur:.3e} in the contraction regime at sweep {sweep}")]
    IterationDiverged { sweep: usize, prev: f64, cur: f64 },
    #[error("factorization stores {stored} coefficients, expansion needs {needed}")]
    StoreTooShort { stored: usize, needed: usize },
    #[error(transparent)]
    Factorize(#[from] FactorizeError),
}

/// State of the coupled expansion for one candidate eigenvalue.
#[derive(Debug, Clone)]
pub struct ExpansionState {
    /// `phi^+` on `[n, n + window]` (plus-type).
    pub phi_plus: IndexedSequence,
    /// `phi^-` on `[-window, -1]` (minus-type).
    pub phi_minus: IndexedSequence,
    /// Direct assembly of the eigenfunction on `[0, n-1]`.
    pub psi0: IndexedSequence,
    /// Transposed assembly of the eigenfunction on `[0, n-1]`.
    pub psi0_transpose: IndexedSequence,
    /// The index-(n-1) coefficient of the raw bridge output; `K^>(0)` times
    /// the eigenvalue condition, ~0 at eigenvalues.
    pub defect: Complex64,
    pub iteration: usize,
    /// Max coefficient change over the last sweep.
    pub delta: f64,
    pub lambda_est: f64,
    pub n: usize,
}

impl ExpansionState {
    /// Relative L-infinity difference between the two eigenfunction
    /// assemblies.
    pub fn consistency_linf(&self) -> f64 {
        let scale = self.psi0.max_norm().max(1e-300);
        self.psi0.sub(&self.psi0_transpose).max_norm() / scale
    }
}

fn window(n: usize) -> usize {
    WINDOW_FACTOR * n
}

fn required_store(n: usize) -> usize {
    // the -tp identity probes (1/K^>) reversed against phi~ out to ~9n
    9 * n + 8
}

fn check_fact(fact: &Factorization, n: usize) -> Result<(), ExpansionError> {
    if !fact.canonical {
        return Err(ExpansionError::NonCanonical(fact.winding));
    }
    let needed = required_store(n);
    if fact.stored_len() < needed {
        return Err(ExpansionError::StoreTooShort { stored: fact.stored_len(), needed });
    }
    Ok(())
}

/// `V = (1/K^>) * phi^-` on the kept window.
fn bridge_inner(
    fact: &Factorization,
    phi_minus: &IndexedSequence,
    keep_lo: i64,
    keep_hi: i64,
) -> IndexedSequence {
    convolve(&fact.inv_k_gt, phi_minus, keep_lo, keep_hi)
}

/// The operator-solution leading term `Phi^-(j) = (1/K^<)(j+1)` on
/// `[-window, -1]`.
pub fn phi_minus_leading(fact: &Factorization, n: usize) -> IndexedSequence {
    let w = window(n) as i64;
    let vals: Vec<Complex64> = (-w..=-1).map(|j| fact.inv_lt(j + 1)).collect();
    IndexedSequence::with_tail(-w, vals, fact.inv_k_lt.tail_bound())
}

/// One sweep of the master `phi^-` fixed point.
pub fn iterate_phi_minus(
    state: &ExpansionState,
    fact: &Factorization,
) -> Result<IndexedSequence, ExpansionError> {
    let n = state.n;
    check_fact(fact, n)?;
    let w = window(n) as i64;
    let n_i = n as i64;
    // [(1/K^>) phi^-]^{>= n-1}
    let v = bridge_inner(fact, &state.phi_minus, n_i - 1, w);
    // K^> V on [n-1, w]
    let r = convolve(&fact.k_gt, &v, n_i - 1, w);
    // (z K^< R)^- on [-w, -1]  <=>  (K^< R) on [-w - 1, -2] shifted by +1
    let m = convolve(&fact.k_lt, &r, -w - 1, -2).shifted(1);
    // C delta_0 + M
    let rhs = IndexedSequence::delta(0).add(&m);
    // (z K^<)^{-1} rhs = z^{-1} (1/K^<) rhs
    let out = convolve(&fact.inv_k_lt, &rhs, -w + 1, 0).shifted(-1);
    assert!(out.is_minus_type(), "phi^- region discipline violated");
    Ok(out)
}

/// The bridge `phi^+ = -K^> [(1/K^>) phi^-]^{>= n-1}`, returned as the
/// plus-type part together with the index-(n-1) defect coefficient.
pub fn compute_phi_plus_from_phi_minus(
    phi_minus: &IndexedSequence,
    fact: &Factorization,
    n: usize,
) -> Result<(IndexedSequence, Complex64), ExpansionError> {
    check_fact(fact, n)?;
    let w = window(n) as i64;
    let n_i = n as i64;
    let v = bridge_inner(fact, phi_minus, n_i - 1, w);
    let raw = convolve(&fact.k_gt, &v, n_i - 1, w).scaled(Complex64::new(-1.0, 0.0));
    let defect = raw.get(n_i - 1);
    let phi_plus = raw.restricted(n_i, w);
    assert!(phi_plus.is_plus_type(n), "phi^+ region discipline violated");
    Ok((phi_plus, defect))
}

/// The `phi^+` fixed-point form (used as a cross-check of the bridge):
/// `phi^+ = -K^> [z^{-1} (1/(K^> K^<)) C]^{>= n-1}
///          + K^> [z^{-1} (1/(K^> K^<)) (z K^< phi^+)^-]^{>= n-1}`,
/// with the first term of order lambda and the second of order lambda^3.
pub fn iterate_phi_plus(
    state: &ExpansionState,
    fact: &Factorization,
) -> Result<(IndexedSequence, Complex64), ExpansionError> {
    let n = state.n;
    check_fact(fact, n)?;
    let w = window(n) as i64;
    let n_i = n as i64;
    // q = z^{-1} (1/K^>)(1/K^<), needed on [n-2, w] before the shift
    let inv_prod = convolve(&fact.inv_k_gt, &fact.inv_k_lt, -1, w + 1);
    let q = inv_prod.shifted(-1);

    // term 1 kernel: [q C]^{>= n-1} = q restricted
    let t1_inner = q.restricted(n_i - 1, w);

    // term 2: (z K^< phi^+)^- then convolved back up through q
    let down = convolve(&fact.k_lt, &state.phi_plus, -w - 1, -2).shifted(1);
    let t2_inner = convolve(&q, &down, n_i - 1, w);

    let combined = t1_inner.sub(&t2_inner); // signs fold into the leading minus below
    let raw = convolve(&fact.k_gt, &combined, n_i - 1, w).scaled(Complex64::new(-1.0, 0.0));
    let defect = raw.get(n_i - 1);
    let phi_plus = raw.restricted(n_i, w);
    assert!(phi_plus.is_plus_type(n), "phi^+ region discipline violated");
    Ok((phi_plus, defect))
}

/// Direct assembly `psi^0 = [(1/K^>) C]^0 + [(1/K^>)(z K^< phi^+)^0]^0`.
pub fn assemble_psi0_direct(
    state: &ExpansionState,
    fact: &Factorization,
) -> Result<IndexedSequence, ExpansionError> {
    let n = state.n;
    check_fact(fact, n)?;
    let n_i = n as i64;
    let leading = fact.inv_k_gt.restricted(0, n_i - 1);
    if state.phi_plus.is_empty() || state.phi_plus.max_norm() == 0.0 {
        return Ok(leading);
    }
    // (z K^< phi^+)^0: K^< phi^+ on [-1, n-2], shifted up by one
    let inner = convolve(&fact.k_lt, &state.phi_plus, -1, n_i - 2).shifted(1);
    let correction = convolve(&fact.inv_k_gt, &inner, 0, n_i - 1);
    let out = leading.add(&correction);
    assert!(out.is_zero_type(n), "psi^0 region discipline violated");
    Ok(out)
}

/// Transposed assembly `psi^0 = [K^< (z (1/K^>) phi^-)^0]^0`.
pub fn assemble_psi0_transpose(
    state: &ExpansionState,
    fact: &Factorization,
) -> Result<IndexedSequence, ExpansionError> {
    let n = state.n;
    check_fact(fact, n)?;
    let n_i = n as i64;
    // (z V)^0 <=> V on [-1, n-2], shifted up by one
    let v_low = bridge_inner(fact, &state.phi_minus, -1, n_i - 2).shifted(1);
    let out = convolve(&fact.k_lt, &v_low, 0, n_i - 1);
    assert!(out.is_zero_type(n), "psi^0 region discipline violated");
    Ok(out)
}

/// The transposed zero-identity `z^{-1} Ktil^< phitil^- +
/// (z^{-1} Ktil^< phitil^+)^-`, which must vanish at eigenpairs; returns the
/// max coefficient modulus over the probed window.
///
/// `Ktil^<(z) = 1/K^>(1/z)` carries `(1/K^>)(m)` at index `-m`;
/// `phitil^-(j) = phi^+(n-1-j)` and `phitil^+(j) = phi^-(n-1-j)`.
pub fn transposed_zero_identity(state: &ExpansionState, fact: &Factorization) -> f64 {
    let n = state.n as i64;
    let w = window(state.n) as i64;
    let ktil_lt = crate::series::transpose_sequence(&fact.inv_k_gt, 1);
    // transpose_sequence with n = 1 maps index m to -m
    let phitil_minus = crate::series::transpose_sequence(&state.phi_plus, state.n);
    let phitil_plus = crate::series::transpose_sequence(&state.phi_minus, state.n);
    let term_a = convolve(&ktil_lt, &phitil_minus, -2 * w, 0).shifted(-1);
    let term_b_full = convolve(&ktil_lt, &phitil_plus, -2 * w, 0).shifted(-1);
    let term_b = term_b_full.restricted(-2 * w - 1, -1); // the (.)^- projection
    let total = term_a.add(&term_b);
    let mut worst = 0.0f64;
    for j in (-2 * w - 1)..=-1 {
        worst = worst.max(total.get(j).norm());
    }
    let _ = n;
    worst
}

/// Run the master iteration to convergence: sweeps of `iterate_phi_minus`
/// from the operator-solution leading term, then the bridge and both
/// eigenfunction assemblies.
pub fn run(
    fact: &Factorization,
    n: usize,
    max_sweeps: usize,
    tol: f64,
) -> Result<ExpansionState, ExpansionError> {
    check_fact(fact, n)?;
    let lambda_est = fact.symbol.lambda(n);
    let mut state = ExpansionState {
        phi_plus: IndexedSequence::empty(),
        phi_minus: phi_minus_leading(fact, n),
        psi0: IndexedSequence::empty(),
        psi0_transpose: IndexedSequence::empty(),
        defect: Complex64::new(0.0, 0.0),
        iteration: 0,
        delta: f64::INFINITY,
        lambda_est,
        n,
    };
    let mut prev_delta = f64::INFINITY;
    for sweep in 1..=max_sweeps {
        let next = iterate_phi_minus(&state, fact)?;
        let delta = next.sub(&state.phi_minus).max_norm();
        state.phi_minus = next;
        state.iteration = sweep;
        state.delta = delta;
        // contraction-regime guard: once deltas are small they must not grow
        if prev_delta < 0.1 && delta > prev_delta * 1.5 && delta > tol {
            return Err(ExpansionError::IterationDiverged {
                sweep,
                prev: prev_delta,
                cur: delta,
            });
        }
        prev_delta = delta;
        if delta < tol {
            break;
        }
    }
    let (phi_plus, defect) = compute_phi_plus_from_phi_minus(&state.phi_minus, fact, n)?;
    state.phi_plus = phi_plus;
    state.defect = defect;
    state.psi0 = assemble_psi0_direct(&state, fact)?;
    state.psi0_transpose = assemble_psi0_transpose(&state, fact)?;
    Ok(state)
}

/// Convenience wrapper matching the per-kernel entry point.
pub fn run_expansion(
    kernel: &crate::wiener_hopf::Kernel,
    grid_size: usize,
    max_sweeps: usize,
    tol: f64,
) -> Result<(Factorization, ExpansionState), ExpansionError> {
    let fact = crate::wiener_hopf::factorize(kernel, grid_size)?;
    let state = run(&fact, kernel.n, max_sweeps, tol)?;
    Ok((fact, state))
}

pub fn default_max_sweeps() -> usize {
    DEFAULT_MAX_SWEEPS
}

pub fn default_tol() -> f64 {
    DEFAULT_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::SymbolParams;
    use crate::wiener_hopf::{factorize, operator_solution, Kernel};

    const FH: SymbolParams = SymbolParams { alpha: 0.25, beta: -0.5 };

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Chebyshev-recurrence eigenvalues of the n x n matrix for
    /// a(z) = 1/z + c z: eps_m = 2 sqrt(c) cos(m pi / (n+1)).
    fn toy_kernel(c: f64, eps: Complex64, n: usize) -> Kernel {
        Kernel::laurent(vec![(-1, c64(1.0, 0.0)), (1, c64(c, 0.0))], eps, n)
    }

    #[test]
    fn toy_converges_fast_and_reproduces_eigenvector() {
        let c = 0.09f64;
        let n = 12;
        let eps_exact = 2.0 * c.sqrt() * (3.0 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
        let kernel = toy_kernel(c, c64(eps_exact, 0.0), n);
        let (_, state) = run_expansion(&kernel, 1 << 12, 12, 1e-10).unwrap();
        assert!(state.iteration <= 3, "sweeps {}", state.iteration);
        assert!(state.delta < 1e-10);
        // at the exact eigenvalue the defect (eigenvalue condition) ~ 0
        assert!(state.defect.norm() < 1e-9, "defect {}", state.defect.norm());
        // psi^0 matches the recurrence eigenvector h_j up to normalization
        let mut expect = vec![c64(1.0, 0.0), c64(eps_exact, 0.0)];
        for j in 2..n {
            let next = eps_exact * expect[j - 1] - c * expect[j - 2];
            expect.push(next);
        }
        let scale = state.psi0.get(0) / expect[0];
        for j in 0..n {
            assert!(
                (state.psi0.get(j as i64) - expect[j] * scale).norm() < 1e-8,
                "j={j}"
            );
        }
        // both assemblies agree at the eigenpair
        assert!(state.consistency_linf() < 1e-8, "consistency {}", state.consistency_linf());
    }

    #[test]
    fn operator_limit_is_a_fixed_point() {
        // with the correction window pushed far out (large n at fixed
        // kernel), phi^+ goes to zero coefficientwise and phi^- stays at the
        // operator solution
        let c = 0.09;
        let eps = c64(0.21, 0.05);
        for n in [16usize, 32, 64] {
            let kernel = toy_kernel(c, eps, n);
            let fact = factorize(&kernel, 1 << 13).unwrap();
            let state = run(&fact, n, 12, 1e-12).unwrap();
            let sol = operator_solution(&fact, window(n)).unwrap();
            let drift = state.phi_minus.sub(&sol.phi_minus_inf).max_norm();
            // geometric decay ~ |near root|^{-n}
            assert!(drift < 1e-6, "n={n} drift {drift}");
            assert!(state.phi_plus.max_norm() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn fh_orders_of_magnitude() {
        // at an interior (non-eigenvalue) point the first bridge term is
        // O(lambda) and the sweep-two correction is O(lambda^2) relative
        let n = 32;
        let eps = c64(0.9, -0.3);
        let t = crate::symbol::fourier_coeffs(FH, 4 * n).unwrap();
        let kernel = Kernel::new(FH, eps, t, n);
        let fact = factorize(&kernel, 1 << 14).unwrap();
        let lambda = FH.lambda(n);

        // first-term-only phi^+: bridge from the operator-solution phi^-
        let leading = phi_minus_leading(&fact, n);
        let (phi_plus_1, _) = compute_phi_plus_from_phi_minus(&leading, &fact, n).unwrap();
        let first = phi_plus_1.max_norm();
        assert!(first < 10.0 * lambda && first > lambda / 10.0, "|phi^+| = {first}, lambda = {lambda}");

        // one sweep of the master iteration moves phi^- by O(lambda^2)
        let state0 = ExpansionState {
            phi_plus: IndexedSequence::empty(),
            phi_minus: leading.clone(),
            psi0: IndexedSequence::empty(),
            psi0_transpose: IndexedSequence::empty(),
            defect: c64(0.0, 0.0),
            iteration: 0,
            delta: f64::INFINITY,
            lambda_est: lambda,
            n,
        };
        let swept = iterate_phi_minus(&state0, &fact).unwrap();
        let correction = swept.sub(&leading).max_norm();
        assert!(
            correction < 10.0 * lambda * lambda,
            "correction {correction} vs 10 lambda^2 {}",
            10.0 * lambda * lambda
        );
        // relative size of the correction at j = -1
        let rel = (swept.get(-1) - leading.get(-1)).norm() / leading.get(-1).norm();
        assert!(rel < 10.0 * lambda * lambda, "rel correction at -1: {rel}");
    }

    #[test]
    fn bridge_matches_phi_plus_fixed_point_first_term() {
        // with phi^- = Phi^- over the full stored window, the bridge equals
        // the first term of the phi^+ fixed-point equation identically (the
        // two routes sum exactly the same retained terms)
        let n = 24;
        let eps = c64(0.9, -0.3);
        let t = crate::symbol::fourier_coeffs(FH, 4 * n).unwrap();
        let kernel = Kernel::new(FH, eps, t, n);
        let fact = factorize(&kernel, 1 << 14).unwrap();
        let full = fact.stored_len() as i64 - 2;
        let vals: Vec<Complex64> = (-full..=-1).map(|j| fact.inv_lt(j + 1)).collect();
        let phi_full = IndexedSequence::new(-full, vals);
        let (bridge, bridge_defect) =
            compute_phi_plus_from_phi_minus(&phi_full, &fact, n).unwrap();
        let state0 = ExpansionState {
            phi_plus: IndexedSequence::empty(), // second term drops
            phi_minus: phi_full,
            psi0: IndexedSequence::empty(),
            psi0_transpose: IndexedSequence::empty(),
            defect: c64(0.0, 0.0),
            iteration: 0,
            delta: 0.0,
            lambda_est: FH.lambda(n),
            n,
        };
        let (first_term, ft_defect) = iterate_phi_plus(&state0, &fact).unwrap();
        for j in n as i64..=(4 * n) as i64 {
            assert!(
                (bridge.get(j) - first_term.get(j)).norm() < 1e-10,
                "j={j}: {} vs {}",
                bridge.get(j),
                first_term.get(j)
            );
        }
        assert!((bridge_defect - ft_defect).norm() < 1e-10);
    }

    #[test]
    fn trivial_bridge_cases() {
        let n = 16;
        let eps = c64(0.9, -0.3);
        let t = crate::symbol::fourier_coeffs(FH, 4 * n).unwrap();
        let kernel = Kernel::new(FH, eps, t, n);
        let fact = factorize(&kernel, 1 << 13).unwrap();
        // phi^- = 0 => phi^+ = 0
        let zero = IndexedSequence::zeros(-(window(n) as i64), -1);
        let (phi_plus, defect) = compute_phi_plus_from_phi_minus(&zero, &fact, n).unwrap();
        assert!(phi_plus.max_norm() == 0.0);
        assert!(defect.norm() == 0.0);
        // phi^+ = 0 => direct assembly reduces to the operator restriction
        let state = ExpansionState {
            phi_plus: IndexedSequence::empty(),
            phi_minus: zero,
            psi0: IndexedSequence::empty(),
            psi0_transpose: IndexedSequence::empty(),
            defect: c64(0.0, 0.0),
            iteration: 0,
            delta: 0.0,
            lambda_est: FH.lambda(n),
            n,
        };
        let psi = assemble_psi0_direct(&state, &fact).unwrap();
        for j in 0..n as i64 {
            assert!((psi.get(j) - fact.inv_k_gt.get(j)).norm() < 1e-15);
        }
    }

    #[test]
    fn non_canonical_is_refused() {
        // identity symbol: winding 0
        let kernel = Kernel::laurent(vec![(0, c64(1.0, 0.0))], c64(0.3, 0.1), 8);
        let fact = factorize(&kernel, 1 << 12).unwrap();
        assert!(matches!(
            run(&fact, 8, 4, 1e-10),
            Err(ExpansionError::NonCanonical(0))
        ));
    }
}
