//! Run configuration, experiment orchestration, and machine-readable
//! reports (JSON canonical, CSV flat tables, plus plot-ready CSV files).
//!
//! Reports are deterministic for a fixed config: grid sizes and seed
//! layouts are derived from the config alone, reductions run in a fixed
//! order, and the provenance timestamp comes from `SOURCE_DATE_EPOCH`
//! (falling back to a fixed placeholder) so consecutive runs are
//! byte-identical.

use crate::eigen::{
    self, curve_parameter, default_seeds, distance_to_image, CandidateMethod, SolverOpts,
};
use crate::expansion;
use crate::oracle::{self, DenseToeplitz};
use crate::symbol::{Symbol, SymbolParams};
use crate::wiener_hopf::{factorize, Kernel};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("n_list must be nonempty")]
    EmptyNList,
    #[error("n = {0} below the minimum of 4")]
    NTooSmall(usize),
    #[error("scaling mode needs at least two n values")]
    ScalingNeedsTwo,
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse config: {0}")]
    Parse(#[from] serde_json::Error),
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Eigen(#[from] eigen::EigenError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error(transparent)]
    Symbol(#[from] crate::symbol::SymbolError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum Mode {
    Spectrum,
    Scaling,
    Variational,
    Consistency,
    OracleOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Oracle-matching tolerance as a multiple of lambda^2.
    pub match_tol_factor: f64,
    pub sweep_tol: f64,
    pub max_sweeps: usize,
    pub dedup_tol: f64,
    pub polish: bool,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            match_tol_factor: 10.0,
            sweep_tol: expansion::default_tol(),
            max_sweeps: expansion::default_max_sweeps(),
            dedup_tol: 1e-8,
            polish: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub n_list: Vec<usize>,
    pub mode: Mode,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub output_path: PathBuf,
    #[serde(default)]
    pub seed_count: Option<usize>,
    #[serde(default = "default_format")]
    pub format: Format,
}

fn default_format() -> Format {
    Format::Json
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_list.is_empty() {
            return Err(ConfigError::EmptyNList);
        }
        for &n in &self.n_list {
            if n < 4 {
                return Err(ConfigError::NTooSmall(n));
            }
        }
        if self.mode == Mode::Scaling && self.n_list.len() < 2 {
            return Err(ConfigError::ScalingNeedsTwo);
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }
}

fn cpx(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateSummary {
    pub epsilon: (f64, f64),
    pub method: CandidateMethod,
    /// Residual against the literal dense Toeplitz matrix.
    pub residual: f64,
    pub s_abs: f64,
    pub q: (f64, f64),
    pub n_pp: (f64, f64),
    pub n_pm: (f64, f64),
    pub d: (f64, f64),
    pub dist_to_image: f64,
    pub matched_oracle: Option<(f64, f64)>,
    pub oracle_error: Option<f64>,
    pub consistency_linf: f64,
    pub tp_identity_max: f64,
    pub defect_abs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSummary {
    pub eigenvalues: Vec<(f64, f64)>,
    pub max_backward_error: f64,
    /// |sum(eigenvalues) - trace| / |trace|.
    pub trace_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NpmScanPoint {
    pub t: f64,
    pub epsilon: (f64, f64),
    pub npm_abs: f64,
    pub npp_abs: f64,
    pub d_abs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub lambda: f64,
    pub search_grid: usize,
    pub polish_grid: usize,
    pub candidates: Vec<CandidateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub seed_failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub median_dist_to_image: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub median_zc_decay: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub npm_scan: Option<Vec<NpmScanPoint>>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Metrics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub match_rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub median_eigenvalue_error: Option<f64>,
    /// Fitted exponent of median root-to-image distance vs n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling_exponent_fit: Option<f64>,
    /// Fitted exponent of the median |z_c|^{-n} proxy vs n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zc_decay_exponent_fit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency_linf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub npm_cancellation_ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: String,
    /// From SOURCE_DATE_EPOCH when set; a fixed placeholder otherwise, so
    /// repeated runs of one config are byte-identical.
    pub timestamp: String,
    pub grid_sizes: Vec<usize>,
    pub max_tail_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub runs: Vec<RunReport>,
    pub metrics: Metrics,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

/// Execute the configured pipeline and write the report plus plot files.
pub fn run(config: &RunConfig) -> Result<SpectrumReport, PipelineError> {
    let report = execute(config)?;
    write_report(config, &report)?;
    Ok(report)
}

/// Execute without touching the filesystem.
pub fn execute(config: &RunConfig) -> Result<SpectrumReport, PipelineError> {
    let symbol = Symbol::FisherHartwig(SymbolParams::new(config.alpha, config.beta));
    let mut runs = Vec::new();
    let mut notes = Vec::new();
    let mut metrics = Metrics::default();
    let mut max_tail = 0.0f64;

    for &n in &config.n_list {
        let run = run_one(&symbol, n, config, &mut notes, &mut max_tail)?;
        runs.push(run);
    }

    aggregate_metrics(config, &symbol, &runs, &mut metrics);

    let grid_sizes = runs.iter().flat_map(|r| [r.search_grid, r.polish_grid]).collect();
    Ok(SpectrumReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        runs,
        metrics,
        notes,
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").unwrap_or_else(|_| "unset".into()),
            grid_sizes,
            max_tail_bound: max_tail,
        },
    })
}

fn solver_opts(n: usize, config: &RunConfig) -> SolverOpts {
    let mut opts = SolverOpts::for_n(n);
    opts.sweep_tol = config.tolerances.sweep_tol;
    opts.max_sweeps = config.tolerances.max_sweeps;
    opts.dedup_tol = config.tolerances.dedup_tol;
    opts.polish = config.tolerances.polish;
    opts
}

fn oracle_summary(dense: &DenseToeplitz) -> Result<(OracleSummary, oracle::OracleSpectrum), PipelineError> {
    let spec = oracle::dense_spectrum(dense)?;
    let sum: Complex64 = spec.eigenvalues.iter().sum();
    let trace = dense.trace();
    let trace_error = (sum - trace).norm() / trace.norm().max(1e-300);
    let max_backward_error = spec.backward_errors.iter().copied().fold(0.0, f64::max);
    Ok((
        OracleSummary {
            eigenvalues: spec.eigenvalues.iter().map(|&e| cpx(e)).collect(),
            max_backward_error,
            trace_error,
        },
        spec,
    ))
}

fn run_one(
    symbol: &Symbol,
    n: usize,
    config: &RunConfig,
    notes: &mut Vec<String>,
    max_tail: &mut f64,
) -> Result<RunReport, PipelineError> {
    let opts = solver_opts(n, config);
    let lambda = symbol.lambda(n);
    let mut report = RunReport {
        n,
        lambda,
        search_grid: opts.search_grid,
        polish_grid: opts.polish_grid,
        candidates: Vec::new(),
        oracle: None,
        seed_failures: Vec::new(),
        median_dist_to_image: None,
        median_zc_decay: None,
        npm_scan: None,
    };

    let want_oracle = matches!(config.mode, Mode::OracleOnly)
        || (n <= 64 && !matches!(config.mode, Mode::Scaling));
    let dense = if want_oracle || n <= 512 {
        Some(oracle::build_dense(
            SymbolParams::new(config.alpha, config.beta),
            n,
        )?)
    } else {
        None
    };
    if want_oracle {
        if let Some(d) = &dense {
            let (summary, _) = oracle_summary(d)?;
            report.oracle = Some(summary);
        }
    }
    if config.mode == Mode::OracleOnly {
        return Ok(report);
    }

    // expansion pipeline feasibility probe
    let seed_count = config.seed_count.unwrap_or(n);
    let seeds = default_seeds(symbol, n, seed_count);
    let probe_kernel = Kernel::from_symbol(symbol.clone(), seeds[0], n, 4 * n)?;
    match factorize(&probe_kernel, opts.search_grid) {
        Ok(f) if !f.canonical => {
            notes.push(format!(
                "n={n}: expansion path refused: winding {} is non-canonical (case I needs -1); oracle results only",
                f.winding
            ));
            return Ok(report);
        }
        Err(e) => {
            notes.push(format!(
                "n={n}: expansion path refused at probe seed {}: {e}; oracle results only",
                seeds[0]
            ));
            return Ok(report);
        }
        Ok(_) => {}
    }

    let mut opts = opts;
    if config.mode == Mode::Scaling {
        // S0 roots suffice for distance scaling; skip the expensive polish
        opts.polish = false;
        opts.with_oracle = false;
    }
    opts.match_tol = Some(config.tolerances.match_tol_factor * lambda * lambda);

    let search = eigen::find_eigenvalues(symbol, n, &seeds, &opts)?;
    report.seed_failures =
        search.failures.iter().map(|f| format!("seed {}: {}", f.seed, f.reason)).collect();

    let mut dists = Vec::new();
    let mut zc_decays = Vec::new();
    for cand in &search.candidates {
        let dist = distance_to_image(symbol, cand.epsilon);
        dists.push(dist);
        // lambda proxy |z_c|^{-n} at the root
        let k = Kernel::from_symbol(symbol.clone(), cand.epsilon, n, 4)?;
        if let Ok(f) = factorize(&k, 1 << 12) {
            if let Some(zc) = f.z_c {
                zc_decays.push(zc.norm().powf(-(n as f64)));
            }
        }
        *max_tail = max_tail.max(cand.phi_minus.tail_bound()).max(cand.psi0.tail_bound());
        report.candidates.push(CandidateSummary {
            epsilon: cpx(cand.epsilon),
            method: cand.method,
            residual: cand.residual,
            s_abs: cand.s_value.norm(),
            q: cpx(cand.q),
            n_pp: cpx(cand.n_pp),
            n_pm: cpx(cand.n_pm),
            d: cpx(cand.d),
            dist_to_image: dist,
            matched_oracle: cand.matched_oracle.map(cpx),
            oracle_error: cand.matched_oracle.map(|ev| (ev - cand.epsilon).norm()),
            consistency_linf: cand.consistency_linf,
            tp_identity_max: cand.tp_identity,
            defect_abs: cand.defect.norm(),
        });
    }
    report.median_dist_to_image = median(&mut dists);
    report.median_zc_decay = median(&mut zc_decays);

    if config.mode == Mode::Variational && !search.candidates.is_empty() {
        report.npm_scan = Some(npm_scan(symbol, n, &search.candidates, &opts)?);
    }
    Ok(report)
}

/// |N^{+-}|, |N^{++}|, |D| along a ray from a located eigenvalue toward the
/// image centroid.
fn npm_scan(
    symbol: &Symbol,
    n: usize,
    candidates: &[eigen::EigenCandidate],
    opts: &SolverOpts,
) -> Result<Vec<NpmScanPoint>, PipelineError> {
    let cand = &candidates[candidates.len() / 2];
    let m_samples = 4096;
    let centroid = (0..m_samples)
        .map(|m| {
            let p = 2.0 * std::f64::consts::PI * m as f64 / m_samples as f64;
            symbol.eval_at_momentum(if p > std::f64::consts::PI {
                p - 2.0 * std::f64::consts::PI
            } else {
                p
            })
        })
        .sum::<Complex64>()
        / m_samples as f64;
    let dir = (centroid - cand.epsilon) / (centroid - cand.epsilon).norm();
    let k_max = opts.k_max_factor * n;
    let t = symbol.fourier_coeffs((4 * n).max(n + 2 * k_max + 2))?;
    let mut out = Vec::new();
    for i in 0..=20 {
        let tpar = 0.005 * i as f64;
        let eps = cand.epsilon + dir * tpar;
        let kernel = Kernel { symbol: symbol.clone(), epsilon: eps, t: t.clone(), n };
        let fact = match factorize(&kernel, opts.search_grid) {
            Ok(f) => f,
            Err(_) => continue,
        };
        let panel = eigen::variational_q(None, &kernel, &fact, k_max)?;
        out.push(NpmScanPoint {
            t: tpar,
            epsilon: cpx(eps),
            npm_abs: panel.n_pm.norm(),
            npp_abs: panel.n_pp.norm(),
            d_abs: panel.d.norm(),
        });
    }
    Ok(out)
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(values[values.len() / 2])
}

fn fit_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

fn aggregate_metrics(config: &RunConfig, symbol: &Symbol, runs: &[RunReport], metrics: &mut Metrics) {
    // oracle matching over interior eigenvalues (4 excluded per spectrum end)
    let mut matched = 0usize;
    let mut interior_total = 0usize;
    let mut errors: Vec<f64> = Vec::new();
    for run in runs {
        let Some(oracle) = &run.oracle else { continue };
        if run.candidates.is_empty() {
            continue;
        }
        let mut ordered: Vec<(f64, Complex64)> = oracle
            .eigenvalues
            .iter()
            .map(|&(re, im)| {
                let ev = Complex64::new(re, im);
                (curve_parameter(symbol, ev), ev)
            })
            .collect();
        ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let interior: Vec<Complex64> = if ordered.len() > 8 {
            ordered[4..ordered.len() - 4].iter().map(|&(_, e)| e).collect()
        } else {
            Vec::new()
        };
        interior_total += interior.len();
        let tol = config.tolerances.match_tol_factor * run.lambda * run.lambda;
        for ev in interior {
            let best = run
                .candidates
                .iter()
                .map(|c| (Complex64::new(c.epsilon.0, c.epsilon.1) - ev).norm())
                .fold(f64::INFINITY, f64::min);
            if best <= tol {
                matched += 1;
                errors.push(best);
            }
        }
    }
    if interior_total > 0 {
        metrics.match_rate = Some(matched as f64 / interior_total as f64);
        metrics.median_eigenvalue_error = median(&mut errors);
    }

    let dist_points: Vec<(f64, f64)> = runs
        .iter()
        .filter_map(|r| r.median_dist_to_image.map(|d| (r.n as f64, d)))
        .collect();
    metrics.scaling_exponent_fit = fit_log_slope(&dist_points);
    let zc_points: Vec<(f64, f64)> = runs
        .iter()
        .filter_map(|r| r.median_zc_decay.map(|d| (r.n as f64, d)))
        .collect();
    metrics.zc_decay_exponent_fit = fit_log_slope(&zc_points);

    let consistency = runs
        .iter()
        .flat_map(|r| r.candidates.iter().map(|c| c.consistency_linf))
        .fold(f64::NAN, f64::max);
    if consistency.is_finite() {
        metrics.consistency_linf = Some(consistency);
    }

    if let Some(scan) = runs.iter().find_map(|r| r.npm_scan.as_ref()) {
        if let (Some(first), Some(at_005)) = (
            scan.first(),
            scan.iter().find(|p| (p.t - 0.05).abs() < 1e-12),
        ) {
            if at_005.npm_abs > 0.0 {
                metrics.npm_cancellation_ratio = Some(first.npm_abs / at_005.npm_abs);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

/// Serialize the report (pretty JSON, trailing newline) for the canonical
/// output file.
pub fn to_json(report: &SpectrumReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// Flat per-candidate CSV table (oracle rows included for oracle-only runs).
pub fn to_csv(report: &SpectrumReport) -> String {
    let mut out = String::new();
    out.push_str(
        "n,kind,eps_re,eps_im,method,residual,s_abs,q_re,q_im,npm_abs,npp_abs,d_abs,dist_to_image,matched_re,matched_im,oracle_error,consistency_linf,tp_identity_max,lambda\n",
    );
    for run in &report.runs {
        for c in &run.candidates {
            let (mre, mim, oerr) = match (c.matched_oracle, c.oracle_error) {
                (Some((re, im)), Some(err)) => (re.to_string(), im.to_string(), err.to_string()),
                _ => (String::new(), String::new(), String::new()),
            };
            writeln!(
                out,
                "{},candidate,{},{},{:?},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                run.n,
                c.epsilon.0,
                c.epsilon.1,
                c.method,
                c.residual,
                c.s_abs,
                c.q.0,
                c.q.1,
                (c.n_pm.0 * c.n_pm.0 + c.n_pm.1 * c.n_pm.1).sqrt(),
                (c.n_pp.0 * c.n_pp.0 + c.n_pp.1 * c.n_pp.1).sqrt(),
                (c.d.0 * c.d.0 + c.d.1 * c.d.1).sqrt(),
                c.dist_to_image,
                mre,
                mim,
                oerr,
                c.consistency_linf,
                c.tp_identity_max,
                run.lambda,
            )
            .expect("string write");
        }
        if let Some(oracle) = &run.oracle {
            for &(re, im) in &oracle.eigenvalues {
                writeln!(
                    out,
                    "{},oracle,{},{},Oracle,,,,,,,,,,,,,,{}",
                    run.n, re, im, run.lambda
                )
                .expect("string write");
            }
        }
    }
    out
}

fn plot_stem(config: &RunConfig) -> PathBuf {
    let mut stem = config.output_path.clone();
    stem.set_extension("");
    stem
}

/// Write the main report plus the plot-ready CSV side files.
pub fn write_report(config: &RunConfig, report: &SpectrumReport) -> Result<(), PipelineError> {
    let body = match config.format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
    };
    write_file(&config.output_path, &body)?;

    let stem = plot_stem(config);
    // eigenvalues-vs-image scatter per n
    for run in &report.runs {
        if run.candidates.is_empty() && run.oracle.is_none() {
            continue;
        }
        let mut csv = String::from("kind,re,im,dist_to_image\n");
        for c in &run.candidates {
            writeln!(csv, "candidate,{},{},{}", c.epsilon.0, c.epsilon.1, c.dist_to_image)
                .expect("string write");
        }
        if let Some(oracle) = &run.oracle {
            for &(re, im) in &oracle.eigenvalues {
                writeln!(csv, "oracle,{re},{im},").expect("string write");
            }
        }
        let path = stem.with_file_name(format!(
            "{}_eigs_n{}.csv",
            stem.file_name().and_then(|s| s.to_str()).unwrap_or("report"),
            run.n
        ));
        write_file(&path, &csv)?;
    }
    // distance-to-image vs n (log-log ready)
    if config.mode == Mode::Scaling {
        let mut csv = String::from("n,median_dist_to_image,median_zc_decay,lambda\n");
        for run in &report.runs {
            writeln!(
                csv,
                "{},{},{},{}",
                run.n,
                run.median_dist_to_image.map(|d| d.to_string()).unwrap_or_default(),
                run.median_zc_decay.map(|d| d.to_string()).unwrap_or_default(),
                run.lambda
            )
            .expect("string write");
        }
        let path = stem.with_file_name(format!(
            "{}_scaling.csv",
            stem.file_name().and_then(|s| s.to_str()).unwrap_or("report")
        ));
        write_file(&path, &csv)?;
    }
    // N^{+-} magnitude scan
    for run in &report.runs {
        if let Some(scan) = &run.npm_scan {
            let mut csv = String::from("t,eps_re,eps_im,npm_abs,npp_abs,d_abs\n");
            for p in scan {
                writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    p.t, p.epsilon.0, p.epsilon.1, p.npm_abs, p.npp_abs, p.d_abs
                )
                .expect("string write");
            }
            let path = stem.with_file_name(format!(
                "{}_npm_scan_n{}.csv",
                stem.file_name().and_then(|s| s.to_str()).unwrap_or("report"),
                run.n
            ));
            write_file(&path, &csv)?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, body: &str) -> Result<(), PipelineError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })?;
        }
    }
    std::fs::write(path, body).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config(mode: Mode, n_list: Vec<usize>, out: &str) -> RunConfig {
        RunConfig {
            alpha: 1.0,
            beta: 0.0,
            n_list,
            mode,
            tolerances: Tolerances::default(),
            output_path: PathBuf::from(out),
            seed_count: None,
            format: Format::Json,
        }
    }

    #[test]
    fn validation_errors() {
        let mut c = base_config(Mode::OracleOnly, vec![], "r.json");
        assert!(matches!(c.validate(), Err(ConfigError::EmptyNList)));
        c.n_list = vec![2];
        assert!(matches!(c.validate(), Err(ConfigError::NTooSmall(2))));
        c.n_list = vec![16];
        c.mode = Mode::Scaling;
        assert!(matches!(c.validate(), Err(ConfigError::ScalingNeedsTwo)));
    }

    #[test]
    fn oracle_only_tridiagonal() {
        let config = base_config(Mode::OracleOnly, vec![16], "unused.json");
        let report = execute(&config).unwrap();
        let run = &report.runs[0];
        let oracle = run.oracle.as_ref().unwrap();
        assert_eq!(oracle.eigenvalues.len(), 16);
        let mut want: Vec<f64> = (1..=16)
            .map(|m| 2.0 - 2.0 * (m as f64 * std::f64::consts::PI / 17.0).cos())
            .collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (&(re, im), w) in oracle.eigenvalues.iter().zip(&want) {
            assert!((re - w).abs() < 1e-10 && im.abs() < 1e-10);
        }
        assert!(oracle.trace_error < 1e-10);
    }

    #[test]
    fn spectrum_identity_symbol_refuses_expansion() {
        let mut config = base_config(Mode::Spectrum, vec![8], "unused.json");
        config.alpha = 0.0;
        config.beta = 0.0;
        let report = execute(&config).unwrap();
        let run = &report.runs[0];
        let oracle = run.oracle.as_ref().unwrap();
        for &(re, im) in &oracle.eigenvalues {
            assert!((re - 1.0).abs() < 1e-10 && im.abs() < 1e-10);
        }
        assert!(run.candidates.is_empty());
        assert!(
            report.notes.iter().any(|n| n.contains("refused")),
            "notes: {:?}",
            report.notes
        );
    }

    #[test]
    fn deterministic_serialization() {
        let config = base_config(Mode::OracleOnly, vec![8], "unused.json");
        let a = to_json(&execute(&config).unwrap());
        let b = to_json(&execute(&config).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn csv_has_oracle_rows() {
        let config = base_config(Mode::OracleOnly, vec![6], "unused.json");
        let report = execute(&config).unwrap();
        let csv = to_csv(&report);
        assert_eq!(csv.lines().count(), 1 + 6);
        assert!(csv.lines().nth(1).unwrap().contains("oracle"));
    }
}
