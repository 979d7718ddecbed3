use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use toeplitz_spectra::report::{self, Format, Mode, RunConfig};

#[derive(Parser)]
#[command(
    name = "toeplitz-spectra",
    about = "Finite-n Toeplitz spectra for singular symbols: expansion-based eigenvalue search with a dense oracle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline described by a JSON config file.
    Run {
        /// Declarative run configuration (JSON).
        config_file: PathBuf,
        /// Override the zero-strength exponent alpha.
        #[arg(long)]
        alpha: Option<f64>,
        /// Override the jump exponent beta.
        #[arg(long)]
        beta: Option<f64>,
        /// Override the matrix dimensions (comma separated).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Override the pipeline mode.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Override the report output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the report format.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config_file, alpha, beta, n, mode, out, format } => {
            let mut config = match RunConfig::from_file(&config_file) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("config error: {e}");
                    return ExitCode::from(1);
                }
            };
            if let Some(a) = alpha {
                config.alpha = a;
            }
            if let Some(b) = beta {
                config.beta = b;
            }
            if let Some(n_list) = n {
                config.n_list = n_list;
            }
            if let Some(m) = mode {
                config.mode = m;
            }
            if let Some(o) = out {
                config.output_path = o;
            }
            if let Some(f) = format {
                config.format = f;
            }
            if let Err(e) = config.validate() {
                eprintln!("config error: {e}");
                return ExitCode::from(1);
            }
            match report::run(&config) {
                Ok(rep) => {
                    println!(
                        "wrote {} ({} run{}, {} candidate{})",
                        config.output_path.display(),
                        rep.runs.len(),
                        if rep.runs.len() == 1 { "" } else { "s" },
                        rep.runs.iter().map(|r| r.candidates.len()).sum::<usize>(),
                        if rep.runs.iter().map(|r| r.candidates.len()).sum::<usize>() == 1 {
                            ""
                        } else {
                            "s"
                        },
                    );
                    for note in &rep.notes {
                        println!("note: {note}");
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    // flush whatever partial state can still be serialized
                    eprintln!("pipeline error: {e}");
                    let partial = report::SpectrumReport {
                        schema_version: report::SCHEMA_VERSION,
                        config: config.clone(),
                        runs: Vec::new(),
                        metrics: Default::default(),
                        notes: vec![format!("pipeline error: {e}")],
                        provenance: report::Provenance {
                            version: env!("CARGO_PKG_VERSION").to_string(),
                            timestamp: std::env::var("SOURCE_DATE_EPOCH")
                                .unwrap_or_else(|_| "unset".into()),
                            grid_sizes: Vec::new(),
                            max_tail_bound: 0.0,
                        },
                    };
                    let _ = report::write_report(&config, &partial);
                    ExitCode::from(2)
                }
            }
        }
    }
}
