use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperspectra::cli::{
    analyze, exit, parse_hgr, random_hypergraph, render_hgr, verify, verify_report,
    AnalyzeOptions, SpectralReport,
};
use hyperspectra::solvers::ShiftPolicy;
use hyperspectra::Hypergraph;

#[derive(Parser)]
#[command(name = "hyperspectra", version, about = "Spectra of adjacency tensors of uniform multi-hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a JSON spectral report for an .hgr file.
    Analyze {
        path: PathBuf,
        /// H-spectral radius by NQZ.
        #[arg(long)]
        h_radius: bool,
        /// Largest Z-eigenvalue by multi-start SS-HOPM, with bounds.
        #[arg(long)]
        z_star: bool,
        /// Z-spectrum sample by multi-start Newton (small n only) and symmetry check.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Print a seeded random hypergraph in .hgr format.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        edges: usize,
        /// Distinct m-subsets instead of independent multisets.
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the invariant battery and print a PASS/FAIL table.
    Verify {
        path: PathBuf,
        /// Check this JSON report instead of only a fresh analysis.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Iterate tolerance (NQZ bracket gap, SS-HOPM value change).
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Residual an SS-HOPM start must reach to count as converged; emitted
    /// pairs are certified against 1e-8 regardless.
    #[arg(long, default_value_t = 1e-9)]
    residual_tol: f64,
    /// Random nonnegative SS-HOPM starts, in addition to the uniform vector.
    #[arg(long, default_value_t = 32)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// SS-HOPM shift: `ceiling` (ceil(m * sum of entries)), `row-sum` (smaller,
    /// faster) or a number.
    #[arg(long, default_value = "ceiling", value_parser = parse_shift)]
    shift: ShiftPolicy,
    /// NQZ perturbation schedule, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1e-3, 1e-4, 1e-5])]
    mu: Vec<f64>,
    /// Vertex cap for the exponential searches (nicely-connected, oracle).
    #[arg(long, requires = "accept_exponential")]
    limit_n: Option<usize>,
    /// Acknowledge that --limit-n can make the run take exponential time.
    #[arg(long)]
    accept_exponential: bool,
}

impl SolverArgs {
    fn options(&self) -> AnalyzeOptions {
        let mut opts = AnalyzeOptions {
            tol: self.tol,
            residual_tol: self.residual_tol,
            starts: self.starts,
            seed: self.seed,
            max_iter: self.max_iter,
            shift: self.shift,
            mu: self.mu.clone(),
            ..AnalyzeOptions::default()
        };
        if let Some(limit) = self.limit_n {
            opts.limits.nicely_limit = limit;
            opts.oracle_max_n = limit;
        }
        opts
    }
}

fn parse_shift(s: &str) -> Result<ShiftPolicy, String> {
    match s {
        "ceiling" => Ok(ShiftPolicy::Ceiling),
        "row-sum" => Ok(ShiftPolicy::RowSum),
        _ => s
            .parse::<f64>()
            .ok()
            .filter(|a| a.is_finite() && *a >= 0.0)
            .map(ShiftPolicy::Fixed)
            .ok_or_else(|| format!("expected `ceiling`, `row-sum` or a nonnegative number, got `{s}`")),
    }
}

fn read_text(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(exit::INPUT as u8)
    })
}

fn load(path: &Path) -> Result<Hypergraph, ExitCode> {
    parse_hgr(&read_text(path)?).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(exit::INPUT as u8)
    })
}

/// Writes to stdout, ignoring a reader that closed the pipe early.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Analyze {
            path,
            h_radius,
            z_star,
            oracle,
            solver,
        } => {
            let h = load(&path)?;
            let opts = AnalyzeOptions {
                h_radius,
                z_star,
                oracle,
                ..solver.options()
            };
            let report = analyze(&h, &opts);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit(&format!("{}\n", report.to_json()));
            let code = if report.certification.passed {
                exit::OK
            } else {
                exit::CERTIFICATION
            };
            Ok(ExitCode::from(code as u8))
        }
        Command::Gen {
            n,
            m,
            edges,
            simple,
            seed,
        } => {
            let h = random_hypergraph(n, m, edges, simple, seed).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(exit::INPUT as u8)
            })?;
            emit(&render_hgr(&h));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            path,
            report,
            solver,
        } => {
            let h = load(&path)?;
            let outcome = match report {
                Some(report_path) => {
                    let text = read_text(&report_path)?;
                    let claimed: SpectralReport = serde_json::from_str(&text).map_err(|e| {
                        eprintln!("error: {}: {e}", report_path.display());
                        ExitCode::from(exit::INPUT as u8)
                    })?;
                    let opts = AnalyzeOptions {
                        h_radius: claimed.h_radius.is_some(),
                        z_star: claimed.z_star.is_some(),
                        oracle: claimed.z_spectrum_sample.is_some(),
                        ..solver.options()
                    };
                    verify_report(&h, &claimed, &opts)
                }
                None => verify(&h, &solver.options()),
            };
            emit(&outcome.table());
            Ok(ExitCode::from(outcome.exit_code() as u8))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(exit::INPUT as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
