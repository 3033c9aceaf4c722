use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gpbalance::balance::{full_report, scan_open_window, scan_range};
use gpbalance::formulas::verify::verify_formulas;
use gpbalance::report::{render, Format, Output, Payload, RunManifest, SingleEll};
use gpbalance::{Error, GpParams};

#[derive(Parser, Debug)]
#[command(name = "gpbalance", version, about = "l-distance-balance analysis of generalized Petersen graphs")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-ℓ verdicts for one GP(n,k).
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: Option<u32>,
    },
    /// Verdicts over a range of orders, with the candidate threshold.
    Scan(ScanArgs),
    /// Compare the k = 3 or k = 4 formula tables with BFS.
    VerifyFormulas {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        n_max: usize,
    },
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, required_unless_present = "open_window", conflicts_with = "open_window")]
    n_min: Option<usize>,
    #[arg(long, required_unless_present = "open_window", conflicts_with = "open_window")]
    n_max: Option<usize>,
    /// Scan the open window for k >= 5.
    #[arg(long, alias = "problem51")]
    open_window: bool,
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let start = Instant::now();
    let mut params: BTreeMap<String, Value> = BTreeMap::new();
    let mut code = ExitCode::SUCCESS;
    let payload = match cli.command {
        Command::Check { n, k, ell } => {
            params.insert("n".into(), json!(n));
            params.insert("k".into(), json!(k));
            params.insert("ell".into(), json!(ell));
            let p = GpParams::new(n, k)?;
            let report = full_report(p);
            match ell {
                None => Payload::Check(report),
                Some(ell) => {
                    let verdict = *report.verdict(ell)?;
                    Payload::CheckEll(SingleEll { params: p, diameter: report.diameter, verdict })
                }
            }
        }
        Command::Scan(args) => {
            params.insert("k".into(), json!(args.k));
            let scan = if args.open_window {
                params.insert("open_window".into(), json!(true));
                scan_open_window(args.k)?
            } else {
                let (lo, hi) = (args.n_min.unwrap_or_default(), args.n_max.unwrap_or_default());
                params.insert("n_min".into(), json!(lo));
                params.insert("n_max".into(), json!(hi));
                scan_range(args.k, lo, hi)?
            };
            Payload::Scan(scan)
        }
        Command::VerifyFormulas { k, n_max } => {
            params.insert("k".into(), json!(k));
            params.insert("n_max".into(), json!(n_max));
            let sweep = verify_formulas(k, n_max)?;
            if !sweep.is_clean() {
                code = ExitCode::from(1);
            }
            Payload::Verify(sweep)
        }
    };
    let mut manifest = RunManifest::new(std::env::args().collect(), params);
    manifest.wall_clock = start.elapsed();
    let text = render(&Output { manifest, payload }, cli.format).map_err(Failure::Io)?;
    match cli.out {
        Some(path) => std::fs::write(path, text).map_err(Failure::Io)?,
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(Failure::Io(e)),
                _ => {}
            }
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
