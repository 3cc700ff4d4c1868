use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use mermin_core::optimize::WalkCache;
use mermin_core::qft::PeriodicSpec;
use mermin_core::scan::{self, ScanOptions, ScanRow};
use mermin_core::Error;

/// Mermin-polynomial and hyperdeterminant scans over Grover and QFT runs.
#[derive(Parser)]
#[command(name = "mermin-scan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::enum_variant_names)]
enum Command {
    /// Tune a constant-family Mermin operator on φ_ent, then evaluate every Grover iteration
    GroverScan {
        #[arg(long, default_value_t = 4)]
        qubits: usize,
        /// Index of the searched basis state
        #[arg(long, default_value_t = 0)]
        target: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Optimize all 6n Mermin parameters at every step of the QFT on a periodic state
    QftScan {
        #[command(flatten)]
        periodic: Periodic,
        #[arg(long, default_value_t = 4)]
        qubits: usize,
        #[command(flatten)]
        common: Common,
    },
    /// |Δ2222| at every step of the four-qubit QFT on a periodic state
    HyperdetScan {
        #[command(flatten)]
        periodic: Periodic,
        /// Output file (or directory with --all-periodic); standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Args)]
struct Periodic {
    #[arg(long, required_unless_present = "all_periodic")]
    shift: Option<usize>,
    #[arg(long, required_unless_present = "all_periodic")]
    period: Option<usize>,
    /// Run every valid (shift, period) pair, one CSV per pair in the --out directory
    #[arg(long, conflicts_with_all = ["shift", "period"], requires = "out")]
    all_periodic: bool,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent seeded walks per optimization; the best is kept
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Output file (or directory with --all-periodic); standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optimizer memo file; safe to delete
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numerical(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Capacity(_) => Failure::Usage(e.to_string()),
            Error::NumericalConsistency(_) | Error::Evaluation(_) => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::GroverScan { qubits, target, common } => grover(qubits, target, &common),
        Command::QftScan { periodic, qubits, common } => {
            let opts = ScanOptions { seed: common.seed, restarts: common.restarts };
            let mut cache = open_cache(common.cache.as_deref())?;
            for_each_spec(&periodic, qubits, common.out.as_deref(), "", |spec| {
                let started = Instant::now();
                let rows = scan::qft_scan(spec, opts, cache.as_mut())?;
                if common.verbose {
                    eprintln!(
                        "qft-scan l={} r={}: {} steps in {:.1?}",
                        spec.shift(),
                        spec.period(),
                        rows.len(),
                        started.elapsed()
                    );
                }
                Ok(rows)
            })?;
            save_cache(cache)
        }
        Command::HyperdetScan { periodic, out, verbose } => {
            for_each_spec(&periodic, 4, out.as_deref(), "_hyperdet", |spec| {
                let rows = scan::hyperdet_scan(spec)?;
                if verbose {
                    let max = rows.iter().map(|r| r.value).fold(0.0, f64::max);
                    eprintln!("hyperdet-scan l={} r={}: max |Δ| = {max:e}", spec.shift(), spec.period());
                }
                Ok(rows)
            })
        }
    }
}

fn grover(qubits: usize, target: usize, common: &Common) -> Result<(), Failure> {
    if !scan::GROVER_QUBITS.contains(&qubits) {
        return Err(Failure::Usage(format!("--qubits must lie in 2..=12, got {qubits}")));
    }
    let opts = ScanOptions { seed: common.seed, restarts: common.restarts };
    let progress = common.verbose || qubits >= 10;
    if progress {
        eprintln!("grover-scan: optimizing Mermin parameters on φ_ent for {qubits} qubits");
    }
    let started = Instant::now();
    let mut cache = open_cache(common.cache.as_deref())?;
    let result = scan::grover_scan(qubits, target, opts, cache.as_mut())?;
    save_cache(cache)?;
    if progress {
        eprintln!(
            "grover-scan: f(φ_ent) = {} after {} evaluations, {} iterations scanned in {:.1?}",
            scan::format_value(result.walk.value),
            result.walk.evaluations,
            result.rows.len(),
            started.elapsed()
        );
    }
    if common.verbose {
        eprintln!("grover-scan: parameters {:?}", result.walk.argmax);
    }
    emit(common.out.as_deref(), &result.rows)?;
    eprintln!("k_max = {}, peak = {}", result.k_max(), scan::format_value(result.peak()));
    Ok(())
}

fn for_each_spec<F>(
    periodic: &Periodic,
    qubits: usize,
    out: Option<&Path>,
    suffix: &str,
    mut job: F,
) -> Result<(), Failure>
where
    F: FnMut(&PeriodicSpec) -> Result<Vec<ScanRow>, Failure>,
{
    if periodic.all_periodic {
        let dir = out.expect("clap enforces --out with --all-periodic");
        fs::create_dir_all(dir)?;
        for spec in PeriodicSpec::enumerate(qubits) {
            let rows = job(&spec)?;
            let name = format!("period_{}-{}{suffix}.csv", spec.shift(), spec.period());
            emit(Some(&dir.join(name)), &rows)?;
        }
        return Ok(());
    }
    let (Some(l), Some(r)) = (periodic.shift, periodic.period) else {
        return Err(Failure::Usage("--shift and --period are required".into()));
    };
    let spec = PeriodicSpec::new(l, r, qubits)?;
    let rows = job(&spec)?;
    emit(out, &rows)
}

fn emit(out: Option<&Path>, rows: &[ScanRow]) -> Result<(), Failure> {
    match out {
        Some(path) => scan::write_csv(BufWriter::new(File::create(path)?), rows)?,
        None => scan::write_csv(io::stdout().lock(), rows)?,
    }
    Ok(())
}

fn open_cache(path: Option<&Path>) -> Result<Option<WalkCache>, Failure> {
    Ok(path.map(WalkCache::open).transpose()?)
}

fn save_cache(cache: Option<WalkCache>) -> Result<(), Failure> {
    if let Some(c) = cache {
        c.save()?;
    }
    io::stderr().flush()?;
    Ok(())
}
