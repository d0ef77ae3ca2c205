use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brillouin_core::config::RunConfig;
use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Format;

#[derive(Debug, Parser)]
#[command(name = "brillouin", version, about = "Brillouin slow light and cross-phase calculations")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Overrides `noise.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for sweeps and ensembles.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Vibrational,
    Acoustic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cross-phase figures of merit and regime warnings.
    Figures,
    /// Slow-light response at the configured pump detunings.
    Slowlight,
    /// Grid scan over (b1, b2) as CSV, plus the selected working point.
    Sweep,
    /// Photon densities after the fibre for the given input densities.
    Riccati {
        /// Input density of mode u, 1/m.
        #[arg(long)]
        n_u: f64,
        /// Input density of mode d, 1/m.
        #[arg(long)]
        n_d: f64,
    },
    /// Noise-free field evolution as CSV snapshots.
    Simulate {
        #[arg(long, value_enum)]
        scenario: Scenario,
    },
    /// Langevin ensemble of added photons against the closed forms.
    Ensemble {
        #[arg(long, value_enum)]
        scenario: Scenario,
    },
    /// Checks the config and the regime conditions.
    Validate,
}

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CONFIG: u8 = 2;
    pub const NUMERICAL: u8 = 3;
    pub const NO_SOLUTION: u8 = 4;
    pub const IO: u8 = 5;
    pub const VALIDATION: u8 = 6;
}

fn error_status(e: &brillouin_core::Error) -> u8 {
    use brillouin_core::Error::*;
    match e {
        InvalidParameter { .. } | Config(_) | Json(_) | Cfl { .. } => exit::CONFIG,
        NonFinite { .. } | Domain(_) | Unnormalized(_) => exit::NUMERICAL,
        Io(_) => exit::IO,
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(at(p))?);
            w.write_all(bytes).and_then(|_| w.flush()).map_err(at(p))
        }
        None => {
            let mut w = io::stdout().lock();
            w.write_all(bytes)
                .and_then(|_| w.flush())
                .map_err(|e| Failure::from(brillouin_core::Error::from(e)))
        }
    }
}

/// An error with the file it concerns, when there is one.
struct Failure {
    path: Option<PathBuf>,
    error: brillouin_core::Error,
}

impl From<brillouin_core::Error> for Failure {
    fn from(error: brillouin_core::Error) -> Self {
        Self { path: None, error }
    }
}

fn at(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure {
        path: Some(path.to_path_buf()),
        error: e.into(),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let path = cli
        .config
        .ok_or_else(|| brillouin_core::Error::Config("--config is required".into()))?;
    let mut cfg = RunConfig::load(&path).map_err(|error| Failure {
        path: matches!(error, brillouin_core::Error::Io(_)).then(|| path.clone()),
        error,
    })?;
    if let (Some(seed), Some(noise)) = (cli.seed, cfg.noise.as_mut()) {
        noise.seed = seed;
    }

    let outcome = match cli.command {
        Command::Figures => commands::figures(&cfg)?,
        Command::Slowlight => commands::slowlight(&cfg)?,
        Command::Sweep => commands::sweep(&cfg)?,
        Command::Riccati { n_u, n_d } => commands::riccati(&cfg, n_u, n_d)?,
        Command::Simulate { scenario } => commands::simulate(&cfg, scenario)?,
        Command::Ensemble { scenario } => commands::ensemble(&cfg, scenario)?,
        Command::Validate => commands::validate(&cfg),
    };

    match outcome.body {
        commands::Body::Report(r) => emit(cli.out.as_deref(), r.render(cli.format).as_bytes())?,
        commands::Body::Csv { csv, summary } => match cli.out.as_deref() {
            Some(p) => {
                emit(Some(p), &csv)?;
                eprint!("{}", summary.render(cli.format));
            }
            None => emit(None, &csv)?,
        },
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(exit::CONFIG);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { path, error }) => {
            match path {
                Some(p) => eprintln!("error: {}: {error}", p.display()),
                None => eprintln!("error: {error}"),
            }
            ExitCode::from(error_status(&error))
        }
    }
}
