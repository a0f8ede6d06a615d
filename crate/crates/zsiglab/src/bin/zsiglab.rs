//! Batch experiment runner: orbits, Zsigmondy scans, family scans, abc
//! instrumentation, and splitting-tower audits, as reproducible CSV/JSON
//! reports.
//!
//! Exit codes: 0 success (Partial/Inconclusive rows included), 2 config
//! error, 3 resource cap (digit cap or factorization budget), 4 precondition
//! violation (preperiodic start, PCF base, reducible map).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zsiglab::error::Error;
use zsiglab::report::{
    run_abc, run_family_scan, run_galois, run_orbit, run_zsigmondy, ExperimentConfig,
    GaloisOutput, Report,
};

#[derive(Parser)]
#[command(name = "zsiglab", version, about = "orbit arithmetic laboratory", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Base field: Q, Qi, or Q(-D) for D in {1,2,3,7,11,19,43,67,163}
    #[arg(long, default_value = "Q")]
    field: String,
    /// Largest orbit level to process
    #[arg(long = "n-max", default_value_t = 8)]
    n_max: usize,
    /// Smallest orbit level to process (where a range applies)
    #[arg(long = "n-min", default_value_t = 2)]
    n_min: usize,
    /// Epsilon for the radical lower bound
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    /// Delta for the imprimitive-mass bound
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    /// Trial-division bound of the factor budget
    #[arg(long = "trial-bound", default_value_t = 1_000_000)]
    trial_bound: u64,
    /// Pollard-rho iteration pool of the factor budget
    #[arg(long = "rho-iters", default_value_t = 10_000_000)]
    rho_iters: u64,
    /// Worker threads; changes wall time only, never values
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed recorded in the report (and used by sampling commands)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact orbit with heights and a certified canonical-height estimate
    Orbit {
        #[command(flatten)]
        common: CommonArgs,
        /// Map spec "d;gamma;c" with elements in the field's text form
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        /// Orbit start
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Alias for --n-max
        #[arg(long)]
        n: Option<usize>,
    },
    /// Per-level primitive parts, membership, and multiplicity-one witnesses
    Zsigmondy {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Scan the zero-hitting family and fit N against log+ nu
    FamilyScan {
        #[command(flatten)]
        common: CommonArgs,
        /// Family base: the integral shift c - gamma of the seed map
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        base: String,
        /// Map degree d >= 2
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Orbit abc triples with radical/quality and both bound margins
    Abc {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Stability and tower-maximality audit (or --family example
    /// verification)
    Galois {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, allow_hyphen_values = true)]
        map: Option<String>,
        /// "example" verifies the conjugated non-maximality family
        #[arg(long)]
        family: Option<String>,
        /// Largest family index for --family example
        #[arg(long = "i-max")]
        i_max: Option<usize>,
    },
}

fn base_config(command: &str, common: &CommonArgs) -> ExperimentConfig {
    let mut config = ExperimentConfig::new(command);
    config.field = common.field.clone();
    config.n_min = common.n_min;
    config.n_max = common.n_max;
    config.bounds.epsilon = common.epsilon;
    config.bounds.delta = common.delta;
    config.budget.trial_bound = common.trial_bound;
    config.budget.rho_iterations = common.rho_iters;
    config.jobs = common.jobs;
    config.seed = common.seed;
    config
}

fn emit<R: serde::Serialize>(report: &Report<R>, common: &CommonArgs) -> std::io::Result<()> {
    let text = match common.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::OperandOverflow { .. } | Error::BudgetExceeded { .. } | Error::ExpansionCap { .. } => 3,
        Error::PreperiodicOrbit | Error::PCFBase | Error::ReducibleBase => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let handle = |e: Error| (exit_code_for(&e), e.to_string());
    let io_err = |e: std::io::Error| (2u8, format!("io error: {e}"));
    match cli.command {
        Command::Orbit { common, map, alpha, n } => {
            let mut config = base_config("orbit", &common);
            config.map = Some(map);
            config.alpha = Some(alpha);
            if let Some(n) = n {
                config.n_max = n;
            }
            let report = run_orbit(&config).map_err(handle)?;
            emit(&report, &common).map_err(io_err)
        }
        Command::Zsigmondy { common, map, alpha } => {
            let mut config = base_config("zsigmondy", &common);
            config.map = Some(map);
            config.alpha = Some(alpha);
            let report = run_zsigmondy(&config).map_err(handle)?;
            emit(&report, &common).map_err(io_err)
        }
        Command::FamilyScan { common, base, degree } => {
            let mut config = base_config("family-scan", &common);
            config.base = Some(base);
            config.degree = Some(degree);
            config.family = Some("taunec".into());
            let report = run_family_scan(&config).map_err(handle)?;
            emit(&report, &common).map_err(io_err)
        }
        Command::Abc { common, map, alpha } => {
            let mut config = base_config("abc", &common);
            config.map = Some(map);
            config.alpha = Some(alpha);
            let report = run_abc(&config).map_err(handle)?;
            emit(&report, &common).map_err(io_err)
        }
        Command::Galois { common, map, family, i_max } => {
            let mut config = base_config("galois", &common);
            config.map = map;
            config.family = family;
            config.i_max = i_max;
            if config.family.is_none() && config.map.is_none() {
                return Err((2, "galois needs --map or --family example".into()));
            }
            match run_galois(&config).map_err(handle)? {
                GaloisOutput::Tower(report) => emit(&report, &common).map_err(io_err),
                GaloisOutput::Family(report) => emit(&report, &common).map_err(io_err),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("zsiglab: {message}");
            ExitCode::from(code)
        }
    }
}
