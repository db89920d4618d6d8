//! Command-line front end for two-stage Bayes factor designs.

pub mod config;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bf_twostage::{simon_search, Calibrator, Error};
use clap::{Args, Parser, Subcommand};

use config::{ConfigError, OutputFormat, PowerPrior, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "bf2stage", version, about = "Calibrate two-stage single-arm Bayes factor designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Configuration file with one `key = value` per line.
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `output_format` from the configuration.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the design minimizing the expected size under the null.
    Calibrate {
        #[command(flatten)]
        common: Common,
        /// Use the iterative search with the stability window instead.
        #[arg(long)]
        iterative: bool,
    },
    /// Operating characteristics of one design.
    Oc {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
    },
    /// Sweep the interim size at a fixed final size; CSV unless `--format table`.
    Scan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n2: usize,
    },
    /// Simon's optimal and minimax designs for the same error rates.
    Simon {
        #[command(flatten)]
        common: Common,
    },
}

/// Failures mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Usage(String),
    Infeasible(String),
    Internal(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Internal(_) | CliError::Io(_) => 1,
        })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "configuration error: {e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
            CliError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(reason) => CliError::Infeasible(reason.to_string()),
            Error::Domain(m) => CliError::Usage(m),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn load(common: &Common) -> Result<(RunConfig, OutputFormat), CliError> {
    let config = RunConfig::from_path(&common.config).map_err(CliError::Config)?;
    let format = common.format.unwrap_or(config.output_format);
    Ok((config, format))
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Calibrate { common, iterative } => {
            let (config, format) = load(common)?;
            let cal = Calibrator::new(config.problem(), config.constraints(), config.n_max)?;
            let design = if *iterative {
                cal.calibrate()?
            } else {
                cal.optimal()?
            };
            report::design_row(out, &design, format)
        }
        Command::Oc { common, n1, n2 } => {
            let (config, format) = load(common)?;
            if !(*n1 >= 1 && n1 < n2 && *n2 <= config.n_max) {
                return Err(CliError::Usage(format!(
                    "need 1 <= n1 < n2 <= n_max = {}, got n1 = {n1}, n2 = {n2}",
                    config.n_max
                )));
            }
            let problem = config.problem();
            let design = problem.design(*n1, *n2)?;
            let oc = bf_twostage::operating_characteristics(
                &design,
                &problem.ap,
                &problem.priors,
            )?;
            report::characteristics(out, &design, &oc, format)
        }
        Command::Scan { common, n2 } => {
            let (config, _) = load(common)?;
            let format = common.format.unwrap_or(OutputFormat::Csv);
            let rows = bf_twostage::scan(&[*n2], &config.problem(), &config.constraints())?;
            report::scan(out, &rows, format)
        }
        Command::Simon { common } => {
            let (config, format) = load(common)?;
            let PowerPrior::Point(p1) = config.power_prior else {
                return Err(CliError::Usage(
                    "Simon requires a point alternative; set `p1` instead of `a_d`/`b_d`".into(),
                ));
            };
            match simon_search(config.p0, p1, config.alpha, config.beta, config.n_max)? {
                Some((optimal, minimax)) => report::simon(out, &minimax, &optimal, format),
                None => Err(CliError::Infeasible(format!(
                    "no Simon design with n2 <= n_max = {} meets the error rates",
                    config.n_max
                ))),
            }
        }
    }
}

/// Parses arguments, runs, and reports failures on standard error.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out).and_then(|()| out.flush().map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bf2stage: {e}");
            e.exit_code()
        }
    }
}
