mod commands;
mod config;
mod output;

use std::io::{BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] pfhkit::Error),
    #[error("missing required setting {0}")]
    Missing(&'static str),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid slope {0:?}; expected p/q")]
    Slope(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("json output failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

const EXIT_DOMAIN: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(pfhkit::Error::Parse(_)) => EXIT_PARSE,
            CliError::Missing(_) | CliError::Config(_) | CliError::Slope(_) => EXIT_PARSE,
            _ => EXIT_DOMAIN,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pfhkit", version, about = "Index, energy and homology computations for periodic Floer generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// List the generators of degree --degree.
    Generators,
    /// Index of --set and its components.
    Index,
    /// Pairing term over Farey slopes up to --max-q.
    Qtau,
    /// Energies of --set, or of every generator, in class m[F].
    Energy,
    /// Closed-form orbit reconstruction checks.
    VerifyOrbit,
    /// Finite-difference check of the pulled-back contact form.
    VerifyPullback,
    /// First homology of the mapping torus and the fibration.
    Homology,
    /// Cobordism map values on the generators.
    Cobordism,
    /// Run the full invariant suite.
    Selfcheck,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let c = cli.config.resolve()?;
    let out = match cli.command {
        Command::Generators => commands::generators(&c),
        Command::Index => commands::index(&c),
        Command::Qtau => commands::qtau(&c),
        Command::Energy => commands::energy(&c),
        Command::VerifyOrbit => commands::verify_orbit_cmd(&c),
        Command::VerifyPullback => commands::verify_pullback(&c),
        Command::Homology => commands::homology(&c),
        Command::Cobordism => commands::cobordism(&c),
        Command::Selfcheck => commands::selfcheck(&c),
    }?;
    let stdout = std::io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    out.write(c.format(), &mut w)?;
    w.flush()?;
    Ok(out.pass())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(EXIT_VERIFICATION)
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
