mod cache;
mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use taut_core::coefficients::CoeffMode;
use taut_core::kappa::SignMode;
use taut_core::partition::SubsetMode;
use taut_core::presentation::{Flags, Rel5Mode};

#[derive(Parser, Debug)]
#[command(name = "taut", version, about = "Tautological rings of genus-zero stable maps to projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the presentation of T as JSON.
    Present(Common),
    /// Per-degree dimensions of T and, with --invariant, of its invariant part.
    Hilbert(Common),
    /// Run the acceptance checks.
    Verify(Common),
    /// Ratios of top-degree classes, e.g. "k2^4 k2^2*k3 k3^2".
    Integrate {
        #[command(flatten)]
        common: Common,
        /// Space-separated monomials; several arguments are concatenated.
        #[arg(required = true)]
        monomials: Vec<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Rel5Arg {
    Derived,
    AsPrinted,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SubsetArg {
    Strict,
    Inclusive,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CoeffArg {
    Derived,
    Printed,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SignArg {
    Symmetric,
    Printed,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Target projective space dimension.
    #[arg(long)]
    n: Option<u32>,
    /// Curve degree.
    #[arg(long)]
    d: Option<u8>,
    /// Include the invariant part.
    #[arg(long)]
    invariant: bool,
    /// Highest degree to compute; defaults to dim + 2.
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value = "derived")]
    rel5: Rel5Arg,
    #[arg(long, value_enum, default_value = "strict")]
    subsets: SubsetArg,
    /// Coefficient convention for b_h and c_h.
    #[arg(long, value_enum, default_value = "derived")]
    coeffs: CoeffArg,
    /// Sign convention of the kappa recursion.
    #[arg(long, value_enum, default_value = "symmetric")]
    sign: SignArg,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Slice cache directory; falls back to $TAUT_CACHE_DIR.
    #[arg(long, env = "TAUT_CACHE_DIR")]
    cache_dir: Option<std::path::PathBuf>,
    /// Worker threads for independent work.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Check group for `verify`.
    #[arg(long, default_value = "all")]
    suite: String,
}

impl Common {
    pub fn flags(&self) -> Flags {
        Flags {
            rel5: match self.rel5 {
                Rel5Arg::Derived => Rel5Mode::Derived,
                Rel5Arg::AsPrinted => Rel5Mode::AsPrinted,
            },
            subsets: match self.subsets {
                SubsetArg::Strict => SubsetMode::Strict,
                SubsetArg::Inclusive => SubsetMode::Inclusive,
            },
            coeffs: match self.coeffs {
                CoeffArg::Derived => CoeffMode::Derived,
                CoeffArg::Printed => CoeffMode::Printed,
            },
            sign: match self.sign {
                SignArg::Symmetric => SignMode::Symmetric,
                SignArg::Printed => SignMode::Printed,
            },
        }
    }

    pub fn nd(&self) -> Result<(u32, u8), CliError> {
        match (self.n, self.d) {
            (Some(n), Some(d)) if n >= 1 && d >= 1 => Ok((n, d)),
            (Some(_), Some(_)) => Err(CliError::Usage("--n and --d must be at least 1".into())),
            _ => Err(CliError::Usage("--n and --d are required".into())),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(taut_core::Error),
    #[error("{0}")]
    Degree(taut_core::Error),
    #[error("{0}")]
    Engine(taut_core::Error),
    /// Carries the report, which is still printed.
    #[error("verification failed")]
    VerifyFailed(String),
    #[error("cache: {0}")]
    Io(#[from] std::io::Error),
}

impl From<taut_core::Error> for CliError {
    fn from(e: taut_core::Error) -> CliError {
        use taut_core::Error as E;
        match e {
            E::ZeroDegree | E::ZeroDimension | E::Parse(_) | E::UnknownVar(_) | E::BadSide { .. } => {
                CliError::Usage(e.to_string())
            }
            E::Inhomogeneous { .. } | E::Validation { .. } => CliError::Validation(e),
            E::DegreeMismatch { .. } => CliError::Degree(e),
            other => CliError::Engine(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) | CliError::Engine(_) | CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Degree(_) => 4,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Present(c) => commands::present(c),
        Command::Hilbert(c) => commands::hilbert(c),
        Command::Verify(c) => commands::verify(c),
        Command::Integrate { common, monomials } => commands::integrate(common, &monomials.join(" ")),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::VerifyFailed(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("taut: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
