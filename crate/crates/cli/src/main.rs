use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qperiod::{cmd_analyze, cmd_period, cmd_qde, init_workers, parse_subset, verify, CliError, QdeOptions, Suite};

#[derive(Parser)]
#[command(name = "qperiod", version, about = "Quantum periods, quantum differential operators and ramification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Periods,
    Operators,
    Monodromy,
    Toric,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of the quantum period of `builtin:NAME` or a manifold file.
    Period {
        source: String,
        /// Truncation order: coefficients 0..=TERMS are produced.
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Print α_d = d!·c_d instead of c_d.
        #[arg(long)]
        regularized: bool,
        /// Also write the series file here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Reconstruct the minimal operator annihilating a regularized series.
    Qde {
        /// A series file, a manifold file or `builtin:NAME`.
        source: String,
        #[arg(long, default_value_t = QdeOptions::default().terms)]
        terms: usize,
        #[arg(long, default_value_t = QdeOptions::default().max_order)]
        max_order: usize,
        #[arg(long, default_value_t = QdeOptions::default().max_degree)]
        max_degree: usize,
        #[arg(long, default_value_t = QdeOptions::default().margin)]
        margin: usize,
        /// Write the operator file here instead of printing it.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Singular points, log-monodromy and ramification of an operator file or `builtin:NAME`.
    Analyze {
        source: String,
        /// Leave out points with trivial monodromy.
        #[arg(long)]
        table: bool,
    },
    /// Recompute golden records and compare exactly.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Comma-separated names or ranges such as FI4_1..FI4_6; empty selects nothing.
        #[arg(long)]
        subset: Option<String>,
        /// Toric weight file for the toric suite (default: $QPERIOD_TORIC_WEIGHTS).
        #[arg(long)]
        weights: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    init_workers()?;
    match cli.command {
        Command::Period { source, terms, regularized, output } => cmd_period(&source, terms, regularized, output.as_deref()),
        Command::Qde { source, terms, max_order, max_degree, margin, output } => {
            cmd_qde(&source, QdeOptions { terms, max_order, max_degree, margin }, output.as_deref())
        }
        Command::Analyze { source, table } => cmd_analyze(&source, table),
        Command::Verify { suite, subset, weights } => {
            let suites: Vec<Suite> = match suite {
                SuiteArg::Periods => vec![Suite::Periods],
                SuiteArg::Operators => vec![Suite::Operators],
                SuiteArg::Monodromy => vec![Suite::Monodromy],
                SuiteArg::Toric => vec![Suite::Toric],
                SuiteArg::All => Suite::ALL.to_vec(),
            };
            let subset = subset.as_deref().map(parse_subset).transpose()?;
            let weights = weights.or_else(|| std::env::var_os(qperiod::WEIGHTS_ENV).map(PathBuf::from));
            let report = verify(&suites, subset.as_deref(), weights.as_deref())?;
            let text = format!("{report}\n");
            if report.passed() {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Mismatch("verification failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
