//! Command-line front end for `heightkit`. [`run`] takes the argument
//! vector and returns the exit code and rendered output, so the binary and
//! the tests share one code path.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use heightkit::Error;

mod commands;
pub mod record;
pub mod scan;

pub use record::{OutputRecord, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_RESULT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "heightkit", version, about = "Heights of algebraic numbers")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Width bound for every enclosure, as a rational or decimal [default: 1e-12].
    #[arg(long, global = true)]
    pub tol: Option<String>,
    /// Emit one JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Longest factorization searched.
    #[arg(long, global = true)]
    pub max_length: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mahler measure of an integer polynomial.
    Mahler { poly: String },
    /// Weil height M(f)^(1/deg f).
    Height { poly: String },
    /// Certified root disks.
    Roots { poly: String },
    /// Whether every root is a root of unity.
    Cyclo { poly: String },
    /// p-adic unit test, or the primes where the root is not a unit.
    Padic {
        poly: String,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Lower bound exp(c (log log d / log d)^3).
    Dobrowolski {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        constant: Option<String>,
    },
    /// M∞, Weil height and degree of the surd x^(1/d).
    Surd {
        rational: String,
        #[arg(long, default_value_t = 1)]
        root: u64,
    },
    /// Evaluates a product of surd powers to canonical form.
    SurdOp { expr: String },
    /// Least Weil height above 1 among (u + v√D)/w with |u|, |v|, w <= B.
    FieldMin {
        #[arg(long)]
        disc: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Upper bound for M∞ by factorization search over a pool file.
    MinfSearch { pool: PathBuf },
    /// Upper bound for M₁ by factorization search over a pool file.
    M1Search { pool: PathBuf },
    /// ρ, ρ₁ and ρ∞ tables of a group file, with every structural check.
    Framework { group: PathBuf },
    /// Smallest measure above 1 + epsilon over a box of polynomials.
    LehmerScan {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        coef_bound: i64,
        #[arg(long, default_value = "1e-6")]
        epsilon: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Mahler { .. } => "mahler",
            Command::Height { .. } => "height",
            Command::Roots { .. } => "roots",
            Command::Cyclo { .. } => "cyclo",
            Command::Padic { .. } => "padic",
            Command::Dobrowolski { .. } => "dobrowolski",
            Command::Surd { .. } => "surd",
            Command::SurdOp { .. } => "surd-op",
            Command::FieldMin { .. } => "field-min",
            Command::MinfSearch { .. } => "minf-search",
            Command::M1Search { .. } => "m1-search",
            Command::Framework { .. } => "framework",
            Command::LehmerScan { .. } => "lehmer-scan",
        }
    }
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum Failure {
    Lib(Error),
    Io(String),
    /// Computation finished but a checked property did not hold.
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(e) if e.is_input_error() => EXIT_INPUT,
            Failure::Lib(Error::PrecisionExceeded { .. }) => EXIT_PRECISION,
            Failure::Lib(Error::InvariantViolation(_)) => EXIT_INVARIANT,
            Failure::Lib(_) => EXIT_NO_RESULT,
            Failure::Io(_) => EXIT_INPUT,
            Failure::Invariant(_) => EXIT_INVARIANT,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_INPUT => "input",
            EXIT_PRECISION => "precision",
            EXIT_INVARIANT => "invariant",
            _ => "no-result",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) | Failure::Invariant(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Present whenever a subcommand ran, also on failure.
    pub record: Option<OutputRecord>,
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr, record: None };
        }
    };
    let started = Instant::now();
    let mut record = OutputRecord::new(cli.command.name(), &argv[1..]);
    let result = commands::execute(&cli.command, &cli.global, &mut record);
    record.diagnostics.wall_time_ms = format!("{:.3}", started.elapsed().as_secs_f64() * 1000.0);
    let (code, stderr) = match result {
        Ok(()) => (EXIT_OK, String::new()),
        Err(f) => {
            let code = f.exit_code();
            record.error = Some(record::ErrorInfo { kind: f.kind().to_string(), message: f.message() });
            (code, format!("error: {}\n", f.message()))
        }
    };
    let stdout = if cli.global.json {
        record.to_json() + "\n"
    } else if record.error.is_some() {
        String::new()
    } else {
        record.to_human()
    };
    Outcome { code, stdout, stderr, record: Some(record) }
}
