//! Command-line front end: `table`, `verify` and `expand`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 a
//! mathematical precondition does not hold (first-kind numbers for a
//! zero-mean variable).

pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::euler::{EulerBasis, ExpansionFormula, Poly};
use crate::rational::{parse_rational, Rational};
use crate::rv::RvSpec;

pub use table::{TableDocument, TableEntry, TableKind};
pub use verify::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

/// Largest order accepted without `--unsafe-order`.
pub const MAX_ORDER: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "prob-stirling", version, about = "Probabilistic Stirling numbers in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a triangle or sequence as JSON or CSV.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Expand a polynomial in the probabilistic Euler basis.
    Expand(ExpandArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    /// Largest n.
    #[arg(long, env = "PROB_STIRLING_ORDER", default_value_t = crate::series::DEFAULT_ORDER)]
    pub order: usize,
    /// Allow orders above the cap of 24.
    #[arg(long)]
    pub unsafe_order: bool,
}

impl OrderArgs {
    fn checked(&self) -> Result<usize, Error> {
        if self.order > MAX_ORDER && !self.unsafe_order {
            return Err(Error::InvalidParameter(format!(
                "order {} exceeds {MAX_ORDER}; pass --unsafe-order to allow it",
                self.order
            )));
        }
        Ok(self.order)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Random variable, e.g. `binomial:m=3,p=1/3`.
    #[arg(long, value_parser = parse_rv)]
    pub rv: RvSpec,
    /// S2Y, S1Y, S2YL, S1YL, CUMULANTS, EULER or ADELL_BENYI.
    #[arg(long, value_parser = parse_kind)]
    pub kind: TableKind,
    #[command(flatten)]
    pub order: OrderArgs,
    /// λ for the degenerate kinds (and degenerate Euler polynomials).
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add a decimal approximation next to each exact value.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// orthogonality, closed-forms, vanishing, euler-roundtrip, oracle or all.
    #[arg(value_parser = parse_suite)]
    pub suite: Suite,
    /// Check only this random variable instead of the built-in grid.
    #[arg(long, value_parser = parse_rv)]
    pub rv: Option<RvSpec>,
    /// Check only this λ instead of {0, 1/2}; 0 means the non-degenerate case.
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
    #[command(flatten)]
    pub order: OrderArgs,
    /// Seed for the random polynomials of euler-roundtrip.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, value_parser = parse_rv)]
    pub rv: RvSpec,
    /// Coefficients lowest degree first, e.g. `0,0,1` for x².
    #[arg(long, value_parser = parse_poly, allow_hyphen_values = true)]
    pub poly: Poly,
    /// Expand in the degenerate basis at this λ.
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<Rational>,
}

fn parse_rv(s: &str) -> Result<RvSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<TableKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_poly(s: &str) -> Result<Poly, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(err: &Error) -> i32 {
    if err.is_precondition() {
        EXIT_PRECONDITION
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (program name first) and runs the command, writing to
/// `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Table(args) => table::run(args, out),
        Command::Verify(args) => verify::run(args, out),
        Command::Expand(args) => run_expand(args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn run_expand(args: &ExpandArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let degree = args.poly.degree().unwrap_or(0);
    let basis = EulerBasis::new(&args.rv, args.lambda.as_ref(), degree)?;
    let coeffs = basis.expand(&args.poly, ExpansionFormula::ForwardDifference)?;
    let text: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
    let exact = basis.reconstruct(&coeffs)? == args.poly;
    let _ = writeln!(out, "{}", if text.is_empty() { "0".to_string() } else { text.join(", ") });
    let _ = writeln!(out, "reconstruction: {}", if exact { "exact" } else { "mismatch" });
    Ok(if exact { EXIT_OK } else { EXIT_FAILURE })
}
