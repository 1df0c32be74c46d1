//! `charsum`: exact character sums, bound audits, threshold solving and
//! consistency suites over small finite field towers.
//!
//! Every command prints one JSON document `{"manifest": ..., "data": ...}`
//! on stdout (CSV for `thresholds --format csv`). Exit codes: 0 success,
//! 1 verification failure, 2 usage or parse error, 3 precondition unmet.
//!
//! Input grammars:
//! - polynomials: comma-separated packed coefficients, low degree first
//!   (`"0,1"` is `X`, `"1,0,1"` is `X² + 1`);
//! - families: `;`-separated coordinate sets, each a comma list of base
//!   digits, `*` for all of `F_q`, `!c` for `F_q ∖ {c}`.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use charsum::TowerParams;

#[derive(Parser, Debug)]
#[command(name = "charsum", version, about = "Exact multiplicative character sums over structured subsets of F_{q^r}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// `q = p^k`.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Even extension degree of `F_{q^r}` over `F_q`.
    #[arg(long)]
    pub r: u32,
}

impl FieldArgs {
    pub fn params(&self) -> charsum::Result<TowerParams> {
        TowerParams::new(self.p, self.k, self.r)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the tower and print its context manifest.
    FieldInfo(FieldArgs),
    /// Exact character sum over a family or sparse set, with its bound audit.
    Charsum(CharsumArgs),
    /// Smallest even r satisfying the primitive-element criterion.
    Thresholds(ThresholdArgs),
    /// The sparse-set exponent at one weight ratio, or the full curve.
    Eta(EtaArgs),
    /// Run a consistency suite.
    Verify(VerifyArgs),
    /// Primitive elements in a family: direct, Vinogradov and lower bound.
    Primitive(PrimitiveArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("domain").required(true).args(["set", "sparse"])))]
pub struct CharsumArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Family spec, e.g. `"!0;!0;!0;!0"`.
    #[arg(long)]
    pub set: Option<String>,
    /// Sparse weight `s`.
    #[arg(long)]
    pub sparse: Option<u32>,
    /// Character index `j`.
    #[arg(long)]
    pub chi: u64,
    /// Polynomial coefficients.
    #[arg(long, default_value = "0,1")]
    pub f: String,
    /// Use the single-threaded streaming path.
    #[arg(long)]
    pub streaming: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Comma-separated base-field sizes, each at least 3.
    #[arg(long, value_delimiter = ',', required = true)]
    pub q: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["rho", "curve"])))]
pub struct EtaArgs {
    /// Weight ratio in `(0, 1)`; reflected to `min{ρ, 1−ρ}`.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    /// Minimise over the lattice `λ ∈ step·ℕ` instead of the fine grid.
    #[arg(long, requires = "rho")]
    pub lattice: Option<f64>,
    /// Emit the full curve as CSV.
    #[arg(long, requires_all = ["step", "out"])]
    pub curve: bool,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: String,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["family", "avoid"])))]
pub struct PrimitiveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub family: Option<String>,
    /// Avoided digits `c_1,...,c_r`.
    #[arg(long)]
    pub avoid: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_line: Vec<String> = std::env::args().collect();
    if let Err(e) = charsum::parallel::threads_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::FieldInfo(a) => commands::field_info(&command_line, a),
        Command::Charsum(a) => commands::charsum(&command_line, a),
        Command::Thresholds(a) => commands::thresholds(&command_line, a),
        Command::Eta(a) => commands::eta(&command_line, a),
        Command::Verify(a) => commands::verify(&command_line, a),
        Command::Primitive(a) => commands::primitive(&command_line, a),
    };
    match outcome {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(fail) => {
            eprintln!("error: {}", fail.message);
            ExitCode::from(fail.code)
        }
    }
}
