mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Twisted GRS codes over GF(q²), Hermitian hulls and EAQECC parameters.
#[derive(Parser, Debug)]
#[command(name = "hullforge", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a code from one of the evaluation-set families and write its document.
    Construct(ConstructArgs),
    /// Report N, L(N), |L(q²−1)|, the closed form and the exact hull dimension.
    Hull(HullArgs),
    /// Derive EAQECC parameters from a code document.
    Eaqecc(EaqeccArgs),
    /// Reproduce one of the parameter tables.
    Table(TableArgs),
    /// Check a bundled fixture matrix.
    Verify(VerifyArgs),
    /// Check the hull inequality chain over every construction for the given fields.
    Sweep(SweepArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyArg {
    Subgroup,
    Affine,
    Cosets,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormatArg {
    Markdown,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Length for the subgroup family.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of subfield rows for the affine family (n = n0·q).
    #[arg(long)]
    pub n0: Option<usize>,
    /// Subgroup order for the cosets family.
    #[arg(long)]
    pub s: Option<usize>,
    /// Number of extra cosets for the cosets family.
    #[arg(long)]
    pub t: Option<usize>,
    /// Degree of the divisor G; the code has dimension degG + 1.
    #[arg(long = "degG", alias = "deg-g")]
    pub deg_g: usize,
    /// Output path; the document goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DocFormat::Json)]
    pub format: DocFormat,
}

#[derive(Args, Debug)]
pub struct HullArgs {
    /// Code document (JSON or text); `-` reads stdin.
    pub input: PathBuf,
    /// Also check every k×k minor (bounded by HULLFORGE_BUDGET).
    #[arg(long)]
    pub mds: bool,
    #[arg(long, value_enum, default_value_t = DocFormat::Text)]
    pub format: DocFormat,
}

#[derive(Args, Debug)]
pub struct EaqeccArgs {
    pub input: PathBuf,
    /// Use the Hermitian dual (the Q₂ code) instead of the code itself.
    #[arg(long)]
    pub dual: bool,
    /// First reduce the hull dimension to this value.
    #[arg(long = "reduce-to")]
    pub reduce_to: Option<usize>,
    /// Also list the codes obtained by propagation.
    #[arg(long)]
    pub propagate: bool,
    #[arg(long, value_enum, default_value_t = DocFormat::Text)]
    pub format: DocFormat,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// 0, 1 or 2.
    #[arg(value_parser = clap::value_parser!(u8).range(0..=2))]
    pub which: u8,
    #[arg(long, value_enum, default_value_t = TableFormatArg::Markdown)]
    pub format: TableFormatArg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// a1, a2 or all.
    #[arg(default_value = "all")]
    pub fixture: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Also write the fixture as a code document (single fixture only).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Fields to sweep; defaults to every q ≤ 9.
    #[arg(long, value_delimiter = ',')]
    pub q: Vec<u32>,
    /// Also check MDS by minors where n ≤ 12.
    #[arg(long)]
    pub mds: bool,
}

/// Exit quietly when stdout is closed early (e.g. piped into `head`).
fn quiet_broken_pipe() {
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        let msg = info
            .payload()
            .downcast_ref::<String>()
            .map(String::as_str)
            .or_else(|| info.payload().downcast_ref::<&str>().copied())
            .unwrap_or("");
        if msg.contains("Broken pipe") {
            std::process::exit(0);
        }
        default(info);
    }));
}

fn main() -> ExitCode {
    quiet_broken_pipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
