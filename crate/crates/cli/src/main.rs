//! `dp2`: exact checks of the degree-2 del Pezzo lattice computations and of
//! the reference-variety construction.
//!
//! Exit codes: 0 verified, 1 verification failed, 2 usage or parse error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dp2_core::dp2geom::SurfaceCase;
use dp2_core::galois_lattice::DEFAULT_CLOSURE_BOUND;

use report::{CliError, Format};

#[derive(Parser, Debug)]
#[command(
    name = "dp2",
    version,
    about = "Exact verification of dP2 lattices and Brauer residues"
)]
struct Cli {
    /// Output format; `json` prints one JSON record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CaseArg {
    Nonsquare,
    SquareD,
}

impl From<CaseArg> for SurfaceCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Nonsquare => SurfaceCase::NonSquare,
            CaseArg::SquareD => SurfaceCase::SquareD,
        }
    }
}

#[derive(Args, Debug)]
struct CaseOpt {
    /// Surface case: a non-square coefficient or one of the form d².
    #[arg(long, value_enum)]
    case: CaseArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 56 exceptional curves, their intersection matrix and the Gram matrix.
    Lines(CaseOpt),
    /// Galois action tables and matrices, diffed against the reference data.
    Galois(CaseOpt),
    /// Invariant sublattice, μ, κ and the orbit decomposition.
    Invariants {
        #[command(flatten)]
        case: CaseOpt,
        /// Abort the group closure beyond this many elements.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_BOUND)]
        closure_bound: usize,
    },
    /// Check an arrangement end to end (the bundled example if no config).
    Verify {
        /// TOML config with an `[arrangement]` table.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Use m = 2q − 8 (q ≥ 4), giving bidegree (2q, 4).
        #[arg(long)]
        family_q: Option<u32>,
        /// Read every polynomial over this prime instead of the config's.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Residue of the symbol (A, B) along one curve.
    Residue {
        #[arg(long = "A", value_name = "FORM")]
        a: String,
        #[arg(long = "B", value_name = "FORM")]
        b: String,
        /// Centre: a line, an absolutely irreducible conic, or `z`.
        #[arg(long, value_name = "FORM")]
        at: String,
        #[arg(long, default_value_t = 13)]
        prime: u64,
    },
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    match &cli.command {
        Command::Lines(c) => commands::lines(c.case.into()),
        Command::Galois(c) => commands::galois(c.case.into()),
        Command::Invariants {
            case,
            closure_bound,
        } => commands::invariants(case.case.into(), *closure_bound),
        Command::Verify {
            config,
            family_q,
            prime,
        } => commands::verify(config.as_deref(), *family_q, *prime),
        Command::Residue { a, b, at, prime } => commands::residue(a, b, at, *prime),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lines(_) => "lines",
        Command::Galois(_) => "galois",
        Command::Invariants { .. } => "invariants",
        Command::Verify { .. } => "verify",
        Command::Residue { .. } => "residue",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            r.print(cli.format);
            ExitCode::from(r.exit_code())
        }
        Err(e) => {
            e.print(command_name(&cli.command), cli.format);
            ExitCode::from(e.exit_code())
        }
    }
}
