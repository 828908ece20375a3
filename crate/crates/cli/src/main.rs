//! `moddecomp`: modular curve invariants and decomposition tables.
//!
//! Exit codes: 0 success, 2 domain or usage error, 3 an unknown value is
//! present, 4 verification failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use moddecomp_core::{Base, CongruenceGroup, Error, GroupKind, PrimeClass, WeightOneTable};

use commands::{parse_weights, Report, Table};
use output::Format;

const S1_ENV: &str = "MODDECOMP_S1_PATH";

#[derive(Parser)]
#[command(name = "moddecomp", version, about = "Modular curve invariants and decompositions over M_ell")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Weight-one cusp form data file; overrides $MODDECOMP_S1_PATH.
    #[arg(long, global = true)]
    s1_file: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// gamma0, gamma1 or gamma.
    #[arg(long, default_value = "gamma1")]
    group: GroupKind,

    #[arg(long)]
    level: u64,
}

impl GroupArgs {
    fn group(&self) -> CongruenceGroup {
        CongruenceGroup::new(self.group, self.level)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of modular (or cusp) forms over a weight range.
    Dims {
        #[command(flatten)]
        group: GroupArgs,
        /// Inclusive range `a..b`, or a single weight.
        #[arg(long, value_parser = parse_weights, default_value = "0..12")]
        weights: std::ops::RangeInclusive<i64>,
        /// Report cusp forms instead of all modular forms.
        #[arg(long)]
        cusp: bool,
        /// Use this value for dim S_1 of the group.
        #[arg(long)]
        s1: Option<u64>,
    },
    /// Regenerate a decomposition table.
    Tables {
        #[arg(value_enum, ignore_case = true)]
        which: Table,
    },
    /// Levels where the cotangent degree equals the dualizing degree, with the ratio table.
    Duality {
        #[arg(long = "max", default_value_t = 144)]
        bound: u64,
    },
    /// Levels whose Tmf_1(n) is Anderson self-dual, with the shift.
    Anderson {
        #[arg(long = "max", default_value_t = 42)]
        max_level: u64,
    },
    /// Verify the characteristic-zero lift of the mod-2 Hasse invariant.
    Hasse {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 200)]
        precision: usize,
        /// Include the q-expansions of E and F.
        #[arg(long)]
        emit_q: bool,
    },
    /// Decompose the pushforward of the structure sheaf over a base.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "omega")]
        base: Base,
        /// Report the TMF splitting at a prime class: 2, 3 or large.
        #[arg(long)]
        tmf_prime: Option<PrimeClass>,
        #[arg(long)]
        s1: Option<u64>,
    },
}

fn load_table(path: Option<PathBuf>) -> Result<WeightOneTable> {
    let path = path.or_else(|| std::env::var_os(S1_ENV).map(PathBuf::from));
    match path {
        None => Ok(WeightOneTable::default()),
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(WeightOneTable::from_json(&text)?)
        }
    }
}

fn with_override(mut table: WeightOneTable, group: CongruenceGroup, s1: Option<u64>) -> WeightOneTable {
    if let Some(v) = s1 {
        table.insert(group, v, "command-line override");
    }
    table
}

fn run(cli: Cli) -> Result<Report> {
    let table = load_table(cli.s1_file)?;
    match cli.command {
        Command::Dims {
            group,
            weights,
            cusp,
            s1,
        } => {
            let g = group.group();
            commands::dims(g, weights, cusp, &with_override(table, g, s1))
        }
        Command::Tables { which } => commands::tables(which, &table),
        Command::Duality { bound } => commands::duality(bound),
        Command::Anderson { max_level } => commands::anderson(max_level, &table),
        Command::Hasse {
            p,
            precision,
            emit_q,
        } => commands::hasse(p, precision, emit_q),
        Command::Decompose {
            group,
            base,
            tmf_prime,
            s1,
        } => {
            let g = group.group();
            commands::decompose_cmd(g, base, tmf_prime, &with_override(table, g, s1))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::WeightOneUnknown { .. }) => 3,
        Some(Error::VerificationFailure { .. } | Error::IntegralityFailure { .. }) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.output.render(format));
            if report.unknown {
                eprintln!("moddecomp: some values depend on an unknown dim S_1");
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("moddecomp: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
