//! `padic-qubit`: command-line access to the group, character table, Clebsch-Gordan,
//! gate and universality pipelines.

mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commands::{CmdError, Output};

#[derive(Debug, Parser)]
#[command(name = "padic-qubit", version, about = "Finite SO(3) mod p groups, p-adic qubits and gate universality")]
struct Cli {
    /// Output format; CSV is only available for tabular payloads.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    U2,
    U4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Gap,
    B38,
    B1,
    B40,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Report {
    Factorize,
    Cosets,
    Subgroups,
    Gatesets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetName {
    G1p3,
    Abu,
    B40,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, conjugacy classes and semidirect structure of G_p.
    Group {
        p: u64,
        #[arg(long)]
        classes: bool,
        #[arg(long)]
        structure: bool,
    },
    /// Character table of G_p.
    Chartable { p: u64 },
    /// Clebsch-Gordan decomposition of two qubit irreps and its entanglement.
    Cg { p: u64, j: u32, l: u32 },
    /// Factorization analysis of the 4-dim irreps of G_3.
    Gates {
        #[arg(long, value_enum, default_value_t = Rep::U2)]
        rep: Rep,
        #[arg(long, value_enum, default_value_t = Basis::Gap)]
        basis: Basis,
        #[arg(long, value_enum, default_value_t = Report::Factorize)]
        report: Report,
        /// Try all three splits of the eigenbasis into two qubits.
        #[arg(long)]
        all_pairings: bool,
    },
    /// Universality chain and closure verdicts of a gate set.
    Universality {
        #[arg(long, value_enum, default_value_t = SetName::G1p3)]
        set: SetName,
        #[arg(long, default_value_t = padic_qubit::universality::DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    params: serde_json::Value,
    payload: serde_json::Value,
    elapsed_ms: u64,
    version: &'static str,
}

fn run(cli: &Cli) -> Result<(String, Output), CmdError> {
    match &cli.command {
        Command::Group { p, classes, structure } => Ok(("group".into(), commands::group(*p, *classes, *structure)?)),
        Command::Chartable { p } => Ok(("chartable".into(), commands::chartable(*p)?)),
        Command::Cg { p, j, l } => Ok(("cg".into(), commands::cg(*p, *j, *l)?)),
        Command::Gates { rep, basis, report, all_pairings } => {
            Ok(("gates".into(), commands::gates(*rep, *basis, *report, *all_pairings)?))
        }
        Command::Universality { set, cap } => Ok(("universality".into(), commands::universality(*set, *cap)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match result {
        Ok((command, out)) => match cli.format {
            Format::Json => {
                let env = Envelope {
                    command: &command,
                    params: out.params,
                    payload: out.payload,
                    elapsed_ms,
                    version: env!("CARGO_PKG_VERSION"),
                };
                println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
                ExitCode::SUCCESS
            }
            Format::Csv => match out.csv {
                Some(csv) => {
                    print!("{csv}");
                    ExitCode::SUCCESS
                }
                None => {
                    eprintln!("error: `{command}` with these options has no tabular form; use --format json");
                    ExitCode::from(2)
                }
            },
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
