use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use neron_core::document::{analyze_document, parse_input};
use neron_core::fixtures::{format_table, table};
use neron_core::verify::verify_lemma;

const INPUT_ERROR: u8 = 2;
const COUNTEREXAMPLE: u8 = 1;

#[derive(Parser)]
#[command(name = "neron", version, about = "Finiteness of Néron models of torsion and root torsors from dual graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one reduction given as a JSON document.
    Analyze {
        file: PathBuf,
        /// Override the torsion order from the document.
        #[arg(long = "r")]
        r: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print m1, m2, m3 for the six built-in example graphs.
    Table {
        #[arg(long = "r", default_value_t = 4)]
        r: u64,
    },
    /// Exhaustively cross-check the circuit, homological and torsion criteria.
    VerifyLemma {
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long, default_value_t = 6)]
        max_q: u64,
    },
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn analyze(file: &PathBuf, r: Option<u64>, format: Format) -> ExitCode {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(INPUT_ERROR);
        }
    };
    let report = parse_input(&text).and_then(|doc| analyze_document(&doc, r));
    match report {
        Ok(rep) => {
            match format {
                Format::Table => emit(&rep.to_table()),
                Format::Machine => emit(&format!("{}\n", rep.to_json())),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { file, r, format } => analyze(&file, r, format),
        Command::Table { r } => match table(r) {
            Ok(rows) => {
                emit(&format_table(r, &rows));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(INPUT_ERROR)
            }
        },
        Command::VerifyLemma { max_edges, max_q } => match verify_lemma(max_edges, max_q) {
            Ok(summary) => {
                emit(&summary.to_string());
                if summary.is_clean() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(COUNTEREXAMPLE)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(INPUT_ERROR)
            }
        },
    }
}
