//! `nambu` — exact verification of Nambu structures from structure files.
//!
//! Exit codes: 0 when every check meets expectations (documented expected
//! failures included), 1 when any check fails unexpectedly, 2 for input
//! errors (unreadable files, parse errors, unknown catalog entries,
//! malformed flags).  No other codes are produced.

mod file;
mod report;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nambu_core::seeded::DEFAULT_SEED;

use crate::report::RunReport;
use crate::run::SearchCase;

#[derive(Parser)]
#[command(
    name = "nambu",
    version,
    about = "Exact checks for Nambu brackets, tensors, and Nambu-Lie structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the randomized exact suites (decimal or 0x-prefixed hex).
    /// Overrides a `seed:` entry in the input file.
    #[arg(long, global = true, value_parser = parse_seed_flag)]
    seed: Option<u64>,
    /// Emit line-delimited machine records instead of the human report.
    #[arg(long, global = true)]
    machine: bool,
    /// Instances per randomized suite (sample pairs for matrix inputs).
    #[arg(long, global = true, value_name = "N")]
    suite_size: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full battery of checks for the structure in a file.
    Verify { input: PathBuf },
    /// Run built-in catalog entries and compare against their documented
    /// expectations.
    Examples {
        /// Catalog entry identifier.
        name: Option<String>,
        /// Run every catalog entry.
        #[arg(long, conflicts_with = "name")]
        all: bool,
    },
    /// Search a Lie algebra for invariant tensors attached to an ideal.
    Search {
        input: PathBuf,
        /// `all` for the whole algebra, or comma-separated basis names.
        #[arg(long)]
        ideal: String,
        /// Ansatz shape: a volume on the ideal, a wedge factor, or a
        /// contraction.
        #[arg(long, value_enum)]
        case: CaseArg,
    },
    /// Fundamental-identity residuals for the tensor in a file.
    FiCheck { input: PathBuf },
    /// Classify the core of a linear tensor over its Lie algebra.
    Core { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    A,
    B,
    C,
}

fn parse_seed_flag(s: &str) -> Result<u64, String> {
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        u64::from_str_radix(hex, 16)
    } else {
        s.parse()
    };
    parsed.map_err(|_| format!("malformed seed `{s}`; use decimal or 0x-prefixed hex"))
}

struct LoadedFile {
    label: String,
    source: Vec<u8>,
    parsed: file::StructureFile,
}

fn load(path: &PathBuf) -> Result<LoadedFile, String> {
    let label = path.display().to_string();
    let source = std::fs::read(path).map_err(|e| format!("{label}: {e}"))?;
    let text =
        String::from_utf8(source.clone()).map_err(|_| format!("{label}: not valid UTF-8"))?;
    let parsed = file::parse_structure(&text).map_err(|e| format!("{label}: {e}"))?;
    Ok(LoadedFile { label, source, parsed })
}

fn emit(report: &RunReport, machine: bool) -> ExitCode {
    use std::io::Write;
    let text = if machine { report.render_machine() } else { report.render_human() };
    // A closed pipe (e.g. `nambu ... | head`) must not turn into a panic;
    // the exit code still reflects the verdict.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn input_error(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let machine = cli.machine;
    let flag_seed = cli.seed;
    let suite_size = cli.suite_size;

    match cli.command {
        Command::Verify { input } => {
            let loaded = match load(&input) {
                Ok(l) => l,
                Err(m) => return input_error(m),
            };
            let seed = flag_seed.or(loaded.parsed.seed).unwrap_or(DEFAULT_SEED);
            match run::verify_report(&loaded.parsed, loaded.label, &loaded.source, seed, suite_size)
            {
                Ok(report) => emit(&report, machine),
                Err(m) => input_error(m),
            }
        }
        Command::Examples { name, all } => {
            if name.is_none() && !all {
                return input_error(
                    "examples needs a catalog entry name or --all; known entries: ".to_string()
                        + &nambu_core::catalog::catalog_ids().join(", "),
                );
            }
            let seed = flag_seed.unwrap_or(DEFAULT_SEED);
            match run::examples_report(name.as_deref(), seed, suite_size) {
                Ok(report) => emit(&report, machine),
                Err(m) => input_error(m),
            }
        }
        Command::Search { input, ideal, case } => {
            let loaded = match load(&input) {
                Ok(l) => l,
                Err(m) => return input_error(m),
            };
            let seed = flag_seed.or(loaded.parsed.seed).unwrap_or(DEFAULT_SEED);
            let case = match case {
                CaseArg::A => SearchCase::A,
                CaseArg::B => SearchCase::B,
                CaseArg::C => SearchCase::C,
            };
            match run::search_report(&loaded.parsed, loaded.label, &loaded.source, &ideal, case, seed)
            {
                Ok(report) => emit(&report, machine),
                Err(m) => input_error(m),
            }
        }
        Command::FiCheck { input } => {
            let loaded = match load(&input) {
                Ok(l) => l,
                Err(m) => return input_error(m),
            };
            let seed = flag_seed.or(loaded.parsed.seed).unwrap_or(DEFAULT_SEED);
            match run::fi_report(&loaded.parsed, loaded.label, &loaded.source, seed, suite_size) {
                Ok(report) => emit(&report, machine),
                Err(m) => input_error(m),
            }
        }
        Command::Core { input } => {
            let loaded = match load(&input) {
                Ok(l) => l,
                Err(m) => return input_error(m),
            };
            let seed = flag_seed.or(loaded.parsed.seed).unwrap_or(DEFAULT_SEED);
            match run::core_report(&loaded.parsed, loaded.label, &loaded.source, seed) {
                Ok(report) => emit(&report, machine),
                Err(m) => input_error(m),
            }
        }
    }
}
