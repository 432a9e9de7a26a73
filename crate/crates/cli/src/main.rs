use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use measfield::json::{parse_ideal, parse_instance};
use measfield_cli::{census, commands, read_file, suites, Result};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "measfield", version, about = "Fields of sets, Stone spaces and rings of step functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One record per field of sets on {1..=n} for every n up to the bound.
    Census {
        #[arg(long)]
        max_n: u64,
        /// Output file; the extension picks JSON or CSV.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = census::DEFAULT_BOUND)]
        bound: u64,
    },
    /// Runs a verification suite on an instance.
    Check {
        instance: String,
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Separation verdict for a registered schema family.
    Witness {
        #[arg(long)]
        schema: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Spectrum, basis table and law report.
    Stone { instance: String },
    /// The quotient by the socle, and by an ideal when one is given.
    Quotient {
        instance: String,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit(value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Census { max_n, out, seed, bound } => {
            let records = census::census(max_n, bound, seed)?;
            census::write(&records, &out)?;
            Ok(records.iter().all(|r| r.checks_passed == r.checks_total))
        }
        Command::Check { instance, suite, seed } => {
            let suite = suites::resolve(&suite)?;
            let field = parse_instance(&read_file(&instance)?)?;
            let report = suites::run(&field, suite, seed)?;
            emit(&report)?;
            Ok(report.passed)
        }
        Command::Witness { schema, seed } => {
            let report = commands::witness(&schema, seed)?;
            emit(&report)?;
            Ok(report.sound)
        }
        Command::Stone { instance } => {
            let doc = commands::stone(&parse_instance(&read_file(&instance)?)?)?;
            emit(&doc)?;
            Ok(doc.report.passes())
        }
        Command::Quotient { instance, ideal, seed } => {
            let field = parse_instance(&read_file(&instance)?)?;
            let ideal = match ideal {
                Some(path) => Some(parse_ideal(&field, &read_file(&path)?)?),
                None => None,
            };
            let doc = commands::quotient(&field, ideal.as_ref(), seed)?;
            emit(&doc)?;
            Ok(doc.passes())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
