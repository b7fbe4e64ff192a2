use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quintic_rank::arith::{cyclotomic_splitting_oracle, is_prime};
use quintic_rank::quintic::splitting;
use quintic_rank::tables::{
    emit_table, enumerate_with, verify_fixtures, write_records, Filter, Format,
};
use quintic_rank::{classify, ClassificationRecord, FormClass};

#[derive(Parser)]
#[command(
    name = "quintic-rank",
    version,
    about = "Ambiguous 5-class rank of pure quintic normal closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single radicand and print the result as JSON.
    Classify { n: u64 },
    /// List classified radicands up to a bound.
    Enumerate {
        #[arg(long)]
        max: u64,
        #[arg(long)]
        rank: Option<u8>,
        /// Restrict to one form and emit it in table layout.
        #[arg(long)]
        form: Option<FormClass>,
        /// Keep every 5th-power-free n instead of one per field.
        #[arg(long)]
        raw: bool,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Check the embedded example tables and list discrepancies.
    VerifyPaperTables,
    /// Compare the congruence splitting rule against a brute-force factorization.
    OracleCheck {
        #[arg(long, default_value_t = 10_000)]
        max_prime: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let mut out = std::io::stdout().lock();
    match command {
        Command::Classify { n } => {
            let c = classify(n)?;
            c.check()?;
            let record = ClassificationRecord::from(&c);
            writeln!(out, "{}", serde_json::to_string_pretty(&record)?)?;
        }
        Command::Enumerate {
            max,
            rank,
            form,
            raw,
            format,
        } => match form {
            Some(form) if rank.is_none() && !raw => {
                write!(out, "{}", emit_table(form, max, format)?)?;
            }
            _ => {
                let filter = Filter { form, rank };
                let list: Vec<_> = enumerate_with(max, filter, raw)?.collect();
                write!(out, "{}", write_records(&list, format))?;
                if format == Format::Json {
                    writeln!(out)?;
                }
            }
        },
        Command::VerifyPaperTables => {
            let reports = verify_fixtures();
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            let rows: std::collections::BTreeSet<_> = reports
                .iter()
                .map(|r| (r.table_id.clone(), r.row_index))
                .collect();
            writeln!(out, "{} findings in {} rows", reports.len(), rows.len())?;
        }
        Command::OracleCheck { max_prime } => {
            let mut checked = 0u64;
            let mut mismatches = 0u64;
            for p in (2..max_prime).filter(|&p| p != 5 && is_prime(p)) {
                let oracle = cyclotomic_splitting_oracle(p)?;
                let rule = splitting(p)?;
                checked += 1;
                if oracle != rule {
                    mismatches += 1;
                    writeln!(out, "mismatch at p = {p}: rule {rule:?}, oracle {oracle:?}")?;
                }
            }
            writeln!(out, "{checked} primes checked, {mismatches} mismatches")?;
            if mismatches > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
