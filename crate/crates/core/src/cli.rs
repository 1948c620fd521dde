//! Command-line front end. Exit codes: 0 success, 1 failed check, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::enumeration::{enumerate_strong, EnumerationConfig, Pruning};
use crate::predicates::{analyze, AnalysisReport};
use crate::verification::{check_implications, verify_facts, FixtureSource};
use crate::{parse_sbox, SboxError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sbox",
    version,
    about = "S-box security measures and strong S-box search"
)]
pub struct Cli {
    /// Worker threads for enumerate and check-implications (default: all logical CPUs)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every measure of one S-box
    Analyze {
        /// Decimal CSV table, or 16 hex digits for a 4-bit S-box
        sbox: String,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively count strong and very strong normalized 4-bit S-boxes
    Enumerate {
        #[arg(long, default_value_t = 1)]
        shards: u32,
        #[arg(long, default_value_t = 0)]
        shard_id: u32,
        /// Write the strong tables (decimal CSV, one per line) to this file
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write only the very strong tables to this file
        #[arg(long)]
        emit_very_strong: Option<PathBuf>,
        /// Fix f(1), f(2), ... to these values (comma separated)
        #[arg(long, value_delimiter = ',')]
        prefix: Vec<u8>,
        /// Disable DDT/Diff1 pruning and test every complete table
        #[arg(long)]
        no_prune: bool,
    },
    /// Check the fixed-table facts against the fixture files
    VerifyFacts {
        /// Directory holding counterexamples.txt and serpent.txt (default: built-in copies)
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check the implications over seeded random permutations
    CheckImplications {
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        dims: Vec<u32>,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    if cli.threads == Some(0) {
        let _ = writeln!(err, "error: --threads must be at least 1");
        return EXIT_USAGE;
    }
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn usage(err: &mut dyn Write, e: SboxError) -> std::io::Result<i32> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_USAGE)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    match cli.command {
        Command::Analyze { sbox, json } => {
            let f = match parse_sbox(&sbox) {
                Ok(f) => f,
                Err(e) => return usage(err, e),
            };
            let report = analyze(&f);
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", render_report(&report))?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            shards,
            shard_id,
            emit,
            emit_very_strong,
            prefix,
            no_prune,
        } => {
            let config = EnumerationConfig {
                emit_tables: emit.is_some() || emit_very_strong.is_some(),
                shards,
                shard_id,
                pruning: if no_prune {
                    Pruning::Off
                } else {
                    Pruning::Full
                },
                prefix,
                threads: cli.threads,
            };
            let result = match enumerate_strong(&config) {
                Ok(r) => r,
                Err(e) => return usage(err, e),
            };
            if let Some(path) = emit {
                std::fs::write(path, result.tables_csv(false))?;
            }
            if let Some(path) = emit_very_strong {
                std::fs::write(path, result.tables_csv(true))?;
            }
            writeln!(out, "{}", result.summary_json())?;
            Ok(EXIT_OK)
        }
        Command::VerifyFacts { fixtures, json } => {
            let source = fixtures.map_or(FixtureSource::Embedded, FixtureSource::Directory);
            let report = verify_facts(&source);
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.render_text())?;
            }
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::CheckImplications {
            samples,
            seed,
            dims,
            json,
        } => {
            let report = match check_implications(samples, seed, &dims, cli.threads) {
                Ok(r) => r,
                Err(e) => return usage(err, e),
            };
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.render_text())?;
            }
            Ok(if report.violation_count() == 0 {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

pub fn render_report(r: &AnalysisReport) -> String {
    let spectrum: Vec<String> = r
        .degree_spectrum
        .iter()
        .map(|(d, n)| format!("n{d}={n}"))
        .collect();
    let rows = [
        ("S-box", r.sbox.clone()),
        ("dimension", r.m.to_string()),
        ("bijective", flag(Some(r.bijective)).into()),
        ("normalized", flag(Some(r.normalized)).into()),
        ("differential uniformity", r.delta_star.to_string()),
        ("weakly APN", flag(Some(r.weakly_apn)).into()),
        ("min derivative image", r.weak_delta_profile.to_string()),
        ("Lin", r.lin.to_string()),
        ("Lin1", r.lin1.to_string()),
        ("Diff1", r.diff1.to_string()),
        ("algebraic degree", r.degree.to_string()),
        ("degree spectrum", spectrum.join(" ")),
        ("n_hat", r.n_hat.to_string()),
        ("strongly 1-anti-invariant", flag(r.anti_invariant_1).into()),
        ("strongly 2-anti-invariant", flag(r.anti_invariant_2).into()),
        ("optimal", flag(r.optimal).into()),
        ("strong", flag(r.strong).into()),
        ("very strong", flag(r.very_strong).into()),
    ];
    rows.iter().map(|(k, v)| format!("{k:<27} {v}\n")).collect()
}
