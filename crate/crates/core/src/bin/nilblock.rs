use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nilblock::cli::analyze::{catalog_targets, run_batch, AnalyzeOptions, Target};
use nilblock::cli::catalog::{lookup, CATALOG};
use nilblock::cli::suite::run_suite;
use nilblock::exactnum::arith::prime_divisors;
use nilblock::permgroup::{GroupFile, DEFAULT_SUBGROUP_CAP};
use nilblock::Result;

#[derive(Parser)]
#[command(
    name = "nilblock",
    version,
    about = "Nilpotent-block criteria for p-blocks of finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a catalog group, a TOML group file, or `all` catalog entries.
    Analyze {
        target: String,
        /// Prime to analyze; repeatable. Defaults to the catalog primes, or
        /// every prime divisor of the order for group files.
        #[arg(long = "prime", short)]
        primes: Vec<u64>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Largest number of defect-group subgroups to enumerate.
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
        fusion_cap: usize,
        /// Fail on the first target that cannot be analyzed.
        #[arg(long)]
        strict: bool,
        /// Include stage timings (makes reports run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Reproduce the order-34992 example and run the invariant suite.
    VerifyPaper {
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
        fusion_cap: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List catalog entries with orders and default primes.
    List,
}

fn targets_for(target: &str, primes: &[u64]) -> Result<Vec<Target>> {
    if target == "all" {
        let all = catalog_targets()?;
        return Ok(if primes.is_empty() {
            all
        } else {
            all.into_iter()
                .filter(|t| primes.contains(&t.prime))
                .collect()
        });
    }
    let path = Path::new(target);
    let (name, group, defaults) = if path.extension().is_some_and(|e| e == "toml") || path.is_file()
    {
        let file = GroupFile::read(path)?;
        let g = file.build()?;
        let defaults = prime_divisors(g.order());
        (file.name, g, defaults)
    } else {
        let entry = lookup(target)?;
        (
            entry.name.to_string(),
            entry.build()?,
            entry.default_primes.to_vec(),
        )
    };
    let primes = if primes.is_empty() {
        defaults
    } else {
        primes.to_vec()
    };
    Ok(primes
        .into_iter()
        .map(|p| Target::new(&name, group.clone(), p))
        .collect())
}

fn emit(text: &str, report: Option<&Path>) -> Result<()> {
    match report {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze {
            target,
            primes,
            report,
            format,
            fusion_cap,
            strict,
            timing,
        } => {
            let targets = targets_for(&target, &primes)?;
            let options = AnalyzeOptions {
                fusion_cap,
                strict,
                timing,
            };
            let batch = run_batch(&targets, &options)?;
            let text = match format {
                Format::Json => batch.to_json(),
                Format::Tsv => batch.to_tsv(),
            };
            emit(&text, report.as_deref())?;
            if !batch.all_consistent() {
                eprintln!("error: inconsistent verdict");
                return Ok(ExitCode::FAILURE);
            }
            if batch.error_count() > 0 {
                eprintln!(
                    "warning: {} target(s) could not be analyzed",
                    batch.error_count()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog {
            command: CatalogCommand::List,
        } => {
            let mut text = String::from("name\torder\tprimes\tdescription\n");
            for e in CATALOG {
                let primes: Vec<String> = e.default_primes.iter().map(u64::to_string).collect();
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    e.name,
                    e.order,
                    primes.join(","),
                    e.description
                ));
            }
            emit(&text, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper { report, fusion_cap } => {
            let options = AnalyzeOptions {
                fusion_cap,
                ..Default::default()
            };
            let suite = run_suite(&options)?;
            let r = &suite.remark14;
            println!(
                "order {}, {} block(s), sum {} = {}, |P:P'| = {}, divides: {}, nilpotent: {}",
                r.order,
                r.block_count,
                r.pprime_degree_square_sum,
                r.factorization,
                r.sylow_abelianization_index,
                r.abelianization_index_divides_sum,
                r.nilpotent
            );
            for c in &suite.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!(
                    "{status} {:>2} {} ({} instances)",
                    c.id, c.name, c.instances
                );
                for f in &c.failures {
                    println!("     {f}");
                }
            }
            if let Some(path) = report {
                let mut s = serde_json::to_string_pretty(&suite).expect("suite serializes");
                s.push('\n');
                std::fs::write(path, s)?;
            }
            Ok(if suite.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
