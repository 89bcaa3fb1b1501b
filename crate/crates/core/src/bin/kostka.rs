use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kostka::cache::{e_tilde_cached, kl_cached, kostka_cached, marked_table_cached, Cache};
use kostka::format::{KostkaDoc, ModuleDoc, Object, PolyDoc};
use kostka::kl::default_rank;
use kostka::macdonald::e_monomial;
use kostka::scan::{scan, ScanOptions};
use kostka::{selftest, Composition, Error};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "kostka", version, about = "Macdonald polynomials, parabolic KL bases and composition Kostka functions")]
struct Cli {
    /// Persistent cache directory.
    #[arg(long, global = true, env = "KOSTKA_CACHE")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Standard,
    Monomial,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Macdonald polynomial E~_mu.
    ComputeE {
        #[arg(long, allow_hyphen_values = true)]
        mu: Composition,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value = "standard")]
        basis: Basis,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Print the Kazhdan-Lusztig element of the parabolic module.
    ComputeKl {
        #[arg(long)]
        lambda: Composition,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Print the composition Kostka function K_{lambda,mu}(q,t).
    Kostka {
        #[arg(long)]
        lambda: Composition,
        #[arg(long)]
        mu: Composition,
        /// Also list the marked refinement, one line per marking.
        #[arg(long)]
        marked: bool,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Check the positivity conjectures on every pair up to a weight.
    Scan {
        #[arg(long)]
        max_weight: u32,
        /// Longest composition considered (default: weight + 1).
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Skip the marked refinement.
        #[arg(long)]
        no_marked: bool,
        /// Where to write the JSON report.
        #[arg(long)]
        report: PathBuf,
        /// Also write the table of K values as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the built-in invariant suites.
    Selftest {
        /// Add a weight-5 scan over compositions of length at most 4.
        #[arg(long)]
        deep: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(
                e,
                Error::InvalidInput(_) | Error::Parse(_) | Error::RankTooSmall { .. } | Error::IndexOutOfRange { .. }
            );
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_INTERNAL })
        }
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> kostka::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> kostka::Result<u8> {
    let cache = cli.cache.as_ref().map(Cache::open).transpose()?;
    let cache = cache.as_ref();
    match cli.command {
        Command::ComputeE { mu, rank, basis, format } => {
            let n = rank.unwrap_or((mu.length() + mu.weight() as usize + 1).max(2));
            match basis {
                Basis::Standard => {
                    let x = e_tilde_cached(cache, &mu, n)?;
                    match format {
                        Format::Pretty => println!("{}", x.pretty()),
                        Format::Json => print_json(&ModuleDoc::new(Object::ETilde, &mu, &x))?,
                    }
                }
                Basis::Monomial => {
                    let f = e_monomial(&mu, n)?;
                    match format {
                        Format::Pretty => println!("{}", f.pretty()),
                        Format::Json => print_json(&PolyDoc::new(Object::ETilde, &mu, &f))?,
                    }
                }
            }
        }
        Command::ComputeKl { lambda, rank, format } => {
            let n = rank.unwrap_or_else(|| default_rank(&lambda, 0));
            let x = kl_cached(cache, &lambda, n)?;
            match format {
                Format::Pretty => println!("{}", x.pretty()),
                Format::Json => print_json(&ModuleDoc::new(Object::Kl, &lambda, &x))?,
            }
        }
        Command::Kostka { lambda, mu, marked, format } => {
            let result = kostka_cached(cache, &lambda, &mu)?;
            let table = if marked { Some(marked_table_cached(cache, &lambda, &mu)?) } else { None };
            match format {
                Format::Pretty => {
                    println!("{}", result.value);
                    for t in table.iter().flatten().filter(|t| !t.value.is_zero()) {
                        println!("{}\tA={}\tL={}\t{}", t.diagram, t.a, t.l, t.value);
                    }
                }
                Format::Json => print_json(&KostkaDoc::new(result, table.as_deref()))?,
            }
        }
        Command::Scan { max_weight, max_len, jobs, no_marked, report, csv } => {
            let opts = ScanOptions { max_weight, max_len, marked: !no_marked, jobs, cache: cache.cloned() };
            let r = scan(&opts)?;
            fs::write(&report, serde_json::to_vec_pretty(&r)?)?;
            if let Some(path) = csv {
                r.write_csv(fs::File::create(path)?)?;
            }
            println!("{} pairs, {} violations", r.pairs, r.violations.len());
            if !r.is_clean() {
                return Ok(EXIT_VIOLATION);
            }
        }
        Command::Selftest { deep } => {
            let outcomes = selftest::run(deep);
            let mut code = 0;
            for o in &outcomes {
                let verdict = if o.passed { "PASS" } else { "FAIL" };
                println!("{verdict}  {}  ({}, {:.2}s)", o.name, o.detail, o.seconds);
                if !o.passed {
                    code = code.max(if o.conjecture { EXIT_VIOLATION } else { EXIT_INTERNAL });
                }
            }
            return Ok(code);
        }
    }
    Ok(0)
}
