//! Single binary exposing the toolkit: symbol and factorization queries,
//! reduced form tables, representation counts, Dirichlet composition,
//! partition counters, residue censuses, the prime classifier, the parity
//! census, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use schurparity::arith::{divisors, factorize, kronecker};
use schurparity::census::{self, density_report, odd_census, write_census_csv, CensusMethod};
use schurparity::classify::{classification_breakdown, classify_prime, mu_signs, theorem1_predict};
use schurparity::euler;
use schurparity::qform::{
    dirichlet_compose, rep_count, rep_solutions, reduced_forms, ComposeKind, QuadForm, RepSolution,
};
use schurparity::schur::{schur_a1, schur_a2, schur_a_table};
use schurparity::verify::{run_all, run_suite, SuiteOptions, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "schurparity", version, about = "Parity of Schur's partition function: forms, classes, censuses, verification")]
struct Cli {
    /// Cap on worker threads for the parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchurVariant {
    A,
    A1,
    A2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Sieve,
    Direct,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker symbol (a/n).
    #[command(allow_negative_numbers = true)]
    Symbol { a: i64, n: i64 },

    /// Prime factorization of a positive integer.
    Factor {
        n: u64,
        /// Also list all divisors.
        #[arg(long)]
        divisors: bool,
    },

    /// Reduced primitive positive definite forms of a discriminant.
    Forms {
        /// Negative discriminant, 0 or 1 mod 4.
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },

    /// Representation count R(n, f) for a form given as a,b,c.
    Repcount {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        form: QuadForm,
        /// List the solutions instead of only counting them.
        #[arg(long)]
        list: bool,
    },

    /// Dirichlet composition of two solutions under ff, fg or gg.
    Compose {
        #[arg(long)]
        kind: ComposeKind,
        #[arg(long, allow_hyphen_values = true)]
        s0: RepSolution,
        #[arg(long, allow_hyphen_values = true)]
        s1: RepSolution,
    },

    /// Schur partition counts: one value or a CSV table.
    Schur {
        #[arg(long, conflicts_with = "table")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value = "a")]
        variant: SchurVariant,
        /// Print n,a,a1,a2 rows for 0..=N.
        #[arg(long)]
        table: Option<u32>,
    },

    /// Residue census of p(n) under both indexing conventions.
    EulerCensus {
        #[arg(long)]
        limit: usize,
        #[arg(long = "mod")]
        modulus: u32,
    },

    /// Classify a prime, or predict the representation parity of m.
    Classify {
        #[arg(long, conflicts_with = "m")]
        prime: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },

    /// Parity census of A(2n+1) for n <= limit, as checkpoint CSV.
    Census {
        #[arg(long)]
        limit: u64,
        #[arg(long, value_enum, default_value = "sieve")]
        method: MethodArg,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Full density report: adds the empirical class frequencies.
        #[arg(long)]
        freqs: bool,
    },

    /// Run verification suites and emit a JSON report.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn out_writer(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Symbol { a, n } => {
            println!("{}", kronecker(a, n));
        }
        Command::Factor { n, divisors: list } => {
            let f = factorize(n)?;
            let parts: Vec<String> = f
                .factors()
                .iter()
                .map(|&(p, e)| {
                    if e == 1 {
                        p.to_string()
                    } else {
                        format!("{p}^{e}")
                    }
                })
                .collect();
            if parts.is_empty() {
                println!("{n} = 1");
            } else {
                println!("{n} = {}", parts.join(" * "));
            }
            if list {
                let ds: Vec<String> = divisors(&f).iter().map(u64::to_string).collect();
                println!("divisors: {}", ds.join(" "));
            }
        }
        Command::Forms { disc } => {
            for form in reduced_forms(disc)? {
                println!("{form}");
            }
        }
        Command::Repcount { n, form, list } => {
            if !form.is_positive_definite() {
                anyhow::bail!("form {form} is not positive definite");
            }
            if list {
                for s in rep_solutions(n, &form) {
                    println!("{s}");
                }
            } else {
                println!("{}", rep_count(n, &form));
            }
        }
        Command::Compose { kind, s0, s1 } => {
            let (out_kind, outs) = dirichlet_compose(kind, s0, s1);
            println!("{out_kind} {} {}", outs[0], outs[1]);
        }
        Command::Schur { n, variant, table } => match (n, table) {
            (Some(n), None) => {
                let value = match variant {
                    SchurVariant::A => schur_a_table(n)?[n as usize],
                    SchurVariant::A1 => schur_a1(n)?,
                    SchurVariant::A2 => schur_a2(n)?,
                };
                println!("{value}");
            }
            (None, Some(limit)) => {
                let a = schur_a_table(limit)?;
                let mut a1 = schurparity::schur::A1Counter::new();
                let mut a2 = schurparity::schur::A2Counter::new();
                println!("n,a,a1,a2");
                for n in 0..=limit {
                    println!(
                        "{n},{},{},{}",
                        a[n as usize],
                        a1.count(n)?,
                        a2.count(n)?
                    );
                }
            }
            _ => anyhow::bail!("pass exactly one of --n or --table"),
        },
        Command::EulerCensus { limit, modulus } => {
            let c = euler::census(limit, modulus)?;
            println!("convention,residue,count");
            for (r, count) in c.zero_based.iter().enumerate() {
                println!("zero_based,{r},{count}");
            }
            for (r, count) in c.one_based.iter().enumerate() {
                println!("one_based,{r},{count}");
            }
        }
        Command::Classify { prime, m } => match (prime, m) {
            (Some(p), None) => {
                println!("{p}: {}", classify_prime(p)?);
            }
            (None, Some(m)) => {
                let (classes, pattern) = classification_breakdown(m)?;
                for (p, class) in &classes {
                    println!("{p}: {class}");
                }
                println!(
                    "pattern: n1={} n2={} n3={} n4={} all_in_classes={}",
                    pattern.n1, pattern.n2, pattern.n3, pattern.n4, pattern.all_in_s
                );
                if pattern.all_in_s {
                    let mu = mu_signs(m)?;
                    println!("mu: {:+} {:+} {:+} {:+}", mu[0], mu[1], mu[2], mu[3]);
                }
                println!(
                    "R(m, 5x^2+2xy+11y^2) = 2 (mod 4): {}",
                    theorem1_predict(m)?
                );
            }
            _ => anyhow::bail!("pass exactly one of --prime or --m"),
        },
        Command::Census {
            limit,
            method,
            out,
            freqs,
        } => {
            let mut w = out_writer(&out)?;
            if freqs {
                let report = density_report(limit, &mut w)?;
                w.flush()?;
                eprintln!(
                    "classifier mismatches on square-free values: {}",
                    report.classifier_mismatches
                );
                eprintln!(
                    "class frequencies over {} primes up to {} (expected {:.6}):",
                    report.primes_counted, report.prime_limit, census::FREQ_EXPECTED
                );
                for cf in &report.class_frequencies {
                    eprintln!(
                        "  {}: {} primes, frequency {:.6} ({:.2}% of expected){}",
                        cf.class,
                        cf.count,
                        cf.frequency,
                        100.0 * cf.frequency / census::FREQ_EXPECTED,
                        if cf.within_band { "" } else { "  [outside 15% band]" }
                    );
                }
                if report.classifier_mismatches > 0 {
                    return Ok(ExitCode::from(1));
                }
                return Ok(ExitCode::SUCCESS);
            }
            match method {
                MethodArg::Sieve => {
                    write_census_csv(&odd_census(limit, CensusMethod::Sieve)?, &mut w)?
                }
                MethodArg::Direct => {
                    write_census_csv(&odd_census(limit, CensusMethod::Direct)?, &mut w)?
                }
                MethodArg::Both => {
                    let sieve = odd_census(limit, CensusMethod::Sieve)?;
                    let direct = odd_census(limit, CensusMethod::Direct)?;
                    if sieve != direct {
                        eprintln!("error: census methods disagree");
                        for (s, d) in sieve.iter().zip(&direct) {
                            if s != d {
                                eprintln!(
                                    "  x = {}: sieve {} vs direct {}",
                                    s.x, s.odd_count, d.odd_count
                                );
                            }
                        }
                        return Ok(ExitCode::from(1));
                    }
                    write_census_csv(&sieve, &mut w)?;
                }
            }
            w.flush()?;
        }
        Command::Verify {
            suite,
            limit,
            seed,
            out,
        } => {
            let opts = SuiteOptions {
                limit,
                seed: seed.unwrap_or(DEFAULT_SEED),
            };
            let reports = if suite == "all" {
                run_all(&opts)?
            } else {
                vec![run_suite(&suite, &opts)?]
            };
            let mut w = out_writer(&out)?;
            serde_json::to_writer_pretty(&mut w, &reports)?;
            w.write_all(b"\n")?;
            w.flush()?;
            for r in &reports {
                eprintln!("{}: {} ({} checked)", r.name, r.status, r.checked);
            }
            if reports.iter().any(|r| !r.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use schurparity::census::{h_counts, MuCondition};

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn h_counts_is_reachable_from_library() {
        // The census subcommand covers the parity census; the counting
        // functions stay a library surface.
        let c = h_counts(10, &MuCondition::split_on(1)).unwrap();
        assert_eq!(c.h, 3);
    }
}
