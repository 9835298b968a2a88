//! `knc` — exact counting and exactly uniform sampling of k-noncrossing
//! partial matchings, perfect matchings, and RNA pseudoknot structures.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use knc::counting::{class_counts, TableClass, TableScope};
use knc::oracle::{self, ObjectKind};
use knc_cli::format::OutputRecord;
use knc_cli::{batch, cache, format, hist, selftest};
use num_bigint::BigUint;

const DEFAULT_MAX_N: usize = 2000;
const MAX_HIST_CLASSES: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "knc",
    version,
    about = "Count and uniformly sample k-noncrossing matchings and RNA pseudoknot structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    /// Partial matchings (isolated vertices allowed)
    Partial,
    /// Perfect matchings (no isolated vertices)
    Matching,
    /// RNA structures: partial matchings without 1-arcs
    Structure,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// `<n> | i1-j1 i2-j2 ...`, lossless
    Arcs,
    /// Dot-bracket string with up to four bracket pages
    Brackets,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact number of objects in a class
    Count {
        /// Crossing bound (objects contain no k mutually crossing arcs)
        #[arg(long)]
        k: usize,
        /// Number of vertices
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Reuse or create a count-table cache file
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Preprocessing size guard
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Draw uniformly random objects, one per line
    Sample {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Number of samples
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Arcs)]
        format: FormatArg,
        /// Re-check every sample against the brute-force class predicates
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Worker threads; output depends only on (seed, jobs)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Sample N objects and print the multiplicity histogram with a
    /// chi-square statistic
    Hist {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Number of samples N
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Run the cross-check suites and report per-suite pass/fail
    Selftest {
        /// Also verify a cache file against a fresh build
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Verification(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Count { k, n, class, cache, max_n } => cmd_count(k, n, class, cache, max_n),
        Command::Sample {
            k,
            n,
            class,
            count,
            seed,
            format,
            verify,
            cache,
            jobs,
            max_n,
        } => cmd_sample(k, n, class, count, seed, format, verify, cache, jobs, max_n),
        Command::Hist { k, n, class, count, seed, cache, jobs, max_n } => {
            cmd_hist(k, n, class, count, seed, cache, jobs, max_n)
        }
        Command::Selftest { cache } => {
            if selftest::run(cache.as_deref()) {
                Ok(())
            } else {
                Err(CliError::Verification("selftest found failing suites".into()))
            }
        }
    }
}

fn table_class(class: ClassArg) -> TableClass {
    match class {
        ClassArg::Partial => TableClass::Star,
        ClassArg::Matching => TableClass::Oscillating,
        ClassArg::Structure => TableClass::NoOneArc,
    }
}

fn object_kind(class: ClassArg) -> ObjectKind {
    match class {
        ClassArg::Partial => ObjectKind::PartialMatching,
        ClassArg::Matching => ObjectKind::Matching,
        ClassArg::Structure => ObjectKind::Structure,
    }
}

fn validate(k: usize, n: usize, max_n: usize, jobs: usize) -> Result<(), CliError> {
    if !(2..=6).contains(&k) {
        return Err(CliError::Usage(format!("k must be between 2 and 6, got {k}")));
    }
    if n > max_n {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds the size guard {max_n}; raise it with --max-n if intended"
        )));
    }
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    Ok(())
}

fn cmd_count(
    k: usize,
    n: usize,
    class: ClassArg,
    cache_path: Option<PathBuf>,
    max_n: usize,
) -> Result<(), CliError> {
    validate(k, n, max_n, 1)?;
    let class = table_class(class);
    let total = match cache_path {
        // Without a cache there is no reason to retain the full table:
        // two rolling layers suffice for the count.
        None => class_counts(k, n, class).pop().expect("n + 1 entries"),
        Some(path) => {
            let table = cache::load_or_build(k, n, class, TableScope::Excursion, Some(&path));
            table.total().clone()
        }
    };
    println!("{total}");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    k: usize,
    n: usize,
    class: ClassArg,
    count: u64,
    seed: u64,
    format: FormatArg,
    verify: bool,
    cache_path: Option<PathBuf>,
    jobs: usize,
    max_n: usize,
) -> Result<(), CliError> {
    validate(k, n, max_n, jobs)?;
    let kind = object_kind(class);
    let table = cache::load_or_build(
        k,
        n,
        table_class(class),
        TableScope::Excursion,
        cache_path.as_deref(),
    );
    if table.total() == &BigUint::from(0u32) {
        return Err(CliError::Usage(format!(
            "no {kind} objects exist for k = {k}, n = {n}"
        )));
    }
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let brackets = format == FormatArg::Brackets;
    batch::for_each_sample(&table, count, seed, jobs, |ordinal, matching| {
        let record = OutputRecord { k, n, class: kind, seed, ordinal, matching };
        if verify {
            verify_record(&record)?;
        }
        writeln!(out, "{}", format::render(&record, brackets))
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
    })?;
    out.flush()
        .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))
}

fn verify_record(record: &OutputRecord) -> Result<(), CliError> {
    let fail = |what: &str| {
        Err(CliError::Verification(format!(
            "sample {} (k={}, n={}, class={}, seed={}) {what}",
            record.ordinal, record.k, record.n, record.class, record.seed
        )))
    };
    if oracle::has_k_crossing(&record.matching, record.k) {
        return fail("contains a k-crossing");
    }
    match record.class {
        ObjectKind::Matching if record.matching.has_isolated_vertex() => {
            fail("has an isolated vertex")
        }
        ObjectKind::Structure if record.matching.has_one_arc() => fail("contains a 1-arc"),
        _ => Ok(()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_hist(
    k: usize,
    n: usize,
    class: ClassArg,
    count: u64,
    seed: u64,
    cache_path: Option<PathBuf>,
    jobs: usize,
    max_n: usize,
) -> Result<(), CliError> {
    validate(k, n, max_n, jobs)?;
    if count == 0 {
        return Err(CliError::Usage("hist needs at least one sample".into()));
    }
    let table = cache::load_or_build(
        k,
        n,
        table_class(class),
        TableScope::Excursion,
        cache_path.as_deref(),
    );
    let total = table.total();
    if total == &BigUint::from(0u32) {
        return Err(CliError::Usage(format!(
            "no {} objects exist for k = {k}, n = {n}",
            object_kind(class)
        )));
    }
    if total > &BigUint::from(MAX_HIST_CLASSES) {
        return Err(CliError::Usage(format!(
            "class has {total} members; the histogram is limited to {MAX_HIST_CLASSES} classes"
        )));
    }
    let class_count: u64 = total.try_into().expect("bounded above");
    let report = hist::build_report(&table, object_kind(class), class_count, count, seed, jobs);
    print!("{}", report.render());
    Ok(())
}
