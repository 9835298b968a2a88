//! Count-table cache files: a versioned text dump keyed by
//! `(k, n, class, scope)` so repeated invocations skip preprocessing.
//!
//! Layout, one token stream per line:
//!
//! ```text
//! knc-table v1
//! k 3
//! n 12
//! class star
//! scope excursion
//! layer 0 1
//! layer 1 1 1
//! ...
//! ```
//!
//! Entries are exact decimal strings in shape-index order (flag-interleaved
//! for the no-one-arc class), one `layer` line per remaining length. Only
//! the layout is validated on load; `knc selftest --cache` recomputes the
//! table and compares every entry.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use knc::counting::{CountTable, TableClass, TableScope};
use num_bigint::BigUint;

const MAGIC: &str = "knc-table v1";

#[derive(Debug)]
pub enum CacheError {
    Io(io::Error),
    Parse(String),
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache io error: {e}"),
            CacheError::Parse(msg) => write!(f, "cache parse error: {msg}"),
        }
    }
}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        CacheError::Io(e)
    }
}

pub fn save(path: &Path, table: &CountTable) -> io::Result<()> {
    let mut out = BufWriter::new(fs::File::create(path)?);
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "k {}", table.k())?;
    writeln!(out, "n {}", table.n())?;
    writeln!(out, "class {}", table.class())?;
    writeln!(out, "scope {}", table.scope())?;
    for m in 0..=table.n() {
        write!(out, "layer {m}")?;
        for v in table.layer(m) {
            write!(out, " {v}")?;
        }
        writeln!(out)?;
    }
    out.flush()
}

fn parse_class(token: &str) -> Option<TableClass> {
    match token {
        "oscillating" => Some(TableClass::Oscillating),
        "star" => Some(TableClass::Star),
        "no-one-arc" => Some(TableClass::NoOneArc),
        _ => None,
    }
}

fn parse_scope(token: &str) -> Option<TableScope> {
    match token {
        "all-shapes" => Some(TableScope::AllShapes),
        "excursion" => Some(TableScope::Excursion),
        _ => None,
    }
}

pub fn load(path: &Path) -> Result<CountTable, CacheError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let parse = |msg: &str| CacheError::Parse(msg.to_string());
    if lines.next() != Some(MAGIC) {
        return Err(parse("missing version header"));
    }
    let mut field = |name: &str| -> Result<String, CacheError> {
        let line = lines.next().ok_or_else(|| parse("truncated header"))?;
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| parse("malformed header line"))?;
        if key != name {
            return Err(parse(&format!("expected header field {name}, got {key}")));
        }
        Ok(value.to_string())
    };
    let k: usize = field("k")?.parse().map_err(|_| parse("bad k"))?;
    let n: usize = field("n")?.parse().map_err(|_| parse("bad n"))?;
    let class = parse_class(&field("class")?).ok_or_else(|| parse("bad class"))?;
    let scope = parse_scope(&field("scope")?).ok_or_else(|| parse("bad scope"))?;
    let mut layers: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for (expect_m, line) in lines.enumerate() {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("layer") {
            return Err(parse("expected a layer line"));
        }
        let m: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse("bad layer index"))?;
        if m != expect_m {
            return Err(parse(&format!("layer {m} out of order")));
        }
        let entries: Result<Vec<BigUint>, _> = tokens.map(BigUint::from_str).collect();
        layers.push(entries.map_err(|_| parse("bad layer entry"))?);
    }
    CountTable::from_layers(k, n, class, scope, layers)
        .map_err(|e| parse(&format!("layout mismatch: {e}")))
}

/// Load a matching cached table or build (and cache) a fresh one. Cache
/// problems are reported on stderr and never fatal.
pub fn load_or_build(
    k: usize,
    n: usize,
    class: TableClass,
    scope: TableScope,
    cache: Option<&Path>,
) -> CountTable {
    if let Some(path) = cache {
        if path.exists() {
            match load(path) {
                Ok(table)
                    if table.k() == k
                        && table.n() == n
                        && table.class() == class
                        && table.scope() == scope =>
                {
                    return table;
                }
                Ok(table) => eprintln!(
                    "note: cache {} holds (k={}, n={}, {}, {}), rebuilding",
                    path.display(),
                    table.k(),
                    table.n(),
                    table.class(),
                    table.scope()
                ),
                Err(e) => eprintln!("note: ignoring cache {}: {e}", path.display()),
            }
        }
        let table = CountTable::build_scoped(k, n, class, scope);
        if let Err(e) = save(path, &table) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
        table
    } else {
        CountTable::build_scoped(k, n, class, scope)
    }
}
