//! The `selftest` subcommand: every cross-check route the crate knows,
//! run against fresh tables, with one pass/fail line per suite.

use std::path::Path;

use knc::counting::{
    class_counts, closed3_star, count_structures, egf_matching_count, lgv_t,
    star_from_oscillating, w_inclusion_exclusion, CountTable, MemoryFlag, PascalTable,
    TableClass, TableScope,
};
use knc::oracle::{enumerate, enumerate_star_tableaux, DiagramClass, ObjectKind};
use knc::sampler::{
    sample_partial_matching, sample_perfect_matching, sample_structure, trace_probability,
    Xoshiro256,
};
use knc::tableau::{matching_to_tableau, tableau_to_matching};
use num_bigint::BigUint;

use crate::cache;

type SuiteResult = Result<String, String>;

fn dp_vs_oracle() -> SuiteResult {
    let mut checked = 0;
    for k in 2..=4 {
        let tables = [
            (ObjectKind::Matching, class_counts(k, 10, TableClass::Oscillating)),
            (ObjectKind::PartialMatching, class_counts(k, 10, TableClass::Star)),
            (ObjectKind::Structure, class_counts(k, 10, TableClass::NoOneArc)),
        ];
        for (kind, counts) in &tables {
            for n in 0..=10 {
                let listed = enumerate(n, DiagramClass::new(*kind, k))
                    .expect("n <= 16")
                    .len();
                if BigUint::from(listed) != counts[n] {
                    return Err(format!(
                        "k={k} n={n} {kind}: table says {}, enumeration found {listed}",
                        counts[n]
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} class counts match brute-force enumeration"))
}

fn closed_form_k3() -> SuiteResult {
    let n = 30;
    let pascal = PascalTable::new(n);
    let osc = CountTable::build(3, n, TableClass::Oscillating);
    let star = CountTable::build(3, n, TableClass::Star);
    let mut checked = 0;
    for idx in 0..star.shape_index().count_up_to_size(n as u32) {
        let shape = star.shape_index().shape(idx).clone();
        let h1 = (shape.row_len(1) + shape.row_len(2)) as usize;
        let h2 = (shape.row_len(1) - shape.row_len(2)) as usize;
        for m in 0..=n {
            if &lgv_t(m, h1, h2, &pascal) != osc.entry(idx, m) {
                return Err(format!("lgv t({m},{h1},{h2}) mismatch at shape {shape}"));
            }
            if &closed3_star(&shape, m, &pascal) != star.entry(idx, m) {
                return Err(format!("closed star form mismatch at ({shape}, {m})"));
            }
            checked += 2;
        }
    }
    Ok(format!("{checked} closed-form values match the k=3 tables"))
}

fn star_oscillating_convolution() -> SuiteResult {
    let n = 20;
    let pascal = PascalTable::new(n);
    let mut checked = 0;
    for k in [3usize, 4] {
        let osc = CountTable::build(k, n, TableClass::Oscillating);
        let star = CountTable::build(k, n, TableClass::Star);
        for idx in 0..star.shape_index().count_up_to_size(n as u32) {
            let shape = star.shape_index().shape(idx).clone();
            for m in 0..=n {
                if &star_from_oscillating(&shape, m, &osc, &pascal) != star.entry(idx, m) {
                    return Err(format!("convolution mismatch at k={k} ({shape}, {m})"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} star entries rebuilt from oscillating counts"))
}

fn lemma7_inclusion_exclusion() -> SuiteResult {
    let n = 20;
    let pascal = PascalTable::new(n);
    let mut checked = 0;
    for k in [3usize, 4] {
        let star = CountTable::build(k, n, TableClass::Star);
        let no1 = CountTable::build(k, n, TableClass::NoOneArc);
        for idx in 0..no1.shape_index().count_up_to_size(n as u32) {
            let shape = no1.shape_index().shape(idx).clone();
            for m in 0..=n {
                if &w_inclusion_exclusion(&shape, m, &star, &pascal) != no1.entry(idx, m) {
                    return Err(format!(
                        "inclusion-exclusion mismatch at k={k} ({shape}, {m})"
                    ));
                }
                checked += 1;
            }
        }
        for m in 0..=n {
            if &count_structures(k, m) != no1.entry(0, m) {
                return Err(format!("structure count formula mismatch at k={k} n={m}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} no-one-arc entries match inclusion-exclusion"))
}

fn egf_determinant() -> SuiteResult {
    let mut checked = 0;
    for k in [3usize, 4] {
        let osc = CountTable::build(k, 12, TableClass::Oscillating);
        for n in 0..=12 {
            let via_egf = egf_matching_count(k, n, n + 2).expect("truncation covers n");
            if &via_egf != osc.entry(0, n) {
                return Err(format!("Bessel determinant mismatch at k={k} n={n}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} matching counts match the Bessel determinant"))
}

fn bijection_roundtrip() -> SuiteResult {
    let mut checked = 0;
    for k in [2usize, 3] {
        for n in 0..=8 {
            let tableaux = enumerate_star_tableaux(k, n, true).expect("n <= 16");
            for t in &tableaux {
                let m = tableau_to_matching(t);
                let back = matching_to_tableau(&m, k)
                    .map_err(|e| format!("k={k} n={n}: {e}"))?;
                if &back != t {
                    return Err(format!("roundtrip failed at k={k} n={n}"));
                }
                checked += 1;
            }
            let expected = class_counts(k, n, TableClass::Star);
            if BigUint::from(tableaux.len()) != expected[n] {
                return Err(format!("star-tableau enumeration disagrees at k={k} n={n}"));
            }
        }
    }
    // Random long paths.
    let star = CountTable::build_scoped(3, 100, TableClass::Star, TableScope::Excursion);
    let mut src = Xoshiro256::seeded(1);
    for _ in 0..1000 {
        let (m, path) = sample_partial_matching(&star, &mut src).expect("nonempty class");
        if matching_to_tableau(&m, 3).expect("samples are 3-noncrossing") != path.tableau {
            return Err("roundtrip failed on a sampled path at n=100".into());
        }
        checked += 1;
    }
    Ok(format!("{checked} bijection roundtrips"))
}

fn trace_probability_suite() -> SuiteResult {
    let n = 12;
    let star = CountTable::build_scoped(3, n, TableClass::Star, TableScope::Excursion);
    let osc = CountTable::build_scoped(3, n, TableClass::Oscillating, TableScope::Excursion);
    let no1 = CountTable::build_scoped(3, n, TableClass::NoOneArc, TableScope::Excursion);
    let mut src = Xoshiro256::seeded(2);
    for _ in 0..200 {
        for (table, expect) in [(&star, 99991u32), (&osc, 4719), (&no1, 38635)] {
            let (_, path) = match table.class() {
                TableClass::Star => sample_partial_matching(table, &mut src),
                TableClass::Oscillating => sample_perfect_matching(table, &mut src),
                TableClass::NoOneArc => sample_structure(table, &mut src),
            }
            .expect("classes are nonempty at n=12");
            let (num, den) = trace_probability(&path);
            if num != BigUint::from(1u32) || den != BigUint::from(expect) {
                return Err(format!(
                    "trace {num}/{den} differs from 1/{expect} for {}",
                    table.class()
                ));
            }
        }
    }
    Ok("600 sampled paths have probability exactly 1/(class count)".into())
}

fn balance_identities() -> SuiteResult {
    let n = 14;
    let mut checked = 0;
    for class in [TableClass::Star, TableClass::NoOneArc] {
        let table = CountTable::build(3, n, class);
        let mut moves = Vec::new();
        for m in 1..=n {
            for idx in 0..table.shape_index().count_up_to_size(m as u32) {
                for flag in [MemoryFlag::Free, MemoryFlag::ForbidRemove1] {
                    moves.clear();
                    table.successor_states(idx, m, flag, &mut moves);
                    let sum: BigUint = moves.iter().map(|&(_, _, _, w)| w).sum();
                    if &sum != table.entry_flagged(idx, m, flag) {
                        return Err(format!(
                            "weight sum differs from state weight at ({idx}, {m}, {flag:?})"
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} states satisfy the balance identities"))
}

fn cache_integrity(path: &Path) -> SuiteResult {
    let cached = cache::load(path).map_err(|e| e.to_string())?;
    let fresh = CountTable::build_scoped(cached.k(), cached.n(), cached.class(), cached.scope());
    for m in 0..=cached.n() {
        if cached.layer(m) != fresh.layer(m) {
            return Err(format!(
                "cached layer {m} differs from a fresh build for (k={}, n={}, {})",
                cached.k(),
                cached.n(),
                cached.class()
            ));
        }
    }
    Ok(format!(
        "cache matches a fresh build of (k={}, n={}, {})",
        cached.k(),
        cached.n(),
        cached.class()
    ))
}

/// Run every suite, printing one line each; returns true iff all passed.
pub fn run(cache_path: Option<&Path>) -> bool {
    let mut suites: Vec<(&str, Box<dyn FnOnce() -> SuiteResult>)> = vec![
        ("dp-vs-oracle", Box::new(dp_vs_oracle)),
        ("closed-form-k3", Box::new(closed_form_k3)),
        ("star-oscillating-convolution", Box::new(star_oscillating_convolution)),
        ("lemma7-inclusion-exclusion", Box::new(lemma7_inclusion_exclusion)),
        ("egf-determinant", Box::new(egf_determinant)),
        ("bijection-roundtrip", Box::new(bijection_roundtrip)),
        ("trace-probability", Box::new(trace_probability_suite)),
        ("balance-identities", Box::new(balance_identities)),
    ];
    if let Some(path) = cache_path {
        let path = path.to_path_buf();
        suites.push(("cache-integrity", Box::new(move || cache_integrity(&path))));
    }
    let total = suites.len();
    let mut passed = 0;
    for (name, suite) in suites {
        match suite() {
            Ok(detail) => {
                println!("{name}: ok ({detail})");
                passed += 1;
            }
            Err(reason) => println!("{name}: FAIL ({reason})"),
        }
    }
    println!("selftest: {passed}/{total} suites passed");
    passed == total
}
