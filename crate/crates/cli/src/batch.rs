//! Deterministic batch sampling over a worker pool.
//!
//! With `jobs` workers, worker `w` owns ordinals `w, w + jobs, ...` and a
//! private stream seeded `seed + w`, so batch output is a pure function of
//! `(table, count, seed, jobs)`. One worker reproduces the plain sequential
//! stream.

use std::collections::HashMap;
use std::thread;

use knc::counting::{CountTable, TableClass};
use knc::matching::PartialMatching;
use knc::sampler::{
    sample_partial_matching, sample_perfect_matching, sample_structure, Xoshiro256,
};

/// One sample from the class-appropriate process. The caller has already
/// ruled out an empty class.
pub fn draw(table: &CountTable, source: &mut Xoshiro256) -> PartialMatching {
    let result = match table.class() {
        TableClass::Star => sample_partial_matching(table, source),
        TableClass::Oscillating => sample_perfect_matching(table, source),
        TableClass::NoOneArc => sample_structure(table, source),
    };
    result.expect("class emptiness is checked before batching").0
}

fn worker_count(jobs: usize, count: u64) -> usize {
    jobs.min(count.max(1) as usize).max(1)
}

/// Run `consume(ordinal, matching)` for ordinals `0..count` in order. A
/// single worker streams; multiple workers buffer their share and the
/// merged sequence is replayed in ordinal order.
pub fn for_each_sample<E>(
    table: &CountTable,
    count: u64,
    seed: u64,
    jobs: usize,
    mut consume: impl FnMut(u64, PartialMatching) -> Result<(), E>,
) -> Result<(), E> {
    let jobs = worker_count(jobs, count);
    if jobs == 1 {
        let mut source = Xoshiro256::seeded(seed);
        for ordinal in 0..count {
            consume(ordinal, draw(table, &mut source))?;
        }
        return Ok(());
    }
    let buffers: Vec<Vec<PartialMatching>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    let mut source = Xoshiro256::seeded(seed.wrapping_add(w as u64));
                    let mut out = Vec::new();
                    let mut ordinal = w as u64;
                    while ordinal < count {
                        out.push(draw(table, &mut source));
                        ordinal += jobs as u64;
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling workers do not panic"))
            .collect()
    });
    let mut cursors = vec![0usize; jobs];
    for ordinal in 0..count {
        let w = (ordinal % jobs as u64) as usize;
        let m = buffers[w][cursors[w]].clone();
        cursors[w] += 1;
        consume(ordinal, m)?;
    }
    Ok(())
}

/// Per-class multiplicities over `count` samples, keyed by the canonical
/// (sorted) arc list. Workers fold their own maps, so memory scales with
/// the number of distinct classes rather than with `count`.
pub fn multiplicity_counts(
    table: &CountTable,
    count: u64,
    seed: u64,
    jobs: usize,
) -> HashMap<Vec<(usize, usize)>, u64> {
    let jobs = worker_count(jobs, count);
    let fold_one = |w: usize| {
        let mut source = Xoshiro256::seeded(seed.wrapping_add(w as u64));
        let mut map: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
        let mut ordinal = w as u64;
        while ordinal < count {
            let m = draw(table, &mut source);
            *map.entry(m.arcs().to_vec()).or_insert(0) += 1;
            ordinal += jobs as u64;
        }
        map
    };
    if jobs == 1 {
        return fold_one(0);
    }
    let maps: Vec<HashMap<Vec<(usize, usize)>, u64>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs).map(|w| scope.spawn(move || fold_one(w))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampling workers do not panic"))
            .collect()
    });
    let mut merged = HashMap::new();
    for map in maps {
        for (key, v) in map {
            *merged.entry(key).or_insert(0) += v;
        }
    }
    merged
}
