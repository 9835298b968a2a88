// Temporary profiling scaffold #3: phase-level timing inside a walk
// replica. Not part of the suite.
use std::time::Instant;

use knc::counting::{CountTable, MemoryFlag, TableClass, TableScope};
use knc::sampler::{sample_partial_matching, uniform_below, RandomSource, Xoshiro256};
use knc::shape::Step;
use num_bigint::BigUint;

#[test]
#[ignore]
fn profile_walk_phases() {
    for n in [250usize, 500] {
        let table = CountTable::build_scoped(3, n, TableClass::Star, TableScope::Excursion);
        let mut src = Xoshiro256::seeded(1);
        for _ in 0..100 {
            let _ = sample_partial_matching(&table, &mut src);
        }
        let rounds = 600usize;

        // Phase A: walk the table along random paths, reading only tops
        // (simulates choose_move's memory behavior, approximately).
        let mut top_time = 0.0f64;
        let mut clone_time = 0.0f64;
        let mut sink = 0u64;
        let mut paths: Vec<Vec<(usize, MemoryFlag)>> = Vec::new();
        for _ in 0..rounds {
            let (_, path) = sample_partial_matching(&table, &mut src).unwrap();
            // reconstruct state sequence indices
            let shapes = path.tableau.shape_sequence();
            let mut states = Vec::with_capacity(n);
            let mut flag = MemoryFlag::Free;
            for (i, s) in shapes.iter().enumerate().take(n) {
                let idx = table.shape_index().index_of(s).unwrap();
                states.push((idx, flag));
                flag = if path.tableau.steps()[i] == Step::Add(1)
                    && table.class() == TableClass::NoOneArc
                {
                    MemoryFlag::ForbidRemove1
                } else {
                    MemoryFlag::Free
                };
            }
            paths.push(states);
        }

        // Phase A timing: tops of all successors along each path.
        let t0 = Instant::now();
        for states in &paths {
            for (i, &(idx, flag)) in states.iter().enumerate() {
                let m = n - i;
                for &(step, next) in table.shape_index().successors(idx) {
                    if !table.move_allowed(flag, step) {
                        continue;
                    }
                    let Some(next) = next else { continue };
                    let t = table.entry_top(next as usize, m - 1, table.next_flag(step));
                    sink = sink.wrapping_add(t.top as u64);
                }
            }
        }
        top_time = t0.elapsed().as_secs_f64() / rounds as f64;

        // Phase B timing: clone the chosen numerator along each path.
        let t0 = Instant::now();
        let mut acc = BigUint::from(0u32);
        for states in &paths {
            for (i, &(idx, flag)) in states.iter().enumerate().skip(1) {
                let m = n - i;
                acc = table.entry_flagged(idx, m, flag).clone();
            }
        }
        clone_time = t0.elapsed().as_secs_f64() / rounds as f64;
        std::hint::black_box((&acc, sink));

        // Phase C: RNG + window math alone (no memory traffic): draw and
        // decide against a fixed in-cache top set.
        let t0 = Instant::now();
        let mut s2 = Xoshiro256::seeded(7);
        let mut x = 0u64;
        for _ in 0..(rounds * n) {
            x = x.wrapping_add(s2.next_word() >> 32);
        }
        let rng_time = t0.elapsed().as_secs_f64() / rounds as f64;
        std::hint::black_box(x);

        // Full sampler for reference.
        let t0 = Instant::now();
        for _ in 0..rounds {
            let _ = sample_partial_matching(&table, &mut src).unwrap();
        }
        let full = t0.elapsed().as_secs_f64() / rounds as f64;

        // uniform_below of the total (draw length scaling).
        let t0 = Instant::now();
        for _ in 0..(rounds * 4) {
            let _ = uniform_below(&mut src, table.total()).unwrap();
        }
        let draw = t0.elapsed().as_secs_f64() / (rounds * 4) as f64;

        println!(
            "n={n}: tops {:.1}us, clones {:.1}us, rng {:.1}us, root-draw {:.1}us, full {:.1}us",
            top_time * 1e6,
            clone_time * 1e6,
            rng_time * 1e6,
            draw * 1e6,
            full * 1e6
        );
    }
}
