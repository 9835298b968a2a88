//! Exactly uniform random generation.
//!
//! A sampler walks the shape process from the empty shape: with `m` steps
//! remaining in state `s`, each legal successor state `s'` is chosen with
//! probability `count(s', m - 1) / count(s, m)` for the class-appropriate
//! count table. The per-step fractions telescope, so every complete path —
//! and hence every object of the class — comes out with probability exactly
//! `1 / count(empty, n)`. No floating point is involved anywhere.
//!
//! Each step draws a fresh uniform integer below `2^L` (where `L` is the
//! bit length of the state's own count), rejects values at or above the
//! count, and selects the successor whose cumulative-weight block contains
//! the draw. The expensive part — comparing a draw against arbitrary-
//! precision block boundaries — is short-circuited through 32-bit windows
//! of the draw and of the per-entry magnitude summaries kept by the count
//! table: a window comparison that is decisive for every possible
//! extension of the draw settles the block with one word of randomness,
//! and only the provably ambiguous cases (probability about `2^-32` per
//! boundary) extend the same draw to full precision. Distributions are
//! therefore exact, while a step costs `O(1)` word operations in
//! expectation.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::counting::{CountTable, EntryTop, MemoryFlag, TableClass};
use crate::matching::PartialMatching;
use crate::shape::Step;
use crate::tableau::{tableau_to_matching, StarTableau};

/// A deterministic stream of uniform 64-bit words. Identical seeds must
/// yield identical streams; that is the whole reproducibility contract.
pub trait RandomSource {
    fn next_word(&mut self) -> u64;
}

/// xoshiro256** seeded through a splitmix64 expansion. Not cryptographic;
/// fast, equidistributed, and stable across platforms and versions. Seed 0
/// is valid.
#[derive(Clone, Debug)]
pub struct Xoshiro256 {
    state: [u64; 4],
}

impl Xoshiro256 {
    pub fn seeded(seed: u64) -> Self {
        let mut sm = seed;
        let mut next = || {
            sm = sm.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = sm;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        let mut state = [next(), next(), next(), next()];
        if state == [0; 4] {
            state[0] = 0x9E37_79B9_7F4A_7C15;
        }
        Xoshiro256 { state }
    }
}

impl RandomSource for Xoshiro256 {
    fn next_word(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }
}

/// `uniform_below` needs a positive bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroBound;

impl fmt::Display for ZeroBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("uniform draw below zero is empty")
    }
}

/// `weighted_choice` needs at least one positive weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllZeroWeights;

impl fmt::Display for AllZeroWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("all weights are zero")
    }
}

/// The class is empty at this `(k, n)` — e.g. perfect matchings on an odd
/// number of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptyClass {
    pub k: usize,
    pub n: usize,
}

impl fmt::Display for EmptyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no objects exist for k = {}, n = {}", self.k, self.n)
    }
}

/// Uniform draw from `[0, bound)` by rejection on the smallest word-masked
/// range covering the bound: `t = bits(bound - 1)` random bits are drawn
/// and accepted when below the bound, so fewer than two rounds are needed
/// in expectation. A bound of 1 consumes no randomness.
pub fn uniform_below<R: RandomSource + ?Sized>(
    source: &mut R,
    bound: &BigUint,
) -> Result<BigUint, ZeroBound> {
    if bound.is_zero() {
        return Err(ZeroBound);
    }
    // bits(bound - 1) without materializing the subtraction: one less than
    // bits(bound) exactly when bound is a power of two.
    let bits = bound.bits() - u64::from(bound.count_ones() == 1);
    if bits == 0 {
        return Ok(BigUint::zero());
    }
    loop {
        let candidate = draw_bits(source, bits);
        if candidate < *bound {
            return Ok(candidate);
        }
    }
}

/// Choose index `i` with probability `weights[i] / Σ weights`, exactly.
pub fn weighted_choice<R: RandomSource + ?Sized>(
    source: &mut R,
    weights: &[BigUint],
) -> Result<usize, AllZeroWeights> {
    let total: BigUint = weights.iter().sum();
    if total.is_zero() {
        return Err(AllZeroWeights);
    }
    let mut draw = uniform_below(source, &total).expect("total is positive");
    for (i, w) in weights.iter().enumerate() {
        if draw < *w {
            return Ok(i);
        }
        draw -= w;
    }
    unreachable!("draw below the weight total always lands on an index")
}

/// A sampled process path: the star-tableau plus the exact per-step
/// transition fractions `(numerator, denominator)`. The denominator of
/// step `i + 1` equals the numerator of step `i`, which is what makes
/// [`trace_probability`] telescope.
#[derive(Clone, Debug)]
pub struct SampledPath {
    pub tableau: StarTableau,
    pub weights: Vec<(BigUint, BigUint)>,
}

/// Multiply the per-step fractions into one reduced fraction. For paths
/// produced by the samplers this is exactly `1 / count(class, k, n)`.
pub fn trace_probability(path: &SampledPath) -> (BigUint, BigUint) {
    let mut acc = Ratio::<BigUint>::one();
    for (num, den) in &path.weights {
        acc *= Ratio::new(num.clone(), den.clone());
    }
    (acc.numer().clone(), acc.denom().clone())
}

/// Uniform k-noncrossing partial matching on `[n]`, from a star-class
/// table. Every object has probability `1 / f_k^*(n)`.
pub fn sample_partial_matching<R: RandomSource + ?Sized>(
    star: &CountTable,
    source: &mut R,
) -> Result<(PartialMatching, SampledPath), EmptyClass> {
    assert_eq!(star.class(), TableClass::Star, "need a star count table");
    walk(star, source)
}

/// Uniform k-noncrossing perfect matching on `[n]`, from an oscillating
/// table. Fails with [`EmptyClass`] for odd `n`. Every object has
/// probability `1 / f_k(n)`.
pub fn sample_perfect_matching<R: RandomSource + ?Sized>(
    oscillating: &CountTable,
    source: &mut R,
) -> Result<(PartialMatching, SampledPath), EmptyClass> {
    assert_eq!(
        oscillating.class(),
        TableClass::Oscillating,
        "need an oscillating count table"
    );
    walk(oscillating, source)
}

/// Uniform k-noncrossing RNA structure (no 1-arcs) on `[n]`, from a
/// no-one-arc table. The walk carries the one-step memory flag, so the
/// forbidden step pattern never occurs. Every object has probability
/// `1 / S_k(n)`.
pub fn sample_structure<R: RandomSource + ?Sized>(
    table: &CountTable,
    source: &mut R,
) -> Result<(PartialMatching, SampledPath), EmptyClass> {
    assert_eq!(
        table.class(),
        TableClass::NoOneArc,
        "need a no-one-arc count table"
    );
    walk(table, source)
}

/// Exactly `bits` uniform random bits as an integer (little-endian word
/// consumption, top word masked).
fn draw_bits<R: RandomSource + ?Sized>(source: &mut R, bits: u64) -> BigUint {
    if bits == 0 {
        return BigUint::zero();
    }
    let words = bits.div_ceil(64) as usize;
    let top_bits = bits % 64;
    let mask = if top_bits == 0 {
        u64::MAX
    } else {
        (1u64 << top_bits) - 1
    };
    let mut bytes = Vec::with_capacity(words * 8);
    for w in 0..words {
        let mut x = source.next_word();
        if w == words - 1 {
            x &= mask;
        }
        bytes.extend_from_slice(&x.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

/// Verdict of the 32-bit window comparison of a draw against the scaled
/// block boundaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum WindowVerdict {
    /// Every extension of the draw lands in this block (filtered index).
    Block(usize),
    /// The draw sits within one grid cell of a boundary; extend it.
    Ambiguous,
    /// Every extension lands at or above the total: reject and redraw.
    Reject,
}

/// Decide a block from the top 32 bits of the draw. `tops` yields the
/// summaries of the block widths `w_j` in order; `scale_bits` is the bit
/// length of the total `Σ w_j`. The scaled boundary `B_i = cum_i /
/// 2^(scale_bits - 32)` satisfies `S_i <= B_i < S_i + i` for the truncated
/// sums `S_i = Σ_{j<i} scaled32(w_j)`, so a window value clear of
/// `[S_i, S_i + i)` decides the comparison with `cum_i` for every
/// extension of the draw. Summaries are only consumed up to the decision.
fn decide_window(
    window: u32,
    scale_bits: u64,
    tops: impl Iterator<Item = EntryTop>,
) -> WindowVerdict {
    let u = window as u64;
    let mut sum = 0u64;
    for (j, t) in tops.enumerate() {
        let after = sum + t.scaled32(scale_bits);
        let after_err = j as u64 + 1;
        if u + 1 <= after {
            if u >= sum + j as u64 {
                return WindowVerdict::Block(j);
            }
            return WindowVerdict::Ambiguous;
        }
        if u < after + after_err {
            return WindowVerdict::Ambiguous;
        }
        sum = after;
    }
    WindowVerdict::Reject
}

/// Legal moves out of `(state, flag)` in canonical order, as
/// `(step, successor index, successor flag)`.
fn filtered_moves<'a>(
    table: &'a CountTable,
    state: usize,
    flag: MemoryFlag,
) -> impl Iterator<Item = (Step, u32, MemoryFlag)> + 'a {
    table
        .shape_index()
        .successors(state)
        .iter()
        .filter_map(move |&(step, next)| {
            if !table.move_allowed(flag, step) {
                return None;
            }
            let next = next?;
            Some((step, next, table.next_flag(step)))
        })
}

/// Exact block walk: the move whose weight block contains `draw`, or
/// `None` when `draw` is at or above the weight total (reject).
fn exact_choice(
    table: &CountTable,
    state: usize,
    m: usize,
    flag: MemoryFlag,
    mut draw: BigUint,
) -> Option<(Step, u32, MemoryFlag)> {
    for (step, next, next_flag) in filtered_moves(table, state, flag) {
        let weight = table.entry_flagged(next as usize, m - 1, next_flag);
        if draw < *weight {
            return Some((step, next, next_flag));
        }
        draw -= weight;
    }
    None
}

/// One transition of the shape process: a successor of `(state, flag)` at
/// remaining length `m`, chosen with probability `weight / entry` exactly.
fn choose_move<R: RandomSource + ?Sized>(
    table: &CountTable,
    source: &mut R,
    state: usize,
    m: usize,
    flag: MemoryFlag,
    denominator_bits: u64,
) -> (Step, u32, MemoryFlag) {
    // Small denominators skip the window tier; full draws are cheap there.
    if denominator_bits > 48 {
        loop {
            let window = (source.next_word() >> 32) as u32;
            let tops = filtered_moves(table, state, flag)
                .map(|(_, next, next_flag)| table.entry_top(next as usize, m - 1, next_flag));
            match decide_window(window, denominator_bits, tops) {
                WindowVerdict::Block(j) => {
                    return filtered_moves(table, state, flag)
                        .nth(j)
                        .expect("decided block indexes a move");
                }
                WindowVerdict::Reject => continue,
                WindowVerdict::Ambiguous => {
                    // Extend the same draw to full precision: the window
                    // stays authoritative, the rest is fresh randomness.
                    let rest = draw_bits(source, denominator_bits - 32);
                    let full = (BigUint::from(window) << (denominator_bits - 32)) + rest;
                    match exact_choice(table, state, m, flag, full) {
                        Some(choice) => return choice,
                        None => continue,
                    }
                }
            }
        }
    }
    loop {
        let draw = draw_bits(source, denominator_bits);
        if let Some(choice) = exact_choice(table, state, m, flag, draw) {
            return choice;
        }
    }
}

fn walk<R: RandomSource + ?Sized>(
    table: &CountTable,
    source: &mut R,
) -> Result<(PartialMatching, SampledPath), EmptyClass> {
    let n = table.n();
    if table.total().is_zero() {
        return Err(EmptyClass { k: table.k(), n });
    }
    let mut steps = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut state = 0usize;
    let mut flag = MemoryFlag::Free;
    // The telescoping chain: each step's denominator equals the previous
    // step's numerator, starting from the class count.
    let mut denominator = table.total().clone();
    for m in (1..=n).rev() {
        let (step, next, next_flag) =
            choose_move(table, source, state, m, flag, denominator.bits());
        let numerator = table.entry_flagged(next as usize, m - 1, next_flag).clone();
        steps.push(step);
        weights.push((
            numerator.clone(),
            core::mem::replace(&mut denominator, numerator),
        ));
        state = next as usize;
        flag = next_flag;
    }
    debug_assert_eq!(state, 0, "walk must end at the empty shape");
    let tableau =
        StarTableau::from_steps(table.k(), steps).expect("process paths are star-tableaux");
    let matching = tableau_to_matching(&tableau);
    Ok((matching, SampledPath { tableau, weights }))
}
