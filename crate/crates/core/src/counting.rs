//! Exact big-integer count tables over shapes, and the closed forms and
//! identities that cross-check them.
//!
//! For a shape `λ` and remaining length `m`, the table entry is the number
//! of length-`m` walks from `λ` to the empty shape (equivalently, by path
//! reversal, the number of tableaux sequences of shape `λ` and length `m`):
//!
//! * [`TableClass::Oscillating`] — walks without `Nothing` steps; the empty
//!   shape row is the perfect-matching count `f_k(n)`.
//! * [`TableClass::Star`] — walks with `Nothing` steps allowed; the empty
//!   shape row is the partial-matching count `f_k^*(n)`.
//! * [`TableClass::NoOneArc`] — walks that never take `Add(1)` directly
//!   followed by `Remove(1)`, the step pattern of a 1-arc. Entries carry a
//!   one-step [`MemoryFlag`]: `Free` counts all such walks (`W`), while
//!   `ForbidRemove1` counts those whose first step is not `Remove(1)` (`V`),
//!   which is the weight of a state just reached by `Add(1)`. The empty
//!   shape `Free` row is the structure count `S_k(n)`.
//!
//! Every entry satisfies the one-step transfer recursion
//! `count(λ, m) = Σ count(successor, m - 1)` over the legal successors, with
//! `count(empty, 0) = 1` and `count(λ ≠ empty, 0) = 0`. The tables are
//! filled by exactly that recursion, layer by layer, in `O(k · n^k)` time
//! and `O(n^k)` entries.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedSub, One, Zero};

use crate::shape::{Shape, ShapeIndex, Step};

mod egf;

pub use egf::{egf_matching_count, TruncationTooSmall};

/// Which walk class a table counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableClass {
    Oscillating,
    Star,
    NoOneArc,
}

impl fmt::Display for TableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableClass::Oscillating => "oscillating",
            TableClass::Star => "star",
            TableClass::NoOneArc => "no-one-arc",
        })
    }
}

/// One-step memory for [`TableClass::NoOneArc`]: whether the walk is
/// forbidden to open with `Remove(1)` (because the step that led here was
/// `Add(1)`). Ignored by the other classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MemoryFlag {
    Free,
    ForbidRemove1,
}

/// Which `(shape, m)` pairs a table stores.
///
/// `AllShapes` keeps every shape with `size ≤ m` — everything that can be
/// nonzero — and is what the cross-check identities want. `Excursion`
/// restricts layer `m` to `size ≤ min(m, n - m)`, exactly the states an
/// empty-to-empty walk of length `n` can visit; samplers never look outside
/// it and the saving is roughly a factor four in entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableScope {
    AllShapes,
    Excursion,
}

impl fmt::Display for TableScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableScope::AllShapes => "all-shapes",
            TableScope::Excursion => "excursion",
        })
    }
}

/// Layer data that does not match the expected layout for `(k, n, class,
/// scope)`; reported when reconstructing a table from an external dump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableLayoutError {
    pub layer: usize,
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for TableLayoutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "layer {} has {} entries, expected {}",
            self.layer, self.got, self.expected
        )
    }
}

/// Bit length and normalized top 32 bits of a count, kept in a dense side
/// array so samplers can compare magnitudes without touching the
/// arbitrary-precision payloads. `top = floor(value · 2^(32 - bits))` (the
/// leading 32 bits, MSB-aligned); zero is `(0, 0)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EntryTop {
    pub bits: u32,
    pub top: u32,
}

impl EntryTop {
    pub fn of(value: &BigUint) -> Self {
        let bits = value.bits();
        if bits == 0 {
            return EntryTop { bits: 0, top: 0 };
        }
        let mut digits = value.iter_u64_digits();
        let hi = digits.next_back().expect("nonzero value has digits");
        let lo = digits.next_back().unwrap_or(0);
        let s = (bits % 64) as u32;
        let top64 = if s == 0 {
            hi
        } else {
            (hi << (64 - s)) | (lo >> s)
        };
        EntryTop {
            bits: u32::try_from(bits).expect("bit lengths stay far below 2^32"),
            top: (top64 >> 32) as u32,
        }
    }

    /// `floor(value / 2^(scale_bits - 32))`: the value's window in a
    /// 32-bit grid aligned to a denominator of `scale_bits` bits. Requires
    /// `bits <= scale_bits` and `scale_bits > 32`; exact because nested
    /// power-of-two floors compose.
    pub fn scaled32(&self, scale_bits: u64) -> u64 {
        debug_assert!(u64::from(self.bits) <= scale_bits);
        let occupied = u64::from(self.bits) + 32;
        if occupied <= scale_bits {
            return 0;
        }
        let d = (occupied - scale_bits) as u32; // 1..=32
        u64::from(self.top >> (32 - d))
    }
}

struct Layer {
    values: Vec<BigUint>,
    tops: Vec<EntryTop>,
}

impl Layer {
    fn new(values: Vec<BigUint>) -> Self {
        let tops = values.iter().map(EntryTop::of).collect();
        Layer { values, tops }
    }
}

/// Dense exact count table for one `(k, n, class)` triple.
pub struct CountTable {
    k: usize,
    n: usize,
    class: TableClass,
    scope: TableScope,
    shapes: ShapeIndex,
    /// `layers[m]` holds the counts at remaining length `m`, indexed by
    /// shape index (interleaved `[Free, ForbidRemove1]` for `NoOneArc`).
    layers: Vec<Layer>,
    zero: BigUint,
}

impl CountTable {
    /// Build the table for all shapes, suitable for identity checks.
    pub fn build(k: usize, n: usize, class: TableClass) -> Self {
        Self::build_scoped(k, n, class, TableScope::AllShapes)
    }

    /// Build the table with the given storage scope.
    pub fn build_scoped(k: usize, n: usize, class: TableClass, scope: TableScope) -> Self {
        assert!(k >= 2, "crossing bound k must be at least 2");
        let max_size = match scope {
            TableScope::AllShapes => n as u32,
            TableScope::Excursion => (n / 2) as u32,
        };
        let shapes = ShapeIndex::new(k, max_size);
        let flags = flag_count(class);
        let mut layers: Vec<Layer> = Vec::with_capacity(n + 1);
        layers.push(Layer::new(vec![BigUint::one(); flags]));
        for m in 1..=n {
            let bound = scope_bound(scope, n, m);
            let cur = shapes.count_up_to_size(bound);
            let prev = &layers[m - 1].values;
            layers.push(Layer::new(fill_layer(&shapes, class, prev, m, cur)));
        }
        CountTable {
            k,
            n,
            class,
            scope,
            shapes,
            layers,
            zero: BigUint::zero(),
        }
    }

    /// Reassemble a table from externally stored layers (e.g. a cache
    /// file). Only the layout is validated here; callers that do not trust
    /// the source should compare entries against a fresh build.
    pub fn from_layers(
        k: usize,
        n: usize,
        class: TableClass,
        scope: TableScope,
        layers: Vec<Vec<BigUint>>,
    ) -> Result<Self, TableLayoutError> {
        assert!(k >= 2);
        let max_size = match scope {
            TableScope::AllShapes => n as u32,
            TableScope::Excursion => (n / 2) as u32,
        };
        let shapes = ShapeIndex::new(k, max_size);
        let flags = flag_count(class);
        if layers.len() != n + 1 {
            return Err(TableLayoutError {
                layer: layers.len(),
                expected: n + 1,
                got: layers.len(),
            });
        }
        for (m, layer) in layers.iter().enumerate() {
            let expected = shapes.count_up_to_size(scope_bound(scope, n, m)) * flags;
            if layer.len() != expected {
                return Err(TableLayoutError {
                    layer: m,
                    expected,
                    got: layer.len(),
                });
            }
        }
        Ok(CountTable {
            k,
            n,
            class,
            scope,
            shapes,
            layers: layers.into_iter().map(Layer::new).collect(),
            zero: BigUint::zero(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> TableClass {
        self.class
    }

    pub fn scope(&self) -> TableScope {
        self.scope
    }

    pub fn shape_index(&self) -> &ShapeIndex {
        &self.shapes
    }

    /// Raw layer data in shape-index order (flag-interleaved for
    /// `NoOneArc`); the unit of the cache file format.
    pub fn layer(&self, m: usize) -> &[BigUint] {
        &self.layers[m].values
    }

    /// Total number of stored big-integer entries, the `O(n^k)` memory
    /// figure of the table.
    pub fn stored_entries(&self) -> usize {
        self.layers.iter().map(|l| l.values.len()).sum()
    }

    fn layer_bound(&self, m: usize) -> u32 {
        scope_bound(self.scope, self.n, m)
    }

    /// Count at `(shape index, remaining length)`. For `NoOneArc` this is
    /// the `Free` entry (the `W` numbers).
    pub fn entry(&self, idx: usize, m: usize) -> &BigUint {
        self.entry_flagged(idx, m, MemoryFlag::Free)
    }

    /// Count at `(shape index, remaining length, flag)`. The flag is
    /// ignored unless the class is `NoOneArc`.
    pub fn entry_flagged(&self, idx: usize, m: usize, flag: MemoryFlag) -> &BigUint {
        match self.slot(idx, m, flag) {
            Some(slot) => &self.layers[m].values[slot],
            None => &self.zero,
        }
    }

    /// Magnitude summary of an entry, from the dense side array.
    pub fn entry_top(&self, idx: usize, m: usize, flag: MemoryFlag) -> EntryTop {
        match self.slot(idx, m, flag) {
            Some(slot) => self.layers[m].tops[slot],
            None => EntryTop::default(),
        }
    }

    fn slot(&self, idx: usize, m: usize, flag: MemoryFlag) -> Option<usize> {
        assert!(m <= self.n, "remaining length {m} exceeds table length {}", self.n);
        let size = self.shapes.size_of(idx);
        if size as usize > m {
            return None;
        }
        if size > self.layer_bound(m) {
            panic!(
                "entry ({}, {m}) lies outside the {} storage scope",
                self.shapes.shape(idx),
                self.scope
            );
        }
        let flags = flag_count(self.class);
        if self.class == TableClass::NoOneArc && flag == MemoryFlag::ForbidRemove1 {
            Some(flags * idx + 1)
        } else {
            Some(flags * idx)
        }
    }

    /// Entry lookup by shape value.
    pub fn entry_of(&self, shape: &Shape, m: usize) -> &BigUint {
        self.entry_of_flagged(shape, m, MemoryFlag::Free)
    }

    pub fn entry_of_flagged(&self, shape: &Shape, m: usize, flag: MemoryFlag) -> &BigUint {
        match self.shapes.index_of(shape) {
            Some(idx) => self.entry_flagged(idx, m, flag),
            None if shape.size() as usize > m => &self.zero,
            None => panic!("shape {shape} is not covered by this table"),
        }
    }

    /// The class count at `(k, n)`: `f_k(n)`, `f_k^*(n)`, or `S_k(n)`.
    pub fn total(&self) -> &BigUint {
        self.entry_flagged(0, self.n, MemoryFlag::Free)
    }

    /// True iff the class and memory flag permit this step out of a state.
    pub fn move_allowed(&self, flag: MemoryFlag, step: Step) -> bool {
        match self.class {
            TableClass::Oscillating => step != Step::Nothing,
            TableClass::Star => true,
            TableClass::NoOneArc => {
                flag == MemoryFlag::Free || step != Step::Remove(1)
            }
        }
    }

    /// The memory flag a step hands to its successor state.
    pub fn next_flag(&self, step: Step) -> MemoryFlag {
        if self.class == TableClass::NoOneArc && step == Step::Add(1) {
            MemoryFlag::ForbidRemove1
        } else {
            MemoryFlag::Free
        }
    }

    /// Append the legal moves out of state `(idx, flag)` with `m` steps
    /// remaining, along with the successor state and its weight at
    /// `m - 1`. Zero-weight successors are omitted; the weights of the
    /// appended moves sum to exactly `entry_flagged(idx, m, flag)`.
    pub fn successor_states<'a>(
        &'a self,
        idx: usize,
        m: usize,
        flag: MemoryFlag,
        out: &mut Vec<(Step, u32, MemoryFlag, &'a BigUint)>,
    ) {
        assert!(m >= 1 && m <= self.n);
        for &(step, next) in self.shapes.successors(idx) {
            if !self.move_allowed(flag, step) {
                continue;
            }
            let Some(next) = next else { continue };
            let nflag = self.next_flag(step);
            let w = self.entry_flagged(next as usize, m - 1, nflag);
            if w.is_zero() {
                continue;
            }
            out.push((step, next, nflag, w));
        }
    }
}

fn flag_count(class: TableClass) -> usize {
    match class {
        TableClass::NoOneArc => 2,
        _ => 1,
    }
}

fn scope_bound(scope: TableScope, n: usize, m: usize) -> u32 {
    match scope {
        TableScope::AllShapes => m.min(n) as u32,
        TableScope::Excursion => m.min(n - m) as u32,
    }
}

/// One transfer-recursion layer: counts at remaining length `m` for the
/// first `cur` shapes, from the layer at `m - 1`.
fn fill_layer(
    shapes: &ShapeIndex,
    class: TableClass,
    prev: &[BigUint],
    m: usize,
    cur: usize,
) -> Vec<BigUint> {
    let zero = BigUint::zero();
    let flags = flag_count(class);
    let prev_shapes = prev.len() / flags;
    let get = |next: usize, slot: usize| -> &BigUint {
        if shapes.size_of(next) as usize > m - 1 {
            return &zero;
        }
        debug_assert!(next < prev_shapes, "recursion left the stored scope");
        &prev[flags * next + slot]
    };
    let mut layer = Vec::with_capacity(cur * flags);
    for idx in 0..cur {
        match class {
            TableClass::Oscillating | TableClass::Star => {
                let mut sum = BigUint::zero();
                for &(step, next) in shapes.successors(idx) {
                    if class == TableClass::Oscillating && step == Step::Nothing {
                        continue;
                    }
                    let Some(next) = next else { continue };
                    sum += get(next as usize, 0);
                }
                layer.push(sum);
            }
            TableClass::NoOneArc => {
                // All moves except Remove(1) contribute to both flags;
                // Remove(1) only to Free.
                let mut shared = BigUint::zero();
                let mut remove1 = BigUint::zero();
                for &(step, next) in shapes.successors(idx) {
                    let Some(next) = next else { continue };
                    let slot = usize::from(step == Step::Add(1));
                    let v = get(next as usize, slot);
                    if step == Step::Remove(1) {
                        remove1 += v;
                    } else {
                        shared += v;
                    }
                }
                let free = &shared + &remove1;
                layer.push(free);
                layer.push(shared);
            }
        }
    }
    layer
}

/// The sequence `count(empty, m)` for `m = 0..=n` of a class — `f_k(m)`,
/// `f_k^*(m)`, or `S_k(m)` — computed with two rolling layers instead of a
/// retained table. Memory drops to `O(n^{k-1})` entries.
pub fn class_counts(k: usize, n: usize, class: TableClass) -> Vec<BigUint> {
    assert!(k >= 2);
    let shapes = ShapeIndex::new(k, (n / 2) as u32);
    let flags = flag_count(class);
    let mut prev = vec![BigUint::one(); flags];
    let mut counts = Vec::with_capacity(n + 1);
    counts.push(BigUint::one());
    for m in 1..=n {
        let bound = scope_bound(TableScope::Excursion, n, m);
        let cur = shapes.count_up_to_size(bound);
        let layer = fill_layer(&shapes, class, &prev, m, cur);
        counts.push(layer[0].clone());
        prev = layer;
    }
    counts
}

/// All binomial coefficients `B(a, b)` for `0 <= b <= a <= n + 2`, exact.
pub struct PascalTable {
    rows: Vec<Vec<BigUint>>,
    zero: BigUint,
}

impl PascalTable {
    /// Table sized for formulas over walks of length at most `n` (which
    /// need `B(n + 2, ·)`).
    pub fn new(n: usize) -> Self {
        let max = n + 2;
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        for a in 0..=max {
            let mut row = Vec::with_capacity(a + 1);
            row.push(BigUint::one());
            for b in 1..a {
                let v = &rows[a - 1][b - 1] + &rows[a - 1][b];
                row.push(v);
            }
            if a > 0 {
                row.push(BigUint::one());
            }
            rows.push(row);
        }
        PascalTable {
            rows,
            zero: BigUint::zero(),
        }
    }

    /// Largest admissible upper index.
    pub fn max_a(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B(a, b)`, with `b > a` reading as zero.
    pub fn binomial(&self, a: usize, b: usize) -> &BigUint {
        assert!(a <= self.max_a(), "binomial row {a} beyond table");
        if b > a {
            &self.zero
        } else {
            &self.rows[a][b]
        }
    }
}

/// Ballot count `F(n, h)`: walks of length `n` from 0 to `h` with steps
/// `±1` staying nonnegative. `B(n, (n-h)/2) - B(n, (n-h-2)/2)` by the
/// reflection principle; zero off parity or out of range.
pub fn ballot_f(n: usize, h: usize, pascal: &PascalTable) -> BigUint {
    if h > n || (n - h) % 2 != 0 {
        return BigUint::zero();
    }
    let main = pascal.binomial(n, (n - h) / 2);
    if n - h >= 2 {
        main - pascal.binomial(n, (n - h - 2) / 2)
    } else {
        main.clone()
    }
}

/// Nonintersecting-pair count `t(n, h1, h2)` for the two-row walk picture:
/// `F(n+2, h1+2) F(n, h2) - F(n+2, h2) F(n, h1+2)`. For a two-row shape
/// with `h1 = x1 + x2` and `h2 = x1 - x2` this equals the oscillating count
/// at `k = 3`.
pub fn lgv_t(n: usize, h1: usize, h2: usize, pascal: &PascalTable) -> BigUint {
    let pos = ballot_f(n + 2, h1 + 2, pascal) * ballot_f(n, h2, pascal);
    let neg = ballot_f(n + 2, h2, pascal) * ballot_f(n, h1 + 2, pascal);
    pos.checked_sub(&neg)
        .expect("nonintersecting path count is nonnegative")
}

/// Closed-form star count at `k = 3` for a shape with at most two rows:
/// the binomial convolution of `lgv_t` over the number of `Nothing` steps.
/// Off-parity terms vanish, so summing over all placements is the total
/// form of the parity-split convolution.
pub fn closed3_star(shape: &Shape, m: usize, pascal: &PascalTable) -> BigUint {
    assert!(shape.row_count() <= 2, "closed form needs a two-row shape");
    let x1 = shape.row_len(1) as usize;
    let x2 = shape.row_len(2) as usize;
    let (h1, h2) = (x1 + x2, x1 - x2);
    let mut sum = BigUint::zero();
    for j in 0..=m {
        let t = lgv_t(m - j, h1, h2, pascal);
        if !t.is_zero() {
            sum += pascal.binomial(m, j) * t;
        }
    }
    sum
}

/// Star count from oscillating counts: distribute the `Nothing` steps over
/// the walk, `Σ_j B(m, j) · oscillating(λ, m - j)`. Only the terms whose
/// parity matches `m - |λ|` are nonzero, which recovers the split forms
/// `Σ_l B(m, 2l) O^0(λ, m-2l)` (even case) and `Σ_l B(m, 2l+1)
/// O^0(λ, m-2l-1)` (odd case). Must equal the star table entry.
pub fn star_from_oscillating(
    shape: &Shape,
    m: usize,
    oscillating: &CountTable,
    pascal: &PascalTable,
) -> BigUint {
    assert_eq!(oscillating.class(), TableClass::Oscillating);
    let mut sum = BigUint::zero();
    for j in 0..=m {
        let o = oscillating.entry_of(shape, m - j);
        if !o.is_zero() {
            sum += pascal.binomial(m, j) * o;
        }
    }
    sum
}

/// Inclusion–exclusion over inserted `(Add(1), Remove(1))` pairs:
/// `W(λ, m) = Σ_b (-1)^b B(m-b, b) O*(λ, m-2b)`. Must equal the
/// `NoOneArc` table's `Free` entry.
pub fn w_inclusion_exclusion(
    shape: &Shape,
    m: usize,
    star: &CountTable,
    pascal: &PascalTable,
) -> BigUint {
    assert_eq!(star.class(), TableClass::Star);
    let mut sum = BigInt::zero();
    for b in 0..=m / 2 {
        let term = BigInt::from(pascal.binomial(m - b, b) * star.entry_of(shape, m - 2 * b));
        if b % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.to_biguint()
        .expect("inclusion-exclusion telescopes to a nonnegative count")
}

/// Number of k-noncrossing structures (1-arc-free partial matchings):
/// `S_k(n) = Σ_b (-1)^b B(n-b, b) f_k^*(n-2b)`.
pub fn count_structures(k: usize, n: usize) -> BigUint {
    let fstar = class_counts(k, n, TableClass::Star);
    let pascal = PascalTable::new(n);
    let mut sum = BigInt::zero();
    for b in 0..=n / 2 {
        let term = BigInt::from(pascal.binomial(n - b, b) * &fstar[n - 2 * b]);
        if b % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.to_biguint().expect("structure count is nonnegative")
}
