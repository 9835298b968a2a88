//! Brute-force enumeration and validation: the independent ground truth
//! for counts, bijection round trips, and uniformity tests at small `n`.
//!
//! The crossing test searches all k-subsets of arcs directly — correctness
//! over speed, so that it is obviously right. Keep `n` small.

use alloc::vec::Vec;
use core::fmt;

use crate::matching::PartialMatching;
use crate::shape::Shape;
use crate::tableau::StarTableau;

/// Which of the three object classes to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    PartialMatching,
    Matching,
    Structure,
}

impl fmt::Display for ObjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectKind::PartialMatching => "partial",
            ObjectKind::Matching => "matching",
            ObjectKind::Structure => "structure",
        })
    }
}

/// An object class together with its crossing bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramClass {
    pub kind: ObjectKind,
    pub k: usize,
}

impl DiagramClass {
    pub fn new(kind: ObjectKind, k: usize) -> Self {
        assert!(k >= 2, "crossing bound must be at least 2");
        DiagramClass { kind, k }
    }

    /// True iff the matching belongs to the class.
    pub fn contains(&self, m: &PartialMatching) -> bool {
        if has_k_crossing(m, self.k) {
            return false;
        }
        match self.kind {
            ObjectKind::PartialMatching => true,
            ObjectKind::Matching => !m.has_isolated_vertex(),
            ObjectKind::Structure => !m.has_one_arc(),
        }
    }
}

/// True iff some `k` arcs `(i_1, j_1), ..., (i_k, j_k)` satisfy
/// `i_1 < ... < i_k < j_1 < ... < j_k`.
pub fn has_k_crossing(m: &PartialMatching, k: usize) -> bool {
    crossing_in(m.arcs(), k)
}

pub(crate) fn crossing_in(arcs: &[(usize, usize)], k: usize) -> bool {
    // Arcs are sorted by startpoint with distinct startpoints, so choosing
    // an index-increasing subsequence makes the starts increase for free.
    // The chain condition then needs increasing ends and every start below
    // the first chosen end.
    fn grow(
        arcs: &[(usize, usize)],
        from: usize,
        need: usize,
        first_end: usize,
        last_end: usize,
    ) -> bool {
        if need == 0 {
            return true;
        }
        for t in from..arcs.len() {
            let (s, e) = arcs[t];
            if s >= first_end {
                break;
            }
            if e <= last_end {
                continue;
            }
            if grow(arcs, t + 1, need - 1, first_end, e) {
                return true;
            }
        }
        false
    }
    if k == 0 {
        return true;
    }
    for t in 0..arcs.len() {
        let (_, e) = arcs[t];
        if grow(arcs, t + 1, k - 1, e, e) {
            return true;
        }
    }
    false
}

/// True iff some `k` arcs satisfy `i_1 < ... < i_k < j_k < ... < j_1`.
pub fn has_k_nesting(m: &PartialMatching, k: usize) -> bool {
    fn grow(arcs: &[(usize, usize)], from: usize, need: usize, last_end: usize) -> bool {
        if need == 0 {
            return true;
        }
        for t in from..arcs.len() {
            let (s, e) = arcs[t];
            if s >= last_end {
                break;
            }
            if e >= last_end {
                continue;
            }
            if grow(arcs, t + 1, need - 1, e) {
                return true;
            }
        }
        false
    }
    if k == 0 {
        return true;
    }
    grow(m.arcs(), 0, k, usize::MAX)
}

/// Enumeration refuses to run beyond `n = 16`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TooLarge {
    pub n: usize,
}

impl fmt::Display for TooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "enumeration is limited to n <= 16, got {}", self.n)
    }
}

/// All members of a class on `[n]`, in a deterministic order: the smallest
/// unprocessed vertex is left isolated first, then arced to each larger
/// partner in increasing order. Crossing-heavy branches are pruned as soon
/// as a k-crossing appears.
pub fn enumerate(n: usize, class: DiagramClass) -> Result<Vec<PartialMatching>, TooLarge> {
    if n > 16 {
        return Err(TooLarge { n });
    }
    let mut out = Vec::new();
    let free: Vec<usize> = (1..=n).collect();
    let mut arcs = Vec::new();
    recurse(n, class, &free, &mut arcs, &mut out);
    debug_assert!(out.iter().all(|m| class.contains(m)));
    Ok(out)
}

/// All star-tableaux of length `n` for row bound `k` (oscillating ones when
/// `allow_nothing` is false), by depth-first search over legal steps with a
/// feasibility prune: a shape with more squares than remaining steps cannot
/// reach empty. Same size guard as [`enumerate`].
pub fn enumerate_star_tableaux(
    k: usize,
    n: usize,
    allow_nothing: bool,
) -> Result<Vec<StarTableau>, TooLarge> {
    if n > 16 {
        return Err(TooLarge { n });
    }
    fn rec(
        k: usize,
        n: usize,
        allow_nothing: bool,
        shape: &Shape,
        steps: &mut Vec<crate::shape::Step>,
        out: &mut Vec<StarTableau>,
    ) {
        let remaining = n - steps.len();
        if shape.size() as usize > remaining {
            return;
        }
        if remaining == 0 {
            out.push(
                StarTableau::from_steps(k, steps.clone()).expect("search emits legal paths"),
            );
            return;
        }
        for (step, next) in shape.successors(k, allow_nothing) {
            steps.push(step);
            rec(k, n, allow_nothing, &next, steps, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, allow_nothing, &Shape::empty(), &mut Vec::new(), &mut out);
    Ok(out)
}

fn recurse(
    n: usize,
    class: DiagramClass,
    free: &[usize],
    arcs: &mut Vec<(usize, usize)>,
    out: &mut Vec<PartialMatching>,
) {
    let Some((&v, rest)) = free.split_first() else {
        out.push(PartialMatching::new(n, arcs.clone()).expect("construction keeps arcs disjoint"));
        return;
    };
    if class.kind != ObjectKind::Matching {
        recurse(n, class, rest, arcs, out);
    }
    for (pos, &w) in rest.iter().enumerate() {
        if class.kind == ObjectKind::Structure && w == v + 1 {
            continue;
        }
        arcs.push((v, w));
        if !crossing_in(arcs, class.k) {
            let mut remaining = rest.to_vec();
            remaining.remove(pos);
            recurse(n, class, &remaining, arcs, out);
        }
        arcs.pop();
    }
}
