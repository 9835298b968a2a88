//! Partial matchings on `[n]`: the sampled combinatorial objects.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A partial matching on vertices `1..=n`: a set of arcs `(i, j)` with
/// `i < j` in which every vertex occurs at most once. Arcs are kept sorted
/// by first endpoint.
///
/// A *matching* is a partial matching without isolated vertices; an *RNA
/// structure* additionally has no arc of the form `(i, i + 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialMatching {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// Rejected arc set for [`PartialMatching::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidMatching {
    /// An endpoint lies outside `1..=n`.
    VertexOutOfRange { vertex: usize },
    /// An arc has `i >= j`.
    NotAnArc { arc: (usize, usize) },
    /// A vertex occurs in two arcs.
    DuplicateVertex { vertex: usize },
}

impl fmt::Display for InvalidMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidMatching::VertexOutOfRange { vertex } => {
                write!(f, "vertex {vertex} is out of range")
            }
            InvalidMatching::NotAnArc { arc } => {
                write!(f, "pair ({}, {}) is not an arc (need i < j)", arc.0, arc.1)
            }
            InvalidMatching::DuplicateVertex { vertex } => {
                write!(f, "vertex {vertex} occurs in more than one arc")
            }
        }
    }
}

impl PartialMatching {
    /// The empty matching on `n` vertices.
    pub fn empty(n: usize) -> Self {
        PartialMatching { n, arcs: Vec::new() }
    }

    /// Validate and normalize an arc set: each arc needs `1 <= i < j <= n`
    /// and degrees must stay at most one. Arcs are sorted by first endpoint.
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self, InvalidMatching> {
        let mut used = vec![false; n + 1];
        for &(i, j) in &arcs {
            if i >= j {
                return Err(InvalidMatching::NotAnArc { arc: (i, j) });
            }
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(InvalidMatching::VertexOutOfRange { vertex: v });
                }
                if used[v] {
                    return Err(InvalidMatching::DuplicateVertex { vertex: v });
                }
                used[v] = true;
            }
        }
        arcs.sort_unstable();
        Ok(PartialMatching { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs sorted by first endpoint, each with `i < j`.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn isolated_count(&self) -> usize {
        self.n - 2 * self.arcs.len()
    }

    /// The partner of a vertex, if it is matched.
    pub fn partner_of(&self, v: usize) -> Option<usize> {
        self.arcs.iter().find_map(|&(i, j)| {
            if i == v {
                Some(j)
            } else if j == v {
                Some(i)
            } else {
                None
            }
        })
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.isolated_count() > 0
    }

    /// True iff some arc is a 1-arc `(i, i + 1)`.
    pub fn has_one_arc(&self) -> bool {
        self.arcs.iter().any(|&(i, j)| j == i + 1)
    }
}

impl fmt::Debug for PartialMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMatching(n={}, arcs={:?})", self.n, self.arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_and_sorts() {
        let m = PartialMatching::new(5, vec![(2, 4), (1, 3)]).unwrap();
        assert_eq!(m.arcs(), &[(1, 3), (2, 4)]);
        assert_eq!(m.isolated_count(), 1);
        assert_eq!(m.partner_of(4), Some(2));
        assert_eq!(m.partner_of(5), None);
    }

    #[test]
    fn rejects_bad_arcs() {
        assert_eq!(
            PartialMatching::new(4, vec![(3, 3)]),
            Err(InvalidMatching::NotAnArc { arc: (3, 3) })
        );
        assert_eq!(
            PartialMatching::new(4, vec![(1, 5)]),
            Err(InvalidMatching::VertexOutOfRange { vertex: 5 })
        );
        assert_eq!(
            PartialMatching::new(4, vec![(1, 3), (3, 4)]),
            Err(InvalidMatching::DuplicateVertex { vertex: 3 })
        );
    }

    #[test]
    fn class_predicates() {
        let m = PartialMatching::new(4, vec![(1, 2), (3, 4)]).unwrap();
        assert!(!m.has_isolated_vertex());
        assert!(m.has_one_arc());
        let s = PartialMatching::new(4, vec![(1, 3)]).unwrap();
        assert!(s.has_isolated_vertex());
        assert!(!s.has_one_arc());
    }
}
