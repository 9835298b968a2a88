//! Exact counting and exactly uniform random generation of k-noncrossing
//! partial matchings, perfect matchings, and RNA pseudoknot structures
//! (k-noncrossing partial matchings without 1-arcs).
//!
//! The machinery works on sequences of Ferrers shapes with at most `k - 1`
//! rows. A partial matching on `[n]` corresponds to a length-`n` sequence of
//! shapes that starts and ends empty and changes by at most one square per
//! step; crossings of the matching translate into row count of the shapes.
//! Counting walks of that kind with exact big-integer dynamic programming
//! gives both the class cardinalities and the transition weights of a
//! stochastic process whose paths are uniform over the class.
//!
//! Module map:
//!
//! * [`shape`] — Ferrers shapes, steps between them, dense shape indexing.
//! * [`tableau`] — Young tableaux, row insertion/extraction, and the
//!   bijection between step sequences and partial matchings.
//! * [`matching`] — the sampled objects.
//! * [`counting`] — exact count tables plus closed-form cross-checks.
//! * [`sampler`] — seedable randomness and the three generation processes.
//! * [`oracle`] — brute-force enumeration and crossing predicates, the
//!   ground truth for everything else at small `n`.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the command
//! line front end live in the companion `knc-cli` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod counting;
pub mod matching;
pub mod oracle;
pub mod sampler;
pub mod shape;
pub mod tableau;

pub use counting::{CountTable, MemoryFlag, PascalTable, TableClass, TableScope};
pub use matching::PartialMatching;
pub use oracle::{DiagramClass, ObjectKind};
pub use sampler::{RandomSource, SampledPath, Xoshiro256};
pub use shape::{Shape, ShapeIndex, Step};
pub use tableau::{StarTableau, YoungTableau};
