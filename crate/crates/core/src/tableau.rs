//! Standard Young tableaux, row insertion and reverse extraction, and the
//! two directions of the bijection between star-tableaux (step sequences
//! from empty shape to empty shape) and k-noncrossing partial matchings.
//!
//! Entries increase strictly along rows and down columns. Insertion is
//! classical row bumping: the inserted value displaces the smallest larger
//! entry of row 1, which is inserted into row 2, and so on until a value
//! lands at the end of a row. [`YoungTableau::extract`] inverts this from a
//! chosen removable square, ejecting the unique value whose re-insertion
//! restores the original tableau.

use alloc::vec::Vec;
use core::fmt;

use crate::matching::PartialMatching;
use crate::shape::{Shape, Step};

/// A standard Young tableau with distinct positive entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct YoungTableau {
    rows: Vec<Vec<u32>>,
}

/// The entry is already present in the tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicateEntry {
    pub entry: u32,
}

impl fmt::Display for DuplicateEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry {} is already in the tableau", self.entry)
    }
}

/// Removing the last square of the requested row would break the shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidRemoval {
    pub row: usize,
}

impl fmt::Display for InvalidRemoval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no removable square at the end of row {}", self.row)
    }
}

impl YoungTableau {
    pub fn new() -> Self {
        YoungTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.rows.iter().map(|r| r.len() as u32).collect::<Vec<_>>())
            .expect("tableau rows are weakly decreasing")
    }

    /// Membership test by binary search within each (sorted) row.
    pub fn contains(&self, entry: u32) -> bool {
        self.rows.iter().any(|row| row.binary_search(&entry).is_ok())
    }

    /// RSK row insertion. Returns the 1-based row in which the new square
    /// appeared.
    pub fn insert(&mut self, entry: u32) -> Result<usize, DuplicateEntry> {
        if self.contains(entry) {
            return Err(DuplicateEntry { entry });
        }
        let mut value = entry;
        for r in 0..self.rows.len() {
            let row = &mut self.rows[r];
            // Smallest entry greater than `value`.
            let pos = row.partition_point(|&e| e < value);
            if pos == row.len() {
                row.push(value);
                return Ok(r + 1);
            }
            core::mem::swap(&mut value, &mut row[pos]);
        }
        self.rows.push(alloc::vec![value]);
        Ok(self.rows.len())
    }

    /// Reverse row insertion from the last square of the 1-based row `r`.
    /// Returns the ejected entry; re-inserting it restores the tableau.
    pub fn extract(&mut self, r: usize) -> Result<u32, InvalidRemoval> {
        let err = InvalidRemoval { row: r };
        if r == 0 || r > self.rows.len() {
            return Err(err);
        }
        let below = if r < self.rows.len() {
            self.rows[r].len()
        } else {
            0
        };
        if self.rows[r - 1].len() <= below {
            return Err(err);
        }
        let mut value = self.rows[r - 1].pop().expect("row is nonempty");
        if self.rows[r - 1].is_empty() {
            self.rows.pop();
        }
        for q in (0..r - 1).rev() {
            let row = &mut self.rows[q];
            // Largest entry smaller than `value`; rows above a removable
            // square always contain one.
            let pos = row.partition_point(|&e| e < value);
            debug_assert!(pos > 0, "reverse bump found no smaller entry");
            core::mem::swap(&mut value, &mut row[pos - 1]);
        }
        Ok(value)
    }

    /// Place `entry` at the end of the 1-based row `r`, creating the row if
    /// it directly extends the shape. Only valid when `entry` exceeds
    /// everything already stored, which is how the forward bijection fills
    /// squares.
    fn place_largest(&mut self, r: usize, entry: u32) {
        if r == self.rows.len() + 1 {
            self.rows.push(alloc::vec![entry]);
        } else {
            debug_assert!(r >= 1 && r <= self.rows.len());
            debug_assert!(self.rows[r - 1].last().is_none_or(|&e| e < entry));
            self.rows[r - 1].push(entry);
        }
    }

    /// Remove the square containing `entry`, which must be the largest
    /// entry of the tableau (and therefore sits at a removable corner).
    /// Returns the 1-based row it occupied.
    fn remove_largest(&mut self, entry: u32) -> usize {
        for r in 0..self.rows.len() {
            if self.rows[r].last() == Some(&entry) {
                debug_assert!(
                    r + 1 >= self.rows.len() || self.rows[r + 1].len() < self.rows[r].len()
                );
                self.rows[r].pop();
                if self.rows[r].is_empty() {
                    debug_assert_eq!(r, self.rows.len() - 1);
                    self.rows.pop();
                }
                return r + 1;
            }
        }
        unreachable!("entry {entry} is not the largest entry of the tableau");
    }
}

/// A star-tableau: a length-`n` step sequence whose running shape starts
/// empty, stays valid for the row bound `k`, and ends empty. The sequence
/// of shapes it traces is the path of the sampling process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarTableau {
    k: usize,
    steps: Vec<Step>,
}

/// Why a step sequence is not a star-tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarTableauError {
    /// The step at `index` (0-based) cannot be applied to the running shape.
    IllegalStep { index: usize },
    /// The final shape is not empty.
    EndsNonEmpty,
}

impl fmt::Display for StarTableauError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarTableauError::IllegalStep { index } => {
                write!(f, "step {index} is illegal on the running shape")
            }
            StarTableauError::EndsNonEmpty => f.write_str("path does not end at the empty shape"),
        }
    }
}

impl StarTableau {
    /// Validate a step sequence as a star-tableau for row bound `k`.
    pub fn from_steps(k: usize, steps: Vec<Step>) -> Result<Self, StarTableauError> {
        assert!(k >= 2);
        let mut shape = Shape::empty();
        for (index, &step) in steps.iter().enumerate() {
            shape = shape
                .apply(step, k)
                .map_err(|_| StarTableauError::IllegalStep { index })?;
        }
        if !shape.is_empty() {
            return Err(StarTableauError::EndsNonEmpty);
        }
        Ok(StarTableau { k, steps })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Length `n` of the underlying path (number of steps).
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// An oscillating tableau has no `Nothing` steps; it corresponds to a
    /// perfect matching.
    pub fn is_oscillating(&self) -> bool {
        self.steps.iter().all(|&s| s != Step::Nothing)
    }

    /// The `n + 1` shapes traced by the path, starting and ending empty.
    pub fn shape_sequence(&self) -> Vec<Shape> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut shape = Shape::empty();
        out.push(shape.clone());
        for &step in &self.steps {
            shape = shape.apply(step, self.k).expect("validated on construction");
            out.push(shape.clone());
        }
        out
    }
}

/// Forward direction of the bijection: scan the steps left to right,
/// filling a tableau. An `Add` square receives the position index; a
/// `Remove` square triggers [`YoungTableau::extract`], and the ejected
/// entry `j` records the arc `(j, i)`. `Nothing` steps are exactly the
/// isolated vertices, and the result is k-noncrossing for the tableau's
/// row bound.
pub fn tableau_to_matching(t: &StarTableau) -> PartialMatching {
    let n = t.len();
    let mut tab = YoungTableau::new();
    let mut arcs = Vec::new();
    for (i, &step) in t.steps().iter().enumerate() {
        let pos = (i + 1) as u32;
        match step {
            Step::Nothing => {}
            Step::Add(r) => tab.place_largest(r as usize, pos),
            Step::Remove(r) => {
                let j = tab
                    .extract(r as usize)
                    .expect("star-tableau steps are legal");
                arcs.push((j as usize, pos as usize));
            }
        }
    }
    debug_assert!(tab.is_empty());
    PartialMatching::new(n, arcs).expect("extraction yields disjoint arcs")
}

/// The matching needs `k` or more tableau rows, i.e. it contains a
/// k-crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBoundExceeded {
    pub k: usize,
}

impl fmt::Display for RowBoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matching is not {}-noncrossing: some intermediate shape needs {} rows",
            self.k, self.k
        )
    }
}

/// Backward direction of the bijection: scan positions `n` down to `1`,
/// RSK-inserting the origin `i` of every arc `(i, j)` when its endpoint
/// `j` is reached and removing the square containing `j` when a startpoint
/// `j` is reached. Each scan action, read backwards, is one step of the
/// star-tableau: an insertion that grew row `r` becomes `Remove(r)`, a
/// removal from row `r` becomes `Add(r)`, and isolated vertices become
/// `Nothing`.
pub fn matching_to_tableau(
    m: &PartialMatching,
    k: usize,
) -> Result<StarTableau, RowBoundExceeded> {
    assert!(k >= 2);
    let n = m.n();
    let mut partner = alloc::vec![0u32; n + 1];
    for &(i, j) in m.arcs() {
        partner[i] = j as u32;
        partner[j] = i as u32;
    }
    let mut tab = YoungTableau::new();
    let mut reversed = Vec::with_capacity(n);
    for p in (1..=n).rev() {
        let q = partner[p] as usize;
        if q == 0 {
            reversed.push(Step::Nothing);
        } else if q < p {
            // p is the endpoint of (q, p): insert the origin.
            let row = tab
                .insert(q as u32)
                .expect("arc origins are distinct");
            if tab.rows().len() > k - 1 {
                return Err(RowBoundExceeded { k });
            }
            reversed.push(Step::Remove(row as u8));
        } else {
            // p is the startpoint of (p, q): its entry is now the largest.
            let row = tab.remove_largest(p as u32);
            reversed.push(Step::Add(row as u8));
        }
    }
    debug_assert!(tab.is_empty());
    reversed.reverse();
    let steps = reversed;
    Ok(StarTableau::from_steps(k, steps).expect("scan emits a valid star-tableau"))
}
