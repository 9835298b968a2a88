//! Ferrers shapes with a bounded number of rows and the legal moves between
//! them.
//!
//! A [`Shape`] stores weakly decreasing row lengths without trailing zeros;
//! the row bound `k - 1` is contextual and passed to the operations. A
//! [`Step`] adds a square, removes a square, or does nothing; squares always
//! enter and leave at the end of a row, which is the only position that
//! keeps the row lengths weakly decreasing. [`ShapeIndex`] enumerates every
//! shape up to a size budget in breadth-first order and precomputes the
//! successor graph, so that count tables and samplers can work on dense
//! integer indices.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A Ferrers shape: weakly decreasing row lengths, top to bottom, with no
/// trailing zero rows stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Shape {
    rows: Vec<u32>,
}

/// One move of the shape process. Row indices are 1-based and must be at
/// most `k - 1` for the row bound in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// Keep the shape unchanged.
    Nothing,
    /// Add one square at the end of the given row.
    Add(u8),
    /// Remove the last square of the given row.
    Remove(u8),
}

/// Lattice point of the walk picture: `coords[s] = (k - s) + rows[s]` with
/// rows padded by zeros, so a valid shape maps to strictly decreasing
/// positive coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylPoint {
    coords: Vec<u32>,
}

impl WeylPoint {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// True iff the coordinates are strictly decreasing and positive.
    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] > w[1])
            && self.coords.last().map_or(true, |&c| c > 0)
    }
}

/// Rejected input rows for [`Shape::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidShape;

impl fmt::Display for InvalidShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("row lengths must be weakly decreasing")
    }
}

/// A step that cannot be applied to the given shape under the row bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidStep {
    pub step: Step,
}

impl fmt::Display for InvalidStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {:?} is not legal on this shape", self.step)
    }
}

impl Shape {
    /// The empty shape, the unique shape with no rows.
    pub const fn empty() -> Self {
        Shape { rows: Vec::new() }
    }

    /// Build a shape from row lengths. Trailing zeros are trimmed; interior
    /// increases are rejected.
    pub fn new(rows: impl Into<Vec<u32>>) -> Result<Self, InvalidShape> {
        let mut rows = rows.into();
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(InvalidShape);
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(Shape { rows })
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Length of the 1-based row `r`, zero beyond the stored rows.
    pub fn row_len(&self, r: usize) -> u32 {
        if r >= 1 {
            self.rows.get(r - 1).copied().unwrap_or(0)
        } else {
            0
        }
    }

    /// Total number of squares.
    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// True iff the shape respects the row bound for the given `k`.
    pub fn fits(&self, k: usize) -> bool {
        k >= 2 && self.rows.len() <= k - 1
    }

    /// Apply one step, returning the resulting shape.
    ///
    /// Fails if the step references a row outside `1..=k-1`, breaks weak
    /// decrease, or removes from an empty row.
    pub fn apply(&self, step: Step, k: usize) -> Result<Shape, InvalidStep> {
        let err = || InvalidStep { step };
        match step {
            Step::Nothing => Ok(self.clone()),
            Step::Add(r) => {
                let r = r as usize;
                if r == 0 || r > k - 1 {
                    return Err(err());
                }
                let mut rows = self.rows.clone();
                if r <= rows.len() {
                    rows[r - 1] += 1;
                    if r >= 2 && rows[r - 2] < rows[r - 1] {
                        return Err(err());
                    }
                } else if r == rows.len() + 1 {
                    rows.push(1);
                } else {
                    return Err(err());
                }
                Ok(Shape { rows })
            }
            Step::Remove(r) => {
                let r = r as usize;
                if r == 0 || r > self.rows.len() || r > k - 1 {
                    return Err(err());
                }
                let mut rows = self.rows.clone();
                rows[r - 1] -= 1;
                let below = if r < rows.len() { rows[r] } else { 0 };
                if rows[r - 1] < below {
                    return Err(err());
                }
                if rows[r - 1] == 0 {
                    rows.pop();
                }
                Ok(Shape { rows })
            }
        }
    }

    /// All legal `(step, shape)` pairs in canonical order: `Nothing` first
    /// (when allowed), then `Add(1)..Add(k-1)`, then `Remove(1)..Remove(k-1)`,
    /// skipping illegal steps. The order is fixed so that seeded sampling is
    /// reproducible.
    pub fn successors(&self, k: usize, allow_nothing: bool) -> Vec<(Step, Shape)> {
        let mut out = Vec::with_capacity(2 * (k - 1) + 1);
        if allow_nothing {
            out.push((Step::Nothing, self.clone()));
        }
        for r in 1..k {
            let step = Step::Add(r as u8);
            if let Ok(next) = self.apply(step, k) {
                out.push((step, next));
            }
        }
        for r in 1..k {
            let step = Step::Remove(r as u8);
            if let Ok(next) = self.apply(step, k) {
                out.push((step, next));
            }
        }
        out
    }

    /// The shifted lattice point of the walk picture for row bound `k`.
    pub fn weyl_point(&self, k: usize) -> WeylPoint {
        debug_assert!(k >= 2);
        let coords = (1..k)
            .map(|s| (k - s) as u32 + self.row_len(s))
            .collect();
        WeylPoint { coords }
    }
}

impl fmt::Display for Shape {
    /// Bracketed row lengths, e.g. `[2,1]`; the empty shape prints `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense indexing of every shape with at most `k - 1` rows and at most
/// `max_size` squares, in breadth-first order from the empty shape (so
/// indices are grouped by size and the empty shape is index 0), together
/// with the precomputed successor graph in canonical step order.
pub struct ShapeIndex {
    k: usize,
    max_size: u32,
    shapes: Vec<Shape>,
    sizes: Vec<u32>,
    index: BTreeMap<Shape, usize>,
    size_start: Vec<usize>,
    successors: Vec<Vec<(Step, Option<u32>)>>,
}

impl ShapeIndex {
    /// Enumerate all shapes for `k` with size at most `max_size`.
    pub fn new(k: usize, max_size: u32) -> Self {
        assert!(k >= 2, "row bound parameter k must be at least 2");
        let mut shapes = vec![Shape::empty()];
        let mut index = BTreeMap::new();
        index.insert(Shape::empty(), 0);
        let mut size_start = vec![0usize];
        let mut level_begin = 0;
        for _size in 1..=max_size {
            let level_end = shapes.len();
            size_start.push(level_end);
            for i in level_begin..level_end {
                let shape = shapes[i].clone();
                for r in 1..k {
                    if let Ok(next) = shape.apply(Step::Add(r as u8), k) {
                        if !index.contains_key(&next) {
                            index.insert(next.clone(), shapes.len());
                            shapes.push(next);
                        }
                    }
                }
            }
            level_begin = level_end;
        }
        size_start.push(shapes.len());

        let successors = shapes
            .iter()
            .map(|shape| {
                let mut list = Vec::new();
                for (step, next) in shape.successors(k, true) {
                    let idx = index.get(&next).map(|&i| i as u32);
                    debug_assert!(idx.is_some() || next.size() > max_size);
                    list.push((step, idx));
                }
                list
            })
            .collect();
        let sizes = shapes.iter().map(Shape::size).collect();

        ShapeIndex {
            k,
            max_size,
            shapes,
            sizes,
            index,
            size_start,
            successors,
        }
    }

    /// Total squares of the shape at `idx`, from a dense cache.
    pub fn size_of(&self, idx: usize) -> u32 {
        self.sizes[idx]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn max_size(&self) -> u32 {
        self.max_size
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shape(&self, idx: usize) -> &Shape {
        &self.shapes[idx]
    }

    /// Dense index of a shape, if it is within the size budget.
    pub fn index_of(&self, shape: &Shape) -> Option<usize> {
        self.index.get(shape).copied()
    }

    /// Number of shapes of size at most `size`; since indices are grouped
    /// by size this is also the exclusive upper index bound.
    pub fn count_up_to_size(&self, size: u32) -> usize {
        let s = (size.min(self.max_size) + 1) as usize;
        self.size_start[s]
    }

    /// Successor list of a shape in canonical order. `Nothing` is always
    /// present (first); targets that would exceed the size budget carry
    /// `None`.
    pub fn successors(&self, idx: usize) -> &[(Step, Option<u32>)] {
        &self.successors[idx]
    }
}
