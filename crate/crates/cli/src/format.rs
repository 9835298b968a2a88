//! Wire formats for sampled objects.
//!
//! Arc-list format, one object per line: `<n> | i1-j1 i2-j2 ...` with arcs
//! sorted by first endpoint; an empty matching prints as `<n> |`. The
//! format is lossless and diff-friendly, and [`parse_arcs_line`] inverts it
//! exactly.
//!
//! Bracket format renders each vertex as one character: `.` for isolated
//! vertices and a matched bracket pair per arc. Arcs are greedily assigned
//! to the first page (bracket alphabet) whose arcs they do not cross; an
//! object needing more than the four available pages has no bracket form
//! and callers fall back to the arc list.

use std::fmt;

use knc::matching::PartialMatching;
use knc::oracle::ObjectKind;

/// Bracket alphabets, one per page.
pub const PAGES: [(char, char); 4] = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')];

/// One emitted sample with its provenance.
pub struct OutputRecord {
    pub k: usize,
    pub n: usize,
    pub class: ObjectKind,
    pub seed: u64,
    pub ordinal: u64,
    pub matching: PartialMatching,
}

pub fn arcs_line(m: &PartialMatching) -> String {
    let mut line = format!("{} |", m.n());
    for &(i, j) in m.arcs() {
        line.push_str(&format!(" {i}-{j}"));
    }
    line
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed arc-list line: {}", self.0)
    }
}

pub fn parse_arcs_line(line: &str) -> Result<PartialMatching, ParseError> {
    let err = |msg: &str| ParseError(format!("{msg} in {line:?}"));
    let (head, tail) = line
        .split_once('|')
        .ok_or_else(|| err("missing '|' separator"))?;
    let n: usize = head
        .trim()
        .parse()
        .map_err(|_| err("bad vertex count"))?;
    let mut arcs = Vec::new();
    for token in tail.split_whitespace() {
        let (a, b) = token
            .split_once('-')
            .ok_or_else(|| err("bad arc token"))?;
        let i: usize = a.parse().map_err(|_| err("bad arc endpoint"))?;
        let j: usize = b.parse().map_err(|_| err("bad arc endpoint"))?;
        arcs.push((i, j));
    }
    PartialMatching::new(n, arcs).map_err(|e| err(&e.to_string()))
}

fn arcs_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// Greedy page assignment: each arc joins the first page it does not cross.
/// Returns one page index per arc, or `None` if more than `PAGES.len()`
/// pages would be needed.
pub fn page_assignment(m: &PartialMatching) -> Option<Vec<usize>> {
    let mut pages: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut assignment = Vec::with_capacity(m.arc_count());
    for &arc in m.arcs() {
        let page = pages
            .iter()
            .position(|page| page.iter().all(|&other| !arcs_cross(arc, other)));
        let page = match page {
            Some(p) => p,
            None if pages.len() < PAGES.len() => {
                pages.push(Vec::new());
                pages.len() - 1
            }
            None => return None,
        };
        pages[page].push(arc);
        assignment.push(page);
    }
    Some(assignment)
}

/// Bracket string of length `n`, or `None` when the crossing structure
/// needs more than four pages.
pub fn bracket_line(m: &PartialMatching) -> Option<String> {
    let assignment = page_assignment(m)?;
    let mut chars = vec!['.'; m.n()];
    for (&(i, j), &page) in m.arcs().iter().zip(&assignment) {
        chars[i - 1] = PAGES[page].0;
        chars[j - 1] = PAGES[page].1;
    }
    Some(chars.into_iter().collect())
}

/// The line for a record in the requested format. Falls back from brackets
/// to the arc list (with a note on stderr) rather than emitting anything
/// ambiguous.
pub fn render(record: &OutputRecord, brackets: bool) -> String {
    if brackets {
        match bracket_line(&record.matching) {
            Some(line) => return line,
            None => eprintln!(
                "note: sample {} needs more than {} bracket pages; falling back to arc list",
                record.ordinal,
                PAGES.len()
            ),
        }
    }
    arcs_line(&record.matching)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(n: usize, arcs: &[(usize, usize)]) -> PartialMatching {
        PartialMatching::new(n, arcs.to_vec()).unwrap()
    }

    #[test]
    fn arc_list_roundtrip() {
        for m in [
            pm(0, &[]),
            pm(2, &[]),
            pm(2, &[(1, 2)]),
            pm(12, &[(1, 5), (2, 9), (3, 7), (6, 12)]),
        ] {
            assert_eq!(parse_arcs_line(&arcs_line(&m)).unwrap(), m);
        }
        assert_eq!(arcs_line(&pm(2, &[])), "2 |");
        assert_eq!(arcs_line(&pm(2, &[(1, 2)])), "2 | 1-2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_arcs_line("4").is_err());
        assert!(parse_arcs_line("x | 1-2").is_err());
        assert!(parse_arcs_line("4 | 1").is_err());
        assert!(parse_arcs_line("4 | 1-9").is_err());
        assert!(parse_arcs_line("4 | 1-2 2-3").is_err());
    }

    #[test]
    fn brackets_render_pages() {
        assert_eq!(bracket_line(&pm(3, &[])).unwrap(), "...");
        assert_eq!(bracket_line(&pm(4, &[(1, 3), (2, 4)])).unwrap(), "([)]");
        assert_eq!(bracket_line(&pm(4, &[(1, 4), (2, 3)])).unwrap(), "(())");
        assert_eq!(bracket_line(&pm(5, &[(1, 3), (4, 5)])).unwrap(), "(.)()");
    }

    #[test]
    fn brackets_fall_back_beyond_four_pages() {
        // Five mutually crossing arcs need five pages.
        let m = pm(10, &[(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]);
        assert_eq!(page_assignment(&m), None);
        assert_eq!(bracket_line(&m), None);
        let four = pm(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]);
        assert_eq!(bracket_line(&four).unwrap(), "([{<)]}>");
    }
}
