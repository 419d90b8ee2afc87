//! Kohnert diagrams: skyline diagrams, Kohnert moves, the closure `KD(alpha)`
//! and the key polynomial as a sum of diagram weights.
//!
//! Rows are numbered `1..=n` from south to north and columns from 1, west to
//! east. Also home to the move scripts that exhibit a repeated weight for
//! every composition containing a KM pattern.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::compositions::{km_witness, WeakComposition, KM_PATTERNS};
use crate::error::{Error, Result};
use crate::polynomial::{ExponentVector, Polynomial};

/// A finite set of boxes `(row, column)`, stored as one bitset per row.
///
/// The number of words per row is fixed by the largest occupied column, which
/// Kohnert moves never change, so equal box sets have equal representations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Diagram {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Diagram {
    pub fn empty(n: usize) -> Self {
        Diagram { n, words: 0, bits: Vec::new() }
    }

    pub fn from_boxes(n: usize, boxes: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let boxes: Vec<_> = boxes.into_iter().collect();
        let max_col = boxes.iter().map(|&(_, c)| c).max().unwrap_or(0);
        let words = max_col.div_ceil(64);
        let mut d = Diagram { n, words, bits: vec![0; n * words] };
        for (r, c) in boxes {
            if r < 1 || r > n {
                return Err(Error::IndexOutOfRange { index: r, max: n });
            }
            if c < 1 {
                return Err(Error::InvalidArgument("columns start at 1".into()));
            }
            d.set(r, c, true);
        }
        Ok(d)
    }

    /// Number of rows `n`.
    pub fn rows(&self) -> usize {
        self.n
    }

    fn slot(&self, r: usize, c: usize) -> Option<(usize, u64)> {
        let w = (c - 1) / 64;
        (r >= 1 && r <= self.n && c >= 1 && w < self.words).then(|| ((r - 1) * self.words + w, 1u64 << ((c - 1) % 64)))
    }

    fn set(&mut self, r: usize, c: usize, on: bool) {
        let (i, mask) = self.slot(r, c).expect("cell inside the diagram frame");
        if on {
            self.bits[i] |= mask;
        } else {
            self.bits[i] &= !mask;
        }
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.slot(r, c).is_some_and(|(i, mask)| self.bits[i] & mask != 0)
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[(r - 1) * self.words..r * self.words]
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Column of the rightmost box in row `r`.
    pub fn rightmost(&self, r: usize) -> Option<usize> {
        self.row_words(r)
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + (64 - w.leading_zeros() as usize))
    }

    pub fn box_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn width(&self) -> usize {
        (1..=self.n).filter_map(|r| self.rightmost(r)).max().unwrap_or(0)
    }

    /// Boxes sorted by row, then column.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let width = self.words * 64;
        (1..=self.n).flat_map(|r| (1..=width).filter(move |&c| self.contains(r, c)).map(move |c| (r, c))).collect()
    }

    /// A row is initial if it is empty or occupies exactly columns `1..=j`.
    pub fn is_initial_row(&self, r: usize) -> bool {
        self.rightmost(r).is_none_or(|j| j == self.row_len(r))
    }
}

/// Renders rows north to south, `O` for a box and `.` for an empty cell.
impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.width().max(1);
        for r in (1..=self.n).rev() {
            let line: String = (1..=width).map(|c| if self.contains(r, c) { 'O' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `D(alpha)`: `alpha_i` left-justified boxes in row `i`.
pub fn skyline(alpha: &WeakComposition) -> Diagram {
    let boxes = (1..=alpha.len()).flat_map(|r| (1..=alpha.part(r) as usize).map(move |c| (r, c)));
    Diagram::from_boxes(alpha.len(), boxes).expect("skyline boxes are in range")
}

fn landing_row(d: &Diagram, r: usize, c: usize) -> Option<usize> {
    (1..r).rev().find(|&i| !d.contains(i, c))
}

/// Rightmost boxes of their rows that have a free cell somewhere below them.
pub fn movable_boxes(d: &Diagram) -> Vec<(usize, usize)> {
    (1..=d.rows())
        .filter_map(|r| d.rightmost(r).map(|c| (r, c)))
        .filter(|&(r, c)| landing_row(d, r, c).is_some())
        .collect()
}

/// Moves the box to the highest free cell below it in its column.
pub fn apply_kohnert_move(d: &Diagram, (row, column): (usize, usize)) -> Result<Diagram> {
    let not_movable = Error::NotMovable { row, column };
    if row < 1 || row > d.rows() || d.rightmost(row) != Some(column) {
        return Err(not_movable);
    }
    let target = landing_row(d, row, column).ok_or(not_movable)?;
    let mut out = d.clone();
    out.set(row, column, false);
    out.set(target, column, true);
    Ok(out)
}

/// `KD(alpha)` in breadth-first discovery order from the skyline.
pub fn kohnert_diagrams(alpha: &WeakComposition) -> Vec<Diagram> {
    let start = skyline(alpha);
    let mut seen = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for b in movable_boxes(&d) {
            let next = apply_kohnert_move(&d, b).expect("movable box");
            if seen.insert(next.clone()) {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order
}

/// Row counts of the diagram.
pub fn kohwt(d: &Diagram) -> ExponentVector {
    ExponentVector::new((1..=d.rows()).map(|r| d.row_len(r) as u32).collect::<Vec<_>>())
}

pub fn key_polynomial_kohnert(alpha: &WeakComposition) -> Polynomial {
    let mut p = Polynomial::zero(alpha.len());
    for d in kohnert_diagrams(alpha) {
        p.add_term(kohwt(&d), 1);
    }
    p
}

/// Moves the rightmost box of `from` straight down into row `to` by a chain of
/// Kohnert moves. Fails if some step is not a Kohnert move or the box would
/// land below `to`.
pub fn jump(d: &Diagram, from: usize, to: usize) -> Result<Diagram> {
    if from > d.rows() || to == 0 || to >= from {
        return Err(Error::InvalidArgument(format!("cannot drop from row {from} to row {to}")));
    }
    let column = d.rightmost(from).ok_or(Error::InvalidArgument(format!("row {from} is empty")))?;
    let mut current = d.clone();
    let mut row = from;
    while row != to {
        let next = landing_row(&current, row, column).ok_or(Error::NotMovable { row, column })?;
        if next < to {
            return Err(Error::InvalidArgument(format!("box in column {column} lands in row {next}, below row {to}")));
        }
        current = apply_kohnert_move(&current, (row, column))?;
        row = next;
    }
    Ok(current)
}

/// Two distinct Kohnert diagrams of equal weight, built from a KM pattern
/// occurrence in `alpha`.
#[derive(Clone, Debug)]
pub struct NecessityWitness {
    pub pattern: WeakComposition,
    pub positions: Vec<usize>,
    pub first: Diagram,
    pub second: Diagram,
}

impl Serialize for NecessityWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NecessityWitness", 4)?;
        st.serialize_field("pattern", &self.pattern)?;
        st.serialize_field("positions", &self.positions)?;
        st.serialize_field("first", &self.first.boxes())?;
        st.serialize_field("second", &self.second.boxes())?;
        st.end()
    }
}

/// Runs the move script for the KM pattern `pattern` (an entry of
/// [`KM_PATTERNS`]) occurring at rows `positions` of `alpha`.
pub fn necessity_pair(
    alpha: &WeakComposition,
    pattern: &WeakComposition,
    positions: &[usize],
) -> Result<(Diagram, Diagram)> {
    let start = skyline(alpha);
    let case = KM_PATTERNS
        .iter()
        .position(|p| *p == pattern.parts())
        .ok_or_else(|| Error::InvalidArgument(format!("{pattern} is not a KM pattern")))?;
    if positions.len() != pattern.len() || positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("positions must be increasing and match the pattern".into()));
    }
    match (case, positions) {
        // (0,1,2): drop the top box straight to the bottom row, or in two hops
        (0, &[a, b, c]) => {
            let first = jump(&start, c, a)?;
            let second = jump(&jump(&start, b, a)?, c, b)?;
            Ok((first, second))
        }
        // (0,0,2,1) and (1,0,3,2): the two tall rows drop into the two short
        // rows in either order
        (2 | 3, &[a, b, c, d]) => {
            let first = jump(&jump(&start, d, a)?, c, b)?;
            let second = jump(&jump(&start, c, a)?, d, b)?;
            Ok((first, second))
        }
        // (0,0,2,2) and (1,0,2,2): lower row c first, then the (0,1,2) script
        // on rows b < c < d
        (1 | 4, &[a, b, c, d]) => {
            let base = jump(&start, c, a)?;
            let first = jump(&base, d, b)?;
            let second = jump(&jump(&base, c, b)?, d, c)?;
            Ok((first, second))
        }
        _ => unreachable!("pattern lengths are fixed"),
    }
}

/// The witness pair for the first KM occurrence in `alpha`, or `None` when
/// `alpha` avoids every KM pattern.
pub fn necessity_witness(alpha: &WeakComposition) -> Option<Result<NecessityWitness>> {
    let w = km_witness(alpha)?;
    Some(necessity_pair(alpha, &w.pattern, &w.positions).map(|(first, second)| NecessityWitness {
        pattern: w.pattern,
        positions: w.positions,
        first,
        second,
    }))
}
