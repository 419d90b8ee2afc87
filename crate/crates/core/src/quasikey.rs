//! Quasi-key tableaux, quasi-key polynomials, and the expansion of a key
//! polynomial as a sum of quasi-key polynomials over `Qlswap(alpha)`.

use std::fmt;

use serde::Serialize;

use crate::compositions::{qlswap, WeakComposition};
use crate::error::{Error, Result};
use crate::polynomial::{ExponentVector, Polynomial};

/// A filling of the skyline diagram of `shape`; `rows[r - 1][c - 1]` is the
/// entry in row `r`, column `c`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct QuasiKeyTableau {
    shape: WeakComposition,
    rows: Vec<Vec<u32>>,
}

/// The rule a filling breaks, with the offending cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QktViolation {
    Shape,
    /// Rows must weakly decrease and stay at most the row index.
    Qkt1 {
        row: usize,
        column: usize,
    },
    /// Columns distinct; first column strictly increasing upward.
    Qkt2 {
        row: usize,
        column: usize,
    },
    /// A smaller entry above a larger one needs a larger-than-it entry right of
    /// the larger one.
    Qkt3 {
        row: usize,
        column: usize,
    },
    Qkt4 {
        row: usize,
        column: usize,
    },
}

impl QuasiKeyTableau {
    /// Validates the filling against all four rules.
    pub fn new(shape: WeakComposition, rows: Vec<Vec<u32>>) -> std::result::Result<Self, QktViolation> {
        check_qkt(&shape, &rows)?;
        Ok(QuasiKeyTableau { shape, rows })
    }

    /// The filling with every entry of row `b` equal to `b`.
    pub fn super_tableau(shape: &WeakComposition) -> Self {
        let rows = (1..=shape.len()).map(|r| vec![r as u32; shape.part(r) as usize]).collect();
        QuasiKeyTableau { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &WeakComposition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at `(row, column)`, 1-based, if that box exists.
    pub fn entry(&self, row: usize, column: usize) -> Option<u32> {
        self.rows.get(row.checked_sub(1)?)?.get(column.checked_sub(1)?).copied()
    }

    /// Entries in column-major order, each column read bottom to top.
    pub fn reading_word(&self) -> Vec<u32> {
        let width = self.shape.max_part() as usize;
        (1..=width).flat_map(|c| (1..=self.shape.len()).filter_map(move |r| self.entry(r, c))).collect()
    }
}

/// Rows north to south, entries separated by spaces; an empty row prints `.`.
impl fmt::Display for QuasiKeyTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows.iter().rev() {
            if row.is_empty() {
                writeln!(f, ".")?;
            } else {
                let line: Vec<String> = row.iter().map(u32::to_string).collect();
                writeln!(f, "{}", line.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Checks QKT1-QKT4 directly from their statements.
pub fn check_qkt(shape: &WeakComposition, rows: &[Vec<u32>]) -> std::result::Result<(), QktViolation> {
    let n = shape.len();
    if rows.len() != n || (1..=n).any(|r| rows[r - 1].len() != shape.part(r) as usize) {
        return Err(QktViolation::Shape);
    }
    let at = |r: usize, c: usize| -> Option<u32> { rows.get(r - 1)?.get(c.checked_sub(1)?).copied() };
    for r in 1..=n {
        for c in 1..=rows[r - 1].len() {
            let v = rows[r - 1][c - 1];
            if v == 0 || v as usize > r || (c > 1 && v > rows[r - 1][c - 2]) {
                return Err(QktViolation::Qkt1 { row: r, column: c });
            }
        }
    }
    let width = shape.max_part() as usize;
    for c in 1..=width {
        for r in 1..=n {
            let Some(k) = at(r, c) else { continue };
            for r2 in r + 1..=n {
                let Some(i) = at(r2, c) else { continue };
                if i == k || (c == 1 && i < k) {
                    return Err(QktViolation::Qkt2 { row: r2, column: c });
                }
                // i above k with i < k
                if i < k && !at(r, c + 1).is_some_and(|j| i < j) {
                    return Err(QktViolation::Qkt3 { row: r, column: c });
                }
            }
        }
    }
    for r in 1..=n {
        for s in r + 1..=n {
            if shape.part(r) >= shape.part(s) {
                continue;
            }
            for c in 1..=width {
                if let (Some(low), Some(high)) = (at(r, c), at(s, c + 1)) {
                    if low >= high {
                        return Err(QktViolation::Qkt4 { row: s, column: c + 1 });
                    }
                }
            }
        }
    }
    Ok(())
}

struct Filler<'a, F: FnMut(&[Vec<u32>])> {
    shape: &'a [u32],
    /// cells in fill order: column-major, bottom to top
    cells: Vec<(usize, usize)>,
    rows: Vec<Vec<u32>>,
    visit: F,
}

impl<F: FnMut(&[Vec<u32>])> Filler<'_, F> {
    fn fill(&mut self, k: usize) {
        let Some(&(r, c)) = self.cells.get(k) else {
            (self.visit)(&self.rows);
            return;
        };
        let shape = self.shape;
        let upper = if c == 0 { r as u32 + 1 } else { self.rows[r][c - 1] };
        let mut lower = 1;
        if c == 0 {
            // strictly above every lower first-column entry
            if let Some(below) = (0..r).rev().find(|&q| shape[q] > 0) {
                lower = self.rows[below][0] + 1;
            }
        } else {
            for q in 0..r {
                // QKT4 with (q, c-1) below-left of (r, c)
                if shape[q] < shape[r] && shape[q] as usize >= c {
                    lower = lower.max(self.rows[q][c - 1] + 1);
                }
            }
            for (up, &len) in shape.iter().enumerate().skip(r + 1) {
                // QKT3: a smaller entry above (r, c-1) forces this entry past it
                if len as usize >= c && self.rows[up][c - 1] < self.rows[r][c - 1] {
                    lower = lower.max(self.rows[up][c - 1] + 1);
                }
            }
        }
        for v in lower..=upper {
            let clash = (0..r).any(|q| shape[q] as usize > c && self.rows[q][c] == v);
            if clash {
                continue;
            }
            // QKT3 with this entry on top: each larger entry below needs a box to its right
            let needs_room = (0..r).any(|q| shape[q] as usize > c && self.rows[q][c] > v && shape[q] as usize <= c + 1);
            if needs_room {
                continue;
            }
            self.rows[r][c] = v;
            self.fill(k + 1);
        }
        self.rows[r][c] = 0;
    }
}

/// Calls `visit` on every quasi-key tableau of shape `alpha`, in
/// lexicographic order of reading words.
pub fn for_each_qkt(alpha: &WeakComposition, visit: impl FnMut(&[Vec<u32>])) {
    let shape = alpha.parts();
    let width = alpha.max_part() as usize;
    // 0-based (row, column) pairs
    let cells = (0..width)
        .flat_map(|c| (0..shape.len()).filter(move |&r| shape[r] as usize > c).map(move |r| (r, c)))
        .collect();
    let rows = shape.iter().map(|&p| vec![0; p as usize]).collect();
    let mut filler = Filler { shape, cells, rows, visit };
    filler.fill(0);
}

/// `qKT(alpha)` in canonical order.
pub fn enumerate_qkt(alpha: &WeakComposition) -> Vec<QuasiKeyTableau> {
    let mut out = Vec::new();
    for_each_qkt(alpha, |rows| out.push(QuasiKeyTableau { shape: alpha.clone(), rows: rows.to_vec() }));
    out
}

fn weight_of_rows(n: usize, rows: &[Vec<u32>]) -> ExponentVector {
    let mut w = vec![0u32; n];
    for &v in rows.iter().flatten() {
        w[v as usize - 1] += 1;
    }
    ExponentVector::new(w)
}

/// Multiplicity of each entry value `1..=n`.
pub fn weight_of(t: &QuasiKeyTableau) -> ExponentVector {
    weight_of_rows(t.shape.len(), &t.rows)
}

/// Number of boxes above row `b` holding an entry at most `b`.
pub fn count_low_entries_above(t: &QuasiKeyTableau, b: usize) -> Result<usize> {
    let n = t.shape.len();
    if b < 1 || b > n {
        return Err(Error::IndexOutOfRange { index: b, max: n });
    }
    Ok(t.rows[b..].iter().flatten().filter(|&&v| v as usize <= b).count())
}

pub fn quasi_key_polynomial(alpha: &WeakComposition) -> Polynomial {
    let n = alpha.len();
    let mut p = Polynomial::zero(n);
    for_each_qkt(alpha, |rows| p.add_term(weight_of_rows(n, rows), 1));
    p
}

/// `kappa_alpha` as the sum of quasi-key polynomials over `Qlswap(alpha)`.
pub fn key_polynomial_quasikey(alpha: &WeakComposition) -> Polynomial {
    let mut p = Polynomial::zero(alpha.len());
    for beta in qlswap(alpha) {
        p.add_assign(&quasi_key_polynomial(&beta));
    }
    p
}
