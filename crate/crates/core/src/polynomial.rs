//! Sparse polynomials in a fixed number of variables with exact `i64`
//! coefficients. Every coefficient operation is overflow-checked and panics on
//! overflow: a wrapped coefficient would silently corrupt multiplicity checks.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coeff = i64;

/// Exponents of `x_1^{e_1} ... x_n^{e_n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        ExponentVector(exponents.into())
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// `x_1 x_2 ... x_n`.
    pub fn all_ones(n: usize) -> Self {
        ExponentVector(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    fn shifted_by(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b).expect("exponent overflow")).collect(),
        )
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

/// One serialized term.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coeff: Coeff,
}

/// A polynomial in `Z[x_1, ..., x_n]`. Terms are kept in lexicographic order
/// of exponent vectors and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Coeff>,
}

fn checked_sum(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow")
}

fn checked_product(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow")
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(ExponentVector::zero(nvars), 1)
    }

    pub fn monomial(exponents: ExponentVector, coeff: Coeff) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        if coeff != 0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// The variable `x_i` (1-based) in `nvars` variables.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(ExponentVector(e), 1)
    }

    /// Builds a polynomial from records, combining repeated exponents.
    pub fn from_records(nvars: usize, records: impl IntoIterator<Item = TermRecord>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for r in records {
            if r.exponents.len() != nvars {
                return Err(Error::LengthMismatch { left: nvars, right: r.exponents.len() });
            }
            p.add_term(ExponentVector(r.exponents), r.coeff);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, Coeff)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms().map(|(e, c)| TermRecord { exponents: e.0.clone(), coeff: c }).collect()
    }

    /// Adds `coeff * x^exponents` in place.
    pub fn add_term(&mut self, exponents: ExponentVector, coeff: Coeff) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length differs from variable count");
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = checked_sum(*o.get(), coeff);
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        Ok(out)
    }

    pub(crate) fn add_assign(&mut self, other: &Polynomial) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (e, c) in other.terms() {
            self.add_term(e.clone(), c);
        }
    }

    /// `c * x^m * self`.
    pub fn mul_monomial(&self, m: &ExponentVector, c: Coeff) -> Result<Polynomial> {
        if m.len() != self.nvars {
            return Err(Error::LengthMismatch { left: self.nvars, right: m.len() });
        }
        let mut out = Polynomial::zero(self.nvars);
        if c == 0 {
            return Ok(out);
        }
        for (e, k) in self.terms() {
            out.terms.insert(e.shifted_by(m), checked_product(k, c));
        }
        Ok(out)
    }

    /// Multiplies by `x_j - x_{j+1}`.
    pub fn mul_linear(&self, j: usize) -> Result<Polynomial> {
        self.check_adjacent(j)?;
        let mut up = vec![0; self.nvars];
        up[j - 1] = 1;
        let mut down = vec![0; self.nvars];
        down[j] = 1;
        let mut out = self.mul_monomial(&ExponentVector(up), 1)?;
        out.add_assign(&self.mul_monomial(&ExponentVector(down), -1)?);
        Ok(out)
    }

    pub fn coefficient(&self, gamma: &ExponentVector) -> Coeff {
        self.terms.get(gamma).copied().unwrap_or(0)
    }

    pub fn max_abs_coefficient(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    /// Every coefficient lies in `{0, 1}`.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(|&c| c == 1)
    }

    /// `s_j f`: exchanges `x_j` and `x_{j+1}`.
    pub fn swap_variables(&self, j: usize) -> Result<Polynomial> {
        self.check_adjacent(j)?;
        let terms = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e.0.swap(j - 1, j);
                (e, c)
            })
            .collect();
        Ok(Polynomial { nvars: self.nvars, terms })
    }

    pub(crate) fn check_adjacent(&self, j: usize) -> Result<()> {
        if j == 0 || j >= self.nvars {
            return Err(Error::IndexOutOfRange { index: j, max: self.nvars.saturating_sub(1) });
        }
        Ok(())
    }

    /// Exact quotient by `x_j - x_{j+1}`.
    ///
    /// Terms are grouped by the exponents of the other variables and by
    /// `d = e_j + e_{j+1}`. In each group `sum_a c_a x^a y^(d-a)` the quotient
    /// has coefficient `q_a = sum_{t > a} c_t` on `x^a y^(d-1-a)`, which is
    /// the telescoping identity `(x^a - y^a)/(x - y) = sum x^(a-1-t) y^t`
    /// applied term by term. Panics if any group's coefficients do not sum to
    /// zero, i.e. the division is not exact.
    pub fn exact_divide_linear(&self, j: usize) -> Result<Polynomial> {
        self.check_adjacent(j)?;
        let (x, y) = (j - 1, j);
        // (other exponents with x,y slots zeroed, d) -> [(a, c_a)]
        let mut groups: BTreeMap<(ExponentVector, u32), Vec<(u32, Coeff)>> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            let (a, b) = (rest.0[x], rest.0[y]);
            rest.0[x] = 0;
            rest.0[y] = 0;
            groups.entry((rest, a + b)).or_default().push((a, c));
        }
        let mut out = Polynomial::zero(self.nvars);
        for ((rest, d), mut run) in groups {
            run.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
            let mut suffix: Coeff = 0;
            let mut iter = run.into_iter().peekable();
            // walk a = d-1 down to 0, accumulating c_t for t > a
            let mut a = d;
            while a > 0 {
                while let Some(&(t, c)) = iter.peek() {
                    if t >= a {
                        suffix = checked_sum(suffix, c);
                        iter.next();
                    } else {
                        break;
                    }
                }
                a -= 1;
                if suffix != 0 {
                    let mut e = rest.clone();
                    e.0[x] = a;
                    e.0[y] = d - 1 - a;
                    out.add_term(e, suffix);
                }
                if iter.peek().is_none() && suffix == 0 {
                    break;
                }
            }
            let remainder = iter.fold(suffix, |acc, (_, c)| checked_sum(acc, c));
            assert!(remainder == 0, "inexact division by x_{} - x_{}: nonzero remainder {remainder}", j, j + 1);
        }
        Ok(out)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms().map(|(e, c)| TermRecord { exponents: e.0.clone(), coeff: c }))
    }
}

fn render_term(e: &ExponentVector, c: Coeff) -> String {
    let vars: Vec<String> =
        e.0.iter().enumerate().filter(|(_, &p)| p > 0).map(|(i, p)| format!("x{}^{}", i + 1, p)).collect();
    if vars.is_empty() {
        format!("{c} * 1")
    } else {
        format!("{c} * {}", vars.join(" "))
    }
}

impl Polynomial {
    /// One `c * x1^e1 x2^e2 ...` line per term, largest exponent vector
    /// first. Zero exponents are omitted.
    pub fn plain_lines(&self) -> Vec<String> {
        self.terms.iter().rev().map(|(e, &c)| render_term(e, c)).collect()
    }
}

/// The terms of [`Polynomial::plain_lines`] joined by ` + `; the zero
/// polynomial renders as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.plain_lines().join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, terms: &[(&[u32], Coeff)]) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            p.add_term(ExponentVector(e.to_vec()), *c);
        }
        p
    }

    #[test]
    fn add_examples() {
        let x1 = Polynomial::variable(2, 1);
        let x2 = Polynomial::variable(2, 2);
        assert_eq!(x1.add(&x2).unwrap(), poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(x1.add(&Polynomial::zero(2)).unwrap(), x1);
        let m = poly(2, &[(&[1, 1], 1)]);
        assert!(m.add(&m.mul_monomial(&ExponentVector::zero(2), -1).unwrap()).unwrap().is_zero());
        assert!(x1.add(&Polynomial::zero(3)).is_err());
    }

    #[test]
    fn mul_monomial_examples() {
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let shifted = p.mul_monomial(&ExponentVector::from([1, 1]), 1).unwrap();
        assert_eq!(shifted, poly(2, &[(&[2, 1], 1), (&[1, 2], 1)]));
        assert_eq!(p.mul_monomial(&ExponentVector::zero(2), 1).unwrap(), p);
        assert!(Polynomial::zero(2).mul_monomial(&ExponentVector::from([3, 1]), 5).unwrap().is_zero());
    }

    #[test]
    fn coefficient_queries() {
        let p = poly(3, &[(&[0, 1, 1], 1), (&[1, 0, 1], 2)]);
        assert_eq!(p.coefficient(&ExponentVector::from([1, 0, 1])), 2);
        assert_eq!(p.coefficient(&ExponentVector::from([1, 1, 0])), 0);
        assert_eq!(p.max_abs_coefficient(), 2);
        assert!(!p.is_multiplicity_free());
        assert_eq!(Polynomial::zero(3).max_abs_coefficient(), 0);
        assert!(Polynomial::zero(3).is_multiplicity_free());
        assert!(!poly(1, &[(&[1], -1)]).is_multiplicity_free());
        assert_eq!(poly(1, &[(&[1], -3)]).max_abs_coefficient(), 3);
    }

    #[test]
    fn division_examples() {
        let sq = poly(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(sq.exact_divide_linear(1).unwrap(), poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        let lin = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(lin.exact_divide_linear(1).unwrap(), Polynomial::one(2));
        let p = poly(3, &[(&[1, 0, 1], 1), (&[0, 1, 1], -1)]);
        assert_eq!(p.exact_divide_linear(1).unwrap(), poly(3, &[(&[0, 0, 1], 1)]));
        assert!(Polynomial::zero(2).exact_divide_linear(1).unwrap().is_zero());
        assert!(sq.exact_divide_linear(2).is_err());
    }

    #[test]
    #[should_panic(expected = "inexact division")]
    fn inexact_division_panics() {
        poly(2, &[(&[1, 0], 1)]).exact_divide_linear(1).unwrap();
    }

    #[test]
    #[should_panic(expected = "coefficient overflow")]
    fn overflow_panics() {
        let p = poly(1, &[(&[1], Coeff::MAX)]);
        p.add(&p).unwrap();
    }

    #[test]
    fn rendering() {
        let p = poly(2, &[(&[2, 1], 1), (&[0, 0], 3)]);
        assert_eq!(p.to_string(), "1 * x1^2 x2^1 + 3 * 1");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        let json = serde_json::to_string(&poly(2, &[(&[0, 1], 1), (&[1, 0], 2)])).unwrap();
        assert_eq!(json, r#"[{"exponents":[0,1],"coeff":1},{"exponents":[1,0],"coeff":2}]"#);
    }

    #[test]
    fn records_rebuild() {
        let p = poly(3, &[(&[0, 1, 2], 4), (&[2, 0, 0], -1)]);
        assert_eq!(Polynomial::from_records(3, p.to_records()).unwrap(), p);
        assert!(Polynomial::from_records(2, p.to_records()).is_err());
    }
}
