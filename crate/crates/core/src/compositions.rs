//! Weak compositions and the order-theoretic machinery around them: composition
//! patterns, left swaps, dominance order, segments and the `flex` statistic.
//!
//! Every index accepted or returned by this module is 1-based.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weak composition `(a_1, ..., a_n)` of fixed length. Trailing zeros are
/// significant.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakComposition(Vec<u32>);

/// A part value extended by `+inf`, used for the sentinel `a_0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ExtValue {
    Finite(u32),
    Infinity,
}

impl ExtValue {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtValue::Finite(v) => Some(v),
            ExtValue::Infinity => None,
        }
    }
}

impl WeakComposition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        WeakComposition(parts.into())
    }

    pub fn zeros(n: usize) -> Self {
        WeakComposition(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    /// The part `a_i`, 1-based. Panics when `i` is outside `1..=n`.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1 && i <= self.len(), "part index {i} out of range 1..={}", self.len());
        self.0[i - 1]
    }

    /// `a_i` with the sentinels `a_0 = +inf` and `a_{n+1} = 0`.
    pub fn ext(&self, i: usize) -> ExtValue {
        if i == 0 {
            ExtValue::Infinity
        } else if i == self.len() + 1 {
            ExtValue::Finite(0)
        } else {
            ExtValue::Finite(self.part(i))
        }
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// All parts at least one.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&p| p >= 1)
    }

    /// Every part increased by `by`.
    pub fn shifted(&self, by: u32) -> Self {
        WeakComposition(self.0.iter().map(|&p| p.checked_add(by).expect("part overflow")).collect())
    }

    /// Exchange parts `i` and `j` (1-based).
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut parts = self.0.clone();
        parts.swap(i - 1, j - 1);
        WeakComposition(parts)
    }

    /// Prefix sums `a_1 + ... + a_t` for `t = 1..=n`.
    pub fn prefix_sums(&self) -> Vec<u64> {
        self.0
            .iter()
            .scan(0u64, |acc, &p| {
                *acc += u64::from(p);
                Some(*acc)
            })
            .collect()
    }
}

impl From<Vec<u32>> for WeakComposition {
    fn from(parts: Vec<u32>) -> Self {
        WeakComposition(parts)
    }
}

impl From<&[u32]> for WeakComposition {
    fn from(parts: &[u32]) -> Self {
        WeakComposition(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for WeakComposition {
    fn from(parts: [u32; N]) -> Self {
        WeakComposition(parts.to_vec())
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses `0,2,1,2` or `[0,2,1,2]`. Error positions are 1-based character
/// columns into the input.
impl FromStr for WeakComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed_start = s.len() - s.trim_start().len();
        let mut body = s.trim();
        let mut offset = trimmed_start;
        if let Some(rest) = body.strip_prefix('[') {
            body = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                position: offset + body.len() + 1,
                message: "missing closing ']'".into(),
            })?;
            offset += 1;
        }
        if body.trim().is_empty() {
            return Err(Error::Parse { position: offset + 1, message: "empty composition".into() });
        }
        let mut parts = Vec::new();
        let mut start = offset;
        for token in body.split(',') {
            let lead = token.len() - token.trim_start().len();
            let t = token.trim();
            let position = s[..start + lead].chars().count() + 1;
            if t.is_empty() {
                return Err(Error::Parse { position, message: "missing part".into() });
            }
            if t.starts_with('-') {
                return Err(Error::Parse { position, message: format!("negative part '{t}'") });
            }
            let value = t
                .parse::<u32>()
                .map_err(|_| Error::Parse { position, message: format!("'{t}' is not a nonnegative integer") })?;
            parts.push(value);
            start += token.len() + 1;
        }
        Ok(WeakComposition(parts))
    }
}

/// The five patterns whose avoidance characterizes multiplicity-free key
/// polynomials.
pub const KM_PATTERNS: [&[u32]; 5] = [&[0, 1, 2], &[0, 0, 2, 2], &[0, 0, 2, 1], &[1, 0, 3, 2], &[1, 0, 2, 2]];

pub fn km_patterns() -> Vec<WeakComposition> {
    KM_PATTERNS.iter().map(|p| WeakComposition::from(*p)).collect()
}

fn pair_compatible(a_s: u32, a_t: u32, b_s: u32, b_t: u32) -> bool {
    (a_s <= a_t) == (b_s <= b_t) && (a_t <= a_s) == (b_t <= b_s) && a_s.abs_diff(a_t) >= b_s.abs_diff(b_t)
}

fn extend_embedding(alpha: &[u32], beta: &[u32], chosen: &mut Vec<usize>) -> bool {
    let k = chosen.len();
    if k == beta.len() {
        return true;
    }
    let from = chosen.last().map_or(0, |&j| j + 1);
    // leave room for the remaining pattern letters
    let to = alpha.len() + k + 1 - beta.len();
    for j in from..to {
        let ok = chosen.iter().enumerate().all(|(s, &js)| pair_compatible(alpha[js], alpha[j], beta[s], beta[k]));
        if ok {
            chosen.push(j);
            if extend_embedding(alpha, beta, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn find_pattern_slice(alpha: &[u32], beta: &[u32]) -> Option<Vec<usize>> {
    if beta.is_empty() || beta.len() > alpha.len() {
        return None;
    }
    let mut chosen = Vec::with_capacity(beta.len());
    extend_embedding(alpha, beta, &mut chosen).then(|| chosen.into_iter().map(|j| j + 1).collect())
}

/// Lexicographically first embedding of the pattern `beta` in `alpha`, as
/// 1-based positions `j_1 < ... < j_k`.
pub fn find_pattern(alpha: &WeakComposition, beta: &WeakComposition) -> Option<Vec<usize>> {
    find_pattern_slice(alpha.parts(), beta.parts())
}

pub fn contains_pattern(alpha: &WeakComposition, beta: &WeakComposition) -> bool {
    find_pattern(alpha, beta).is_some()
}

/// A concrete occurrence of a KM pattern.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PatternWitness {
    pub pattern: WeakComposition,
    pub positions: Vec<usize>,
}

/// The first KM pattern (in the order of [`KM_PATTERNS`]) that `alpha`
/// contains, with its first embedding.
pub fn km_witness(alpha: &WeakComposition) -> Option<PatternWitness> {
    KM_PATTERNS.iter().find_map(|p| {
        find_pattern_slice(alpha.parts(), p)
            .map(|positions| PatternWitness { pattern: WeakComposition::from(*p), positions })
    })
}

pub fn avoids_km(alpha: &WeakComposition) -> bool {
    KM_PATTERNS.iter().all(|p| find_pattern_slice(alpha.parts(), p).is_none())
}

/// `alpha` with every zero part removed.
pub fn flat(alpha: &WeakComposition) -> WeakComposition {
    WeakComposition(alpha.0.iter().copied().filter(|&p| p != 0).collect())
}

/// `a <=_Dom b`: every prefix sum of `b` is at least the matching prefix sum of `a`.
pub fn dominance_leq(a: &WeakComposition, b: &WeakComposition) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.prefix_sums().iter().zip(b.prefix_sums()).all(|(&sa, sb)| sb >= sa))
}

/// Compositions reachable by one swap of positions `i < j` with `a_i < a_j`.
pub fn left_swaps(alpha: &WeakComposition) -> BTreeSet<WeakComposition> {
    let p = alpha.parts();
    let mut out = BTreeSet::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] < p[j] {
                let mut q = p.to_vec();
                q.swap(i, j);
                out.insert(WeakComposition(q));
            }
        }
    }
    out
}

/// Reflexive-transitive closure of [`left_swaps`], ordered lexicographically.
pub fn lswap_closure(alpha: &WeakComposition) -> BTreeSet<WeakComposition> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(alpha.clone());
    queue.push_back(alpha.clone());
    while let Some(gamma) = queue.pop_front() {
        for next in left_swaps(&gamma) {
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen
}

/// The members of the left-swap closure that are dominance-below every member
/// of the closure sharing their flattening.
pub fn qlswap(alpha: &WeakComposition) -> BTreeSet<WeakComposition> {
    let closure: Vec<WeakComposition> = lswap_closure(alpha).into_iter().collect();
    let flats: Vec<WeakComposition> = closure.iter().map(flat).collect();
    let sums: Vec<Vec<u64>> = closure.iter().map(WeakComposition::prefix_sums).collect();
    closure
        .iter()
        .enumerate()
        .filter(|&(g, _)| {
            (0..closure.len())
                .filter(|&t| flats[t] == flats[g])
                .all(|t| sums[g].iter().zip(&sums[t]).all(|(sg, st)| st >= sg))
        })
        .map(|(_, gamma)| gamma.clone())
        .collect()
}

/// One segment `{i_{m-1}, ..., i_m - 1}` and its three-way split.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Segment {
    pub m: usize,
    pub start: usize,
    pub end: usize,
    pub seg1: Vec<usize>,
    pub seg2: Vec<usize>,
    pub seg3: Vec<usize>,
}

impl Segment {
    pub fn members(&self) -> std::ops::RangeInclusive<usize> {
        self.start..=self.end
    }

    pub fn contains(&self, b: usize) -> bool {
        self.start <= b && b <= self.end
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SegmentDecomposition {
    pub n: usize,
    /// `i_1 < ... < i_k`: the indices with `a_{i-1} < a_i`.
    pub ascents: Vec<usize>,
    /// `segments[m - 1]` is the m-th segment, `m = 1..=k+1`.
    pub segments: Vec<Segment>,
}

impl SegmentDecomposition {
    pub fn k(&self) -> usize {
        self.ascents.len()
    }

    /// `i_m` for `0 <= m <= k+1`, with `i_0 = 1` and `i_{k+1} = n+1`.
    pub fn i(&self, m: usize) -> usize {
        match m {
            0 => 1,
            m if m == self.k() + 1 => self.n + 1,
            m => self.ascents[m - 1],
        }
    }

    /// The `m` with `b` in the m-th segment.
    pub fn segment_index(&self, b: usize) -> usize {
        self.segments.iter().find(|s| s.contains(b)).map(|s| s.m).expect("index outside 1..=n")
    }

    pub fn segment(&self, m: usize) -> &Segment {
        &self.segments[m - 1]
    }
}

/// Segments computed literally from their definitions; defined for every
/// composition, with the structural guarantees holding only for KM-avoiding
/// compositions with positive parts.
pub fn segment_decomposition(alpha: &WeakComposition) -> SegmentDecomposition {
    let n = alpha.len();
    let ascents: Vec<usize> = (2..=n).filter(|&i| alpha.part(i - 1) < alpha.part(i)).collect();
    let k = ascents.len();
    let bound = |m: usize| match m {
        0 => 1,
        m if m == k + 1 => n + 1,
        m => ascents[m - 1],
    };
    let segments = (1..=k + 1)
        .map(|m| {
            let (lo, hi) = (bound(m - 1), bound(m));
            let top = alpha.ext(hi);
            let before = alpha.ext(lo - 1);
            let cap = before.min(top);
            let seg1 = (lo..hi).filter(|&b| alpha.ext(b) >= top).collect();
            let seg2 = (lo..hi).filter(|&b| alpha.ext(b) < cap && b + 1 < hi).collect();
            let seg3 = if m == k + 1 { Vec::new() } else { vec![hi - 1] };
            Segment { m, start: lo, end: hi - 1, seg1, seg2, seg3 }
        })
        .collect();
    SegmentDecomposition { n, ascents, segments }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Flex {
    pub rmin: usize,
    /// May be `n + 1`, in which case `a_rmax` is the sentinel 0.
    pub rmax: usize,
    pub flex: u32,
}

/// `rmin_b`, `rmax_b` and `flex_b` of `alpha` for `1 <= b <= n`.
pub fn rmin_rmax_flex(alpha: &WeakComposition, b: usize) -> Result<Flex> {
    let n = alpha.len();
    if b < 1 || b > n {
        return Err(Error::IndexOutOfRange { index: b, max: n });
    }
    let segs = segment_decomposition(alpha);
    Ok(flex_with(alpha, &segs, b))
}

pub(crate) fn flex_with(alpha: &WeakComposition, segs: &SegmentDecomposition, b: usize) -> Flex {
    let m = segs.segment_index(b);
    let prev = segs.i(m - 1) - 1;
    let next = segs.i(m);
    let rmin = if alpha.ext(prev) >= alpha.ext(b) { b } else { prev };
    let rmax = if alpha.ext(b + 1) >= alpha.ext(next) { b + 1 } else { next };
    let (lo, hi) = (alpha.ext(rmin), alpha.ext(rmax));
    let flex = match hi.cmp(&lo) {
        Ordering::Greater => {
            let hi = hi.finite().expect("rmax is never the infinite sentinel");
            let lo = lo.finite().expect("rmin is never the infinite sentinel");
            hi - lo - 1
        }
        _ => 0,
    };
    Flex { rmin, rmax, flex }
}

/// Iterates `{0..=max_part}^n` in lexicographic order.
pub fn grid(n: usize, max_part: u32) -> impl Iterator<Item = WeakComposition> {
    grid_range(n, 0, max_part)
}

/// Iterates `{min_part..=max_part}^n` in lexicographic order.
pub fn grid_range(n: usize, min_part: u32, max_part: u32) -> impl Iterator<Item = WeakComposition> {
    let mut current = (min_part <= max_part).then(|| vec![min_part; n]);
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = current.as_mut().unwrap();
        let mut i = n;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < max_part {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|p| *p = min_part);
                break;
            }
        }
        Some(WeakComposition(out))
    })
}
