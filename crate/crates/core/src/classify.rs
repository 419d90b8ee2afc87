//! The multiplicity-free criterion and the exhaustive sweeps that check it
//! (and the statements it rests on) over finite grids of compositions.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::compositions::{
    avoids_km, dominance_leq, flex_with, grid, grid_range, lswap_closure, qlswap, segment_decomposition,
    WeakComposition,
};
use crate::demazure::KeyPolynomialCache;
use crate::error::{Error, Result};
use crate::kohnert::key_polynomial_kohnert;
use crate::polynomial::{ExponentVector, Polynomial};
use crate::quasikey::{
    count_low_entries_above, enumerate_qkt, key_polynomial_quasikey, quasi_key_polynomial, weight_of,
};

/// Whether `kappa_alpha` is multiplicity-free, decided by pattern avoidance
/// alone.
pub fn is_multiplicity_free_key(alpha: &WeakComposition) -> bool {
    avoids_km(alpha)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub max_part: u32,
}

impl GridSpec {
    /// `(max_part + 1)^n`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        u64::from(self.max_part).checked_add(1)?.checked_pow(u32::try_from(self.n).ok()?)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerificationReport {
    pub grid: GridSpec,
    pub checked: u64,
    pub mismatches: Vec<WeakComposition>,
    pub max_coefficient: u64,
    pub elapsed_ms: u64,
    /// One line per failed check, naming the composition and what went wrong.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConjectureReport {
    pub grid: GridSpec,
    /// KM-avoiding compositions examined.
    pub checked: u64,
    pub counterexamples: Vec<WeakComposition>,
    pub elapsed_ms: u64,
}

/// Maps `f` over `items` on `jobs` threads (0 picks the rayon default),
/// keeping input order.
fn sweep<T, F>(items: Vec<WeakComposition>, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&WeakComposition) -> T + Sync + Send,
{
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(|| items.par_iter().map(f).collect())
}

struct Outcome {
    alpha: WeakComposition,
    max_coefficient: u64,
    problems: Vec<String>,
}

fn report(grid: GridSpec, started: Instant, outcomes: Vec<Outcome>) -> VerificationReport {
    let mut mismatches = Vec::new();
    let mut details = Vec::new();
    let mut max_coefficient = 0;
    let checked = outcomes.len() as u64;
    for o in outcomes {
        max_coefficient = max_coefficient.max(o.max_coefficient);
        if !o.problems.is_empty() {
            details.extend(o.problems.into_iter().map(|p| format!("{}: {p}", o.alpha)));
            mismatches.push(o.alpha);
        }
    }
    mismatches.sort();
    VerificationReport {
        grid,
        checked,
        mismatches,
        max_coefficient,
        elapsed_ms: started.elapsed().as_millis() as u64,
        details,
    }
}

fn check_grid(spec: GridSpec) -> Result<()> {
    if spec.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// For every composition in `{0..=max_part}^n`, compares multiplicity-freeness
/// of the Demazure-model key polynomial with KM avoidance.
pub fn verify_classification(n: usize, max_part: u32, jobs: usize) -> Result<VerificationReport> {
    let spec = GridSpec { n, max_part };
    check_grid(spec)?;
    let started = Instant::now();
    let cache = KeyPolynomialCache::new();
    let outcomes = sweep(grid(n, max_part).collect(), jobs, |alpha| {
        let kappa = cache.get(alpha);
        let by_expansion = kappa.is_multiplicity_free();
        let by_pattern = avoids_km(alpha);
        let mut problems = Vec::new();
        if by_expansion != by_pattern {
            problems
                .push(format!("expansion says multiplicity-free={by_expansion}, pattern criterion says {by_pattern}"));
        }
        Outcome { alpha: alpha.clone(), max_coefficient: kappa.max_abs_coefficient(), problems }
    });
    Ok(report(spec, started, outcomes))
}

/// Term-by-term differences between two polynomials in the same ring.
pub fn term_differences(expected: &Polynomial, actual: &Polynomial) -> Vec<(ExponentVector, i64, i64)> {
    let keys: std::collections::BTreeSet<&ExponentVector> =
        expected.terms().map(|(e, _)| e).chain(actual.terms().map(|(e, _)| e)).collect();
    keys.into_iter()
        .filter_map(|e| {
            let (a, b) = (expected.coefficient(e), actual.coefficient(e));
            (a != b).then(|| (e.clone(), a, b))
        })
        .collect()
}

/// Compares the Kohnert and quasi-key expansions against the Demazure
/// recursion for every composition in the grid.
pub fn cross_check_models(n: usize, max_part: u32, jobs: usize) -> Result<VerificationReport> {
    let spec = GridSpec { n, max_part };
    check_grid(spec)?;
    let started = Instant::now();
    let cache = KeyPolynomialCache::new();
    let outcomes = sweep(grid(n, max_part).collect(), jobs, |alpha| {
        let reference = cache.get(alpha);
        let mut problems = Vec::new();
        for (model, p) in [("kohnert", key_polynomial_kohnert(alpha)), ("quasikey", key_polynomial_quasikey(alpha))] {
            for (e, want, got) in term_differences(&reference, &p) {
                problems.push(format!("{model} coefficient of {:?} is {got}, demazure gives {want}", e.as_slice()));
            }
        }
        Outcome { alpha: alpha.clone(), max_coefficient: reference.max_abs_coefficient(), problems }
    });
    Ok(report(spec, started, outcomes))
}

/// Indices of `alpha` lying in none of the three runs of their segment.
pub fn uncovered_segment_indices(alpha: &WeakComposition) -> Vec<usize> {
    let segs = segment_decomposition(alpha);
    segs.segments
        .iter()
        .flat_map(|seg| {
            seg.members().filter(move |b| !seg.seg1.contains(b) && !seg.seg2.contains(b) && !seg.seg3.contains(b))
        })
        .collect()
}

/// For KM-avoiding `alpha` with positive parts: the three runs of each
/// segment are disjoint and consecutive; the first run is nonempty beyond the
/// first segment; the entry before a segment bounds its last entry; an entry
/// exceeding the one before its segment lies in the first run; and every
/// index is covered by some run.
///
/// Coverage is checked last. It genuinely fails when an entry equals the one
/// before its segment and is smaller than the next ascent, e.g. index 3 of
/// (1,2,1,1,2), since the second run asks for a strict inequality.
pub fn check_segment_structure(alpha: &WeakComposition) -> std::result::Result<(), String> {
    let segs = segment_decomposition(alpha);
    for seg in &segs.segments {
        let m = seg.m;
        let mut union: Vec<usize> = seg.seg1.iter().chain(&seg.seg2).chain(&seg.seg3).copied().collect();
        union.sort_unstable();
        if union.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("segment {m}: the three parts overlap"));
        }
        for part in [&seg.seg1, &seg.seg2, &seg.seg3] {
            if part.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(format!("segment {m} has a non-consecutive part"));
            }
        }
        if m > 1 && seg.seg1.is_empty() {
            return Err(format!("segment {m} has an empty first part"));
        }
        let before = alpha.ext(segs.i(m - 1) - 1);
        if let Some(&b) = seg.seg3.first() {
            if before < alpha.ext(b) {
                return Err(format!("segment {m}: entry {b} exceeds the entry before the segment"));
            }
        }
        for b in seg.members() {
            if before < alpha.ext(b) && !seg.seg1.contains(&b) {
                return Err(format!(
                    "segment {m}: entry {b} exceeds the entry before the segment but is not in the first part"
                ));
            }
        }
    }
    match uncovered_segment_indices(alpha).as_slice() {
        [] => Ok(()),
        missing => Err(format!("indices {missing:?} lie in none of the three parts of their segment")),
    }
}

/// For every quasi-key tableau `T` of shape `alpha`: `alpha <=_Dom wt(T)`,
/// and for each `b` the number of entries `<= b` above row `b` is at most
/// `flex_b(alpha)`, so `wt(T)_1 + ... + wt(T)_b <= alpha_1 + ... + alpha_b + flex_b(alpha)`.
pub fn check_weight_bounds(alpha: &WeakComposition) -> std::result::Result<(), String> {
    let segs = segment_decomposition(alpha);
    let n = alpha.len();
    let flex: Vec<u64> = (1..=n).map(|b| u64::from(flex_with(alpha, &segs, b).flex)).collect();
    let base = alpha.prefix_sums();
    for t in enumerate_qkt(alpha) {
        let mu = WeakComposition::new(weight_of(&t).as_slice().to_vec());
        if !dominance_leq(alpha, &mu).expect("same length") {
            return Err(format!("weight {mu} is not dominance-above the shape"));
        }
        let sums = mu.prefix_sums();
        for b in 1..=n {
            let low = count_low_entries_above(&t, b).expect("b in range") as u64;
            if low > flex[b - 1] {
                return Err(format!("{low} entries <= {b} above row {b} exceed flex {}", flex[b - 1]));
            }
            if sums[b - 1] > base[b - 1] + flex[b - 1] {
                return Err(format!("prefix {b} of weight {mu} exceeds the flex bound"));
            }
        }
    }
    Ok(())
}

/// Quasi-key polynomials of every member of `Qlswap(alpha)` are
/// multiplicity-free.
pub fn check_quasikey_multiplicity_free(alpha: &WeakComposition) -> std::result::Result<(), String> {
    match qlswap(alpha).into_iter().find(|beta| !quasi_key_polynomial(beta).is_multiplicity_free()) {
        Some(beta) => Err(format!("quasi-key polynomial of {beta} has multiplicity")),
        None => Ok(()),
    }
}

/// Every member of the left-swap closure avoids KM.
pub fn check_closure_avoids_km(alpha: &WeakComposition) -> std::result::Result<(), String> {
    match lswap_closure(alpha).into_iter().find(|g| !avoids_km(g)) {
        Some(g) => Err(format!("closure member {g} contains a KM pattern")),
        None => Ok(()),
    }
}

/// A `z` with `tau_1 + ... + tau_z + flex_z(tau) < gamma_1 + ... + gamma_z`.
pub fn separating_index(gamma: &WeakComposition, tau: &WeakComposition) -> Option<usize> {
    let segs = segment_decomposition(tau);
    let (g, t) = (gamma.prefix_sums(), tau.prefix_sums());
    (1..=tau.len()).find(|&z| t[z - 1] + u64::from(flex_with(tau, &segs, z).flex) < g[z - 1])
}

/// Every lexicographically ordered pair `gamma > tau` in the closure has a
/// separating index.
pub fn check_separating_prefixes(alpha: &WeakComposition) -> std::result::Result<(), String> {
    let closure: Vec<_> = lswap_closure(alpha).into_iter().collect();
    for (i, tau) in closure.iter().enumerate() {
        for gamma in &closure[i + 1..] {
            if separating_index(gamma, tau).is_none() {
                return Err(format!("no separating index for {gamma} > {tau}"));
            }
        }
    }
    Ok(())
}

/// Distinct members of the closure have disjoint sets of tableau weights.
pub fn check_disjoint_weights(alpha: &WeakComposition) -> std::result::Result<(), String> {
    let mut seen: HashSet<ExponentVector> = HashSet::new();
    for gamma in lswap_closure(alpha) {
        let weights: HashSet<ExponentVector> = enumerate_qkt(&gamma).iter().map(weight_of).collect();
        if let Some(w) = weights.iter().find(|w| seen.contains(*w)) {
            return Err(format!("weight {:?} of {gamma} also occurs for another closure member", w.as_slice()));
        }
        seen.extend(weights);
    }
    Ok(())
}

type NamedCheck = (&'static str, fn(&WeakComposition) -> std::result::Result<(), String>);

const POSITIVE_KM_CHECKS: [NamedCheck; 6] = [
    ("segment structure", check_segment_structure),
    ("closure avoids KM", check_closure_avoids_km),
    ("weight bounds", check_weight_bounds),
    ("quasi-key multiplicity-free", check_quasikey_multiplicity_free),
    ("separating prefixes", check_separating_prefixes),
    ("disjoint weights", check_disjoint_weights),
];

/// Runs every structural check over KM-avoiding compositions with parts in
/// `1..=max_part`. `checked` counts those compositions.
pub fn verify_lemmas(n: usize, max_part: u32, jobs: usize) -> Result<VerificationReport> {
    let spec = GridSpec { n, max_part };
    check_grid(spec)?;
    let started = Instant::now();
    let items: Vec<_> = grid_range(n, 1, max_part).filter(avoids_km).collect();
    let outcomes = sweep(items, jobs, |alpha| {
        let problems = POSITIVE_KM_CHECKS
            .iter()
            .filter_map(|(name, check)| check(alpha).err().map(|e| format!("{name}: {e}")))
            .collect();
        Outcome { alpha: alpha.clone(), max_coefficient: 0, problems }
    });
    Ok(report(spec, started, outcomes))
}

/// Looks for KM-avoiding compositions, zeros allowed, whose quasi-key
/// polynomial has a coefficient above 1. Findings are reported, never raised.
pub fn quasikey_zero_conjecture_sweep(n: usize, max_part: u32, jobs: usize) -> Result<ConjectureReport> {
    let spec = GridSpec { n, max_part };
    check_grid(spec)?;
    let started = Instant::now();
    let items: Vec<_> = grid(n, max_part).filter(avoids_km).collect();
    let checked = items.len() as u64;
    let flags = sweep(items.clone(), jobs, |alpha| quasi_key_polynomial(alpha).is_multiplicity_free());
    let counterexamples = items.into_iter().zip(flags).filter(|(_, ok)| !ok).map(|(a, _)| a).collect();
    Ok(ConjectureReport { grid: spec, checked, counterexamples, elapsed_ms: started.elapsed().as_millis() as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[u32]) -> WeakComposition {
        WeakComposition::from(parts)
    }

    #[test]
    fn criterion_examples() {
        assert!(is_multiplicity_free_key(&c(&[0, 1, 1])));
        assert!(!is_multiplicity_free_key(&c(&[0, 2, 1, 2])));
        for alpha in grid(4, 3).filter(WeakComposition::is_weakly_decreasing) {
            assert!(is_multiplicity_free_key(&alpha), "{alpha}");
        }
    }

    #[test]
    fn classification_small_grids() {
        let r = verify_classification(3, 2, 1).unwrap();
        assert_eq!((r.checked, r.mismatches.len()), (27, 0));
        let r = verify_classification(1, 5, 1).unwrap();
        assert_eq!((r.checked, r.mismatches.len(), r.max_coefficient), (6, 0, 1));
        let r = verify_classification(4, 3, 0).unwrap();
        assert_eq!((r.checked, r.mismatches.len()), (256, 0));
        assert!(r.max_coefficient >= 2);
        assert!(verify_classification(0, 3, 1).is_err());
    }

    #[test]
    fn model_cross_check_small_grids() {
        for (n, m, total) in [(3, 2, 27), (2, 4, 25), (1, 6, 7)] {
            let r = cross_check_models(n, m, 0).unwrap();
            assert_eq!((r.checked, r.mismatches.len()), (total, 0), "{:?}", r.details);
        }
    }

    #[test]
    fn lemma_suite_small_grid() {
        let r = verify_lemmas(2, 1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 1);
        let r = verify_lemmas(4, 3, 0).unwrap();
        assert!(r.passed(), "{:?}", r.details);
    }

    #[test]
    fn conjecture_sweep_small_grids() {
        for (n, m) in [(3, 2), (1, 4), (4, 2)] {
            let r = quasikey_zero_conjecture_sweep(n, m, 0).unwrap();
            assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
        }
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let mut a = cross_check_models(3, 2, 1).unwrap();
        let mut b = cross_check_models(3, 2, 4).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a, b);
    }

    #[test]
    fn report_serialization_shape() {
        let mut r = verify_classification(1, 1, 1).unwrap();
        r.elapsed_ms = 7;
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"grid":{"n":1,"max_part":1},"checked":2,"mismatches":[],"max_coefficient":1,"elapsed_ms":7}"#
        );
    }

    #[test]
    fn term_differences_lists_both_sides() {
        let p = Polynomial::variable(2, 1);
        let q = Polynomial::variable(2, 2);
        let d = term_differences(&p, &q);
        assert_eq!(d.len(), 2);
        assert!(term_differences(&p, &p).is_empty());
    }
}
