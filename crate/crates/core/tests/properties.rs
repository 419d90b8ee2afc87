mod common;

use std::collections::BTreeMap;

use common::*;
use keypoly::classify::{
    check_closure_avoids_km, check_disjoint_weights, check_quasikey_multiplicity_free, check_segment_structure,
    check_separating_prefixes, check_weight_bounds, uncovered_segment_indices,
};
use keypoly::compositions::{
    avoids_km, contains_pattern, dominance_leq, find_pattern, flat, grid, km_witness, lswap_closure, qlswap,
    segment_decomposition,
};
use keypoly::demazure::{demazure_pi, key_polynomial_demazure};
use keypoly::kohnert::{jump, kohnert_diagrams, kohwt, necessity_witness, skyline};
use keypoly::quasikey::{check_qkt, enumerate_qkt, weight_of, QuasiKeyTableau};
use keypoly::{ExponentVector, Model, Polynomial, WeakComposition};
use proptest::prelude::*;

fn sorted(alpha: &WeakComposition) -> Vec<u32> {
    let mut v = alpha.parts().to_vec();
    v.sort_unstable();
    v
}

#[test]
fn containment_is_transitive() {
    let small: Vec<WeakComposition> = grids(1..=3, 0, 2).collect();
    let mid: Vec<WeakComposition> = grids(2..=4, 0, 3).collect();
    for beta in &mid {
        let below: Vec<&WeakComposition> = small.iter().filter(|g| contains_pattern(beta, g)).collect();
        for alpha in grid(5, 3).filter(|a| contains_pattern(a, beta)) {
            for gamma in &below {
                assert!(contains_pattern(&alpha, gamma), "{alpha} contains {beta} contains {gamma}");
            }
        }
    }
}

#[test]
fn every_composition_contains_itself_and_its_witness() {
    for alpha in grids(1..=5, 0, 3) {
        assert_eq!(find_pattern(&alpha, &alpha), Some((1..=alpha.len()).collect()));
        if let Some(w) = km_witness(&alpha) {
            let sub = WeakComposition::from(w.positions.iter().map(|&i| alpha.part(i)).collect::<Vec<_>>());
            assert!(contains_pattern(&sub, &w.pattern), "{alpha}: {sub} vs {}", w.pattern);
        }
    }
}

#[test]
fn km_avoidance_is_shift_invariant() {
    for alpha in grids(1..=5, 0, 3) {
        for by in 1..=3 {
            assert_eq!(avoids_km(&alpha), avoids_km(&alpha.shifted(by)), "{alpha} + {by}");
        }
    }
}

#[test]
fn closure_preserves_multiset_and_is_idempotent() {
    for alpha in grids(1..=5, 0, 2) {
        let closure = lswap_closure(&alpha);
        assert!(closure.contains(&alpha));
        for beta in &closure {
            assert_eq!(sorted(beta), sorted(&alpha));
            assert!(lswap_closure(beta).is_subset(&closure), "{alpha} -> {beta}");
            assert!(dominance_leq(&alpha, beta).unwrap(), "{alpha} not below {beta}");
        }
        let q = qlswap(&alpha);
        assert!(q.is_subset(&closure));
        let flats: Vec<_> = q.iter().map(flat).collect();
        let classes: std::collections::BTreeSet<_> = closure.iter().map(flat).collect();
        assert_eq!(flats.iter().cloned().collect::<std::collections::BTreeSet<_>>(), classes, "{alpha}");
    }
}

// Runs are disjoint, consecutive and bounded as claimed. Coverage fails, but
// only at entries equal to the one before their segment and below the next
// ascent.
#[test]
fn segment_structure_on_avoiding_grid() {
    let mut uncovered = 0;
    for alpha in grids(1..=6, 1, 4).filter(avoids_km) {
        let missing = uncovered_segment_indices(&alpha);
        match check_segment_structure(&alpha) {
            Ok(()) => assert!(missing.is_empty()),
            Err(e) => assert!(!missing.is_empty() && e.starts_with("indices"), "{alpha}: {e}"),
        }
        let segs = segment_decomposition(&alpha);
        for b in missing {
            let m = segs.segment_index(b);
            let before = alpha.ext(segs.i(m - 1) - 1);
            assert!(alpha.ext(b) == before && alpha.ext(b) < alpha.ext(segs.i(m)), "{alpha}: {b}");
            uncovered += 1;
        }
    }
    assert!(uncovered > 0);
}

#[test]
fn segment_coverage_gap_example() {
    // Ascents at 2 and 5, so the second segment is {2,3,4} with a_1 = 1 before
    // it and a_5 = 2 after: a_3 = 1 is neither >= 2 nor < min(1, 2), and 3 is
    // not the last index of the segment.
    let alpha = c(&[1, 2, 1, 1, 2]);
    assert!(avoids_km(&alpha));
    let s = segment_decomposition(&alpha);
    assert_eq!(s.ascents, vec![2, 5]);
    let seg = s.segment(2);
    assert_eq!((seg.seg1.as_slice(), seg.seg2.as_slice(), seg.seg3.as_slice()), (&[2][..], &[][..], &[4][..]));
    assert_eq!(uncovered_segment_indices(&alpha), vec![3]);
    // The results built on the split still hold here.
    assert!(key_polynomial_demazure(&alpha).is_multiplicity_free());
    check_weight_bounds(&alpha).unwrap();
    check_disjoint_weights(&alpha).unwrap();
}

#[test]
fn closures_of_avoiding_compositions_avoid_km() {
    for alpha in grids(1..=5, 1, 3).filter(avoids_km) {
        check_closure_avoids_km(&alpha).unwrap_or_else(|e| panic!("{alpha}: {e}"));
        check_separating_prefixes(&alpha).unwrap_or_else(|e| panic!("{alpha}: {e}"));
    }
}

#[test]
fn quasikey_polynomials_of_avoiding_compositions_are_multiplicity_free() {
    for alpha in grids(1..=5, 1, 3).filter(avoids_km) {
        check_quasikey_multiplicity_free(&alpha).unwrap_or_else(|e| panic!("{alpha}: {e}"));
    }
}

#[test]
fn coefficients_are_nonnegative_in_every_model() {
    for alpha in grids(1..=4, 0, 3) {
        for model in Model::ALL {
            let p = model.key_polynomial(&alpha);
            assert!(p.terms().all(|(_, k)| k > 0), "{} {alpha}", model.name());
            assert!(p.terms().all(|(e, _)| e.degree() == alpha.size()), "{} {alpha}", model.name());
        }
    }
}

#[test]
fn every_tableau_passes_the_checker_and_the_super_tableau_is_present() {
    for alpha in grids(1..=5, 0, 2) {
        let all = enumerate_qkt(&alpha);
        assert!(all.contains(&QuasiKeyTableau::super_tableau(&alpha)), "{alpha}");
        assert!(all.windows(2).all(|w| w[0].reading_word() < w[1].reading_word()), "{alpha}: not canonical");
        for t in &all {
            check_qkt(&alpha, t.rows()).unwrap_or_else(|v| panic!("{alpha}: {v:?}"));
            assert!(dominance_leq(&alpha, &WeakComposition::from(weight_of(t).as_slice())).unwrap());
        }
    }
}

#[test]
fn kohnert_moves_keep_columns() {
    for alpha in grids(1..=4, 0, 3) {
        let columns = |d: &keypoly::kohnert::Diagram| {
            let mut m = BTreeMap::new();
            for (_, c) in d.boxes() {
                *m.entry(c).or_insert(0) += 1;
            }
            m
        };
        let start = columns(&skyline(&alpha));
        for d in kohnert_diagrams(&alpha) {
            assert_eq!(columns(&d), start, "{alpha}");
        }
    }
}

#[test]
fn jumps_between_rows_stay_in_kohnert_closure() {
    for alpha in grids(1..=4, 0, 3) {
        let all = kohnert_diagrams(&alpha);
        let sky = skyline(&alpha);
        for i in 1..=alpha.len() {
            for lower in 1..i {
                if alpha.part(lower) >= alpha.part(i) {
                    continue;
                }
                let moved = jump(&sky, i, lower).unwrap_or_else(|e| panic!("{alpha} {i}->{lower}: {e}"));
                assert!(all.contains(&moved), "{alpha} {i}->{lower}");
            }
        }
    }
}

#[test]
fn necessity_witnesses_exist_for_every_km_containing_composition() {
    for alpha in grids(1..=5, 0, 3).filter(|a| !avoids_km(a)) {
        let w = necessity_witness(&alpha).expect("contains a pattern").unwrap_or_else(|e| panic!("{alpha}: {e}"));
        assert_ne!(w.first, w.second, "{alpha}");
        assert_eq!(kohwt(&w.first), kohwt(&w.second), "{alpha}");
        let all = kohnert_diagrams(&alpha);
        assert!(all.contains(&w.first) && all.contains(&w.second), "{alpha}");
    }
}

fn composition(max_n: usize, max_part: u32) -> impl Strategy<Value = WeakComposition> {
    prop::collection::vec(0..=max_part, 1..=max_n).prop_map(WeakComposition::from)
}

fn polynomial(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, n), -5i64..=5), 0..8).prop_map(move |terms| {
        let mut p = Polynomial::zero(n);
        for (e, k) in terms {
            p.add_term(ExponentVector::new(e), k);
        }
        p
    })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(a in polynomial(3), b in polynomial(3), c in polynomial(3)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn division_undoes_linear_multiplication(p in polynomial(4), j in 1usize..4) {
        prop_assert_eq!(p.mul_linear(j).unwrap().exact_divide_linear(j).unwrap(), p);
    }

    #[test]
    fn demazure_operators_are_idempotent_and_symmetric(p in polynomial(3), j in 1usize..3) {
        let once = demazure_pi(&p, j).unwrap();
        prop_assert_eq!(demazure_pi(&once, j).unwrap(), once.clone());
        prop_assert_eq!(once.swap_variables(j).unwrap(), once);
    }

    #[test]
    fn demazure_operators_fix_symmetric_input(p in polynomial(3), j in 1usize..3) {
        let sym = p.add(&p.swap_variables(j).unwrap()).unwrap();
        let expected = sym.mul_linear(j).unwrap().exact_divide_linear(j).unwrap();
        prop_assert_eq!(demazure_pi(&sym, j).unwrap(), expected);
    }

    #[test]
    fn key_polynomial_contains_its_leading_monomial(alpha in composition(5, 3)) {
        let p = key_polynomial_demazure(&alpha);
        prop_assert_eq!(p.coefficient(&ExponentVector::new(alpha.parts().to_vec())), 1);
    }

    #[test]
    fn parse_round_trips(alpha in composition(8, 20)) {
        let text = alpha.to_string();
        prop_assert_eq!(text.parse::<WeakComposition>().unwrap(), alpha.clone());
        prop_assert_eq!(format!("[{text}]").parse::<WeakComposition>().unwrap(), alpha);
    }
}
