#![allow(dead_code)]

use keypoly::{ExponentVector, Polynomial, WeakComposition};

pub fn c(parts: &[u32]) -> WeakComposition {
    WeakComposition::from(parts)
}

pub fn from_terms(n: usize, terms: &[(&[u32], i64)]) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for (e, k) in terms {
        p.add_term(ExponentVector::new(e.to_vec()), *k);
    }
    p
}

/// kappa_(0,1,1) = x2 x3 + x1 x3 + x1 x2.
pub fn kappa_011() -> Polynomial {
    from_terms(3, &[(&[0, 1, 1], 1), (&[1, 0, 1], 1), (&[1, 1, 0], 1)])
}

/// Hand-expanded: the 14-term expansion of kappa_(0,2,1,2).
pub fn kappa_0212() -> Polynomial {
    from_terms(
        4,
        &[
            (&[2, 2, 0, 1], 1),
            (&[2, 2, 1, 0], 1),
            (&[2, 1, 1, 1], 2),
            (&[2, 1, 0, 2], 1),
            (&[2, 1, 2, 0], 1),
            (&[2, 0, 1, 2], 1),
            (&[2, 0, 2, 1], 1),
            (&[1, 2, 1, 1], 2),
            (&[1, 2, 0, 2], 1),
            (&[1, 2, 2, 0], 1),
            (&[1, 1, 1, 2], 1),
            (&[1, 1, 2, 1], 1),
            (&[0, 2, 1, 2], 1),
            (&[0, 2, 2, 1], 1),
        ],
    )
}

/// Hand-expanded: the 8-term expansion of kappa_(3,2,1,3,2).
pub fn kappa_32132() -> Polynomial {
    from_terms(
        5,
        &[
            (&[3, 2, 3, 2, 1], 1),
            (&[3, 2, 3, 1, 2], 1),
            (&[3, 3, 2, 2, 1], 1),
            (&[3, 3, 2, 1, 2], 1),
            (&[3, 2, 2, 3, 1], 1),
            (&[3, 3, 1, 2, 2], 1),
            (&[3, 2, 1, 3, 2], 1),
            (&[3, 2, 2, 2, 2], 1),
        ],
    )
}

/// The quasi-key polynomial of (3,2,1,3,2): its two tableau weights.
pub fn quasikey_32132() -> Polynomial {
    from_terms(5, &[(&[3, 2, 1, 3, 2], 1), (&[3, 2, 2, 2, 2], 1)])
}

/// Hand-expanded: the left-swap closure of (3,2,1,3,2).
pub fn lswap_32132() -> Vec<WeakComposition> {
    [
        [3, 2, 1, 3, 2],
        [3, 3, 1, 2, 2],
        [3, 2, 3, 1, 2],
        [3, 2, 2, 3, 1],
        [3, 3, 2, 1, 2],
        [3, 3, 2, 2, 1],
        [3, 2, 3, 2, 1],
    ]
    .into_iter()
    .map(WeakComposition::from)
    .collect()
}

/// `{lo..=hi}^n` for every `n` in `lengths`.
pub fn grids(lengths: std::ops::RangeInclusive<usize>, lo: u32, hi: u32) -> impl Iterator<Item = WeakComposition> {
    lengths.flat_map(move |n| keypoly::compositions::grid_range(n, lo, hi))
}
