//! Key polynomials through the Demazure operator recursion.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::compositions::WeakComposition;
use crate::error::Result;
use crate::polynomial::{ExponentVector, Polynomial};

/// `pi_j f = (x_j f - x_{j+1} s_j f) / (x_j - x_{j+1})`, for `1 <= j < n`.
pub fn demazure_pi(f: &Polynomial, j: usize) -> Result<Polynomial> {
    f.check_adjacent(j)?;
    let n = f.nvars();
    let mut xj = vec![0; n];
    xj[j - 1] = 1;
    let mut xj1 = vec![0; n];
    xj1[j] = 1;
    let numerator = f
        .mul_monomial(&ExponentVector::new(xj), 1)?
        .sub(&f.swap_variables(j)?.mul_monomial(&ExponentVector::new(xj1), 1)?)?;
    numerator.exact_divide_linear(j)
}

/// Which ascent the recursion resolves first.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum AscentStrategy {
    #[default]
    Leftmost,
    Rightmost,
}

fn pick_ascent(alpha: &WeakComposition, strategy: AscentStrategy) -> Option<usize> {
    let mut ascents = (1..alpha.len()).filter(|&j| alpha.part(j + 1) > alpha.part(j));
    match strategy {
        AscentStrategy::Leftmost => ascents.next(),
        AscentStrategy::Rightmost => ascents.next_back(),
    }
}

/// `kappa_alpha`, resolving the leftmost ascent at every step.
pub fn key_polynomial_demazure(alpha: &WeakComposition) -> Polynomial {
    key_polynomial_with_strategy(alpha, AscentStrategy::Leftmost)
}

pub fn key_polynomial_with_strategy(alpha: &WeakComposition, strategy: AscentStrategy) -> Polynomial {
    // Walk down to the weakly decreasing rearrangement, then apply the
    // operators back up.
    let mut chain = Vec::new();
    let mut current = alpha.clone();
    while let Some(j) = pick_ascent(&current, strategy) {
        chain.push(j);
        current = current.swapped(j, j + 1);
    }
    let mut p = Polynomial::monomial(ExponentVector::new(current.into_parts()), 1);
    for &j in chain.iter().rev() {
        p = demazure_pi(&p, j).expect("ascent index is in range");
    }
    p
}

/// Memo table for `kappa_alpha`, shared across one verification run.
///
/// Concurrent writers may race on the same key; all of them compute the same
/// polynomial, so whichever insert lands is kept.
#[derive(Default, Debug)]
pub struct KeyPolynomialCache {
    table: RwLock<HashMap<WeakComposition, Arc<Polynomial>>>,
}

impl KeyPolynomialCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `kappa_alpha` via the leftmost-ascent recursion, reusing and filling
    /// the table for every composition on the recursion path.
    pub fn get(&self, alpha: &WeakComposition) -> Arc<Polynomial> {
        if let Some(p) = self.table.read().unwrap().get(alpha) {
            return Arc::clone(p);
        }
        let p = match pick_ascent(alpha, AscentStrategy::Leftmost) {
            None => Polynomial::monomial(ExponentVector::new(alpha.parts().to_vec()), 1),
            Some(j) => {
                let below = self.get(&alpha.swapped(j, j + 1));
                demazure_pi(&below, j).expect("ascent index is in range")
            }
        };
        let p = Arc::new(p);
        let mut table = self.table.write().unwrap();
        if let Some(existing) = table.get(alpha) {
            debug_assert_eq!(**existing, *p, "memo race produced different values for {alpha}");
            return Arc::clone(existing);
        }
        table.insert(alpha.clone(), Arc::clone(&p));
        p
    }
}
