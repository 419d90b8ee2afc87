//! Type-A key polynomials computed three independent ways (Demazure operators,
//! Kohnert diagrams, quasi-key tableaux), a pattern-avoidance test for
//! multiplicity-freeness, and exhaustive sweeps that check the criterion.
//!
//! Indices in every public interface are 1-based: parts `a_1..a_n`, rows
//! `1..=n` counted south to north, variables `x_1..x_n`.

pub mod classify;
pub mod compositions;
pub mod demazure;
pub mod error;
pub mod kohnert;
pub mod polynomial;
pub mod quasikey;

pub use compositions::WeakComposition;
pub use error::{Error, Result};
pub use polynomial::{ExponentVector, Polynomial};

/// The three ways of expanding a key polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Model {
    Demazure,
    Kohnert,
    Quasikey,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Demazure, Model::Kohnert, Model::Quasikey];

    pub fn name(self) -> &'static str {
        match self {
            Model::Demazure => "demazure",
            Model::Kohnert => "kohnert",
            Model::Quasikey => "quasikey",
        }
    }

    pub fn key_polynomial(self, alpha: &WeakComposition) -> Polynomial {
        match self {
            Model::Demazure => demazure::key_polynomial_demazure(alpha),
            Model::Kohnert => kohnert::key_polynomial_kohnert(alpha),
            Model::Quasikey => quasikey::key_polynomial_quasikey(alpha),
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            Error::InvalidArgument(format!("unknown model '{s}' (expected demazure, kohnert or quasikey)"))
        })
    }
}
