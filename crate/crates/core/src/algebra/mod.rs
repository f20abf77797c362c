//! Exact arithmetic: prime fields, determinants, integer polynomials and
//! linear recurrences.

mod fp;
mod multilinear;
mod poly;
mod recurrence;

use thiserror::Error;

pub use fp::{det_fp, det_gf2, det_mod_in_place, FpMatrix, Prime};
pub use multilinear::{monomial_cmp, MultilinearPoly};
pub use poly::{discriminant_sqrt, Monomial, Poly, MAX_EXPONENT, MAX_VARS};
pub use recurrence::{berlekamp_massey, divides, poly_rem, run_recurrence, LinearRecurrence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime at most 2^31")]
    NotPrime(u64),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("symbolic product of polynomials sharing variables {0:?}; evaluate point-wise instead")]
    OverlappingSupport(Vec<usize>),
    #[error("no value assigned to variable {0}")]
    MissingAssignment(usize),
    #[error("integer coefficient overflow")]
    CoefficientOverflow,
    #[error("exponent exceeds {MAX_EXPONENT}")]
    ExponentOverflow,
    #[error("variable {0} exceeds the {MAX_VARS}-variable limit of general polynomials")]
    TooManyVariables(usize),
    #[error("recurrence needs {needed} seeds, got {got}")]
    InsufficientSeeds { needed: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
