//! Exact computational arithmetic for the unit groups `(Z/NZ)^x`, cyclotomic
//! fields, Dirichlet characters and generalized Bernoulli numbers, CM-type
//! combinatorics, and the classification of endomorphism algebras of the new
//! parts of superelliptic Jacobians `y^N = f(x)` with `deg f = 3`.
//!
//! All decisions are made in exact arithmetic (big rationals, cyclotomic
//! power-basis vectors). Floating point appears only in diagnostic complex
//! embeddings and never feeds a branch.

pub mod characters;
pub mod classifier;
pub mod cm_types;
pub mod curve;
pub mod cyclo;
pub mod group_algebra;
pub mod poly;
pub mod report;
pub mod residue;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(u64),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("the given set is not a subgroup of the units modulo {modulus}")]
    NotASubgroup { modulus: u64 },
    #[error("interval bounds are invalid: {0}")]
    InvalidInterval(String),
    #[error("the cover degree {cover} divides the polynomial degree {degree}")]
    CoverDividesDegree { degree: u64, cover: u64 },
    #[error("gcd({n}, {modulus}) must be 1 for this operation")]
    GcdObstruction { n: u64, modulus: u64 },
    #[error("{0} is not a prime power")]
    PrimePowerRequired(u64),
    #[error("{0} has fewer than two distinct prime factors")]
    TwoPrimeFactorsRequired(u64),
    #[error("search space too large for {context}: {size} candidates")]
    SearchSpaceTooLarge { context: &'static str, size: u128 },
    #[error("no primitive element found for the fixed subfield inside conductor {ambient}")]
    GeneratorSearchFailed { ambient: u64 },
    #[error("element is not rational where a rational value was required")]
    NonRational,
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("cubic is singular (zero discriminant)")]
    SingularCubic,
    #[error("hypotheses for the automorphism normalizer are not met: {0}")]
    NormalizerHypothesis(String),
    #[error("combination not covered by the classification: {0}")]
    NotCovered(String),
    #[error("centralizer case is ruled out for modulus {modulus}: {reason}")]
    CaseRuledOut { modulus: u64, reason: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
