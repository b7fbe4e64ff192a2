//! Rank prediction for the ambiguous 5-class group of `Q(n^(1/5), zeta_5)`
//! over the fifth cyclotomic field, from the factorization of the radicand.
//!
//! * [`arith`]: primality, factorization, multiplicative order, and a
//!   brute-force factorization of the fifth cyclotomic polynomial mod p.
//! * [`quintic`]: radicand normalization, splitting and ramification in
//!   `Q(zeta_5)`, norm indicators and the rank formula `d - 3 + q*`.
//! * [`classify`]: the nine radicand forms and the cyclic-group conjecture.
//! * [`tables`]: enumeration, table emission and the embedded fixture rows
//!   with their consistency checker.

pub mod arith;
pub mod classify;
pub mod quintic;
pub mod tables;

pub use arith::{factorize, is_prime, PrimeFactorization, PrimePower, Splitting};
pub use classify::{classify, classify_factors, Classification, FormClass};
pub use quintic::{
    normalize, FactoredRadicand, NormIndicators, PrimeClass, QStar, RamificationProfile,
};
pub use tables::ClassificationRecord;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("integer {0} is below 2")]
    TooSmall(u128),
    #[error("the prime 5 is not allowed here")]
    PrimeFive,
    #[error("degenerate radicand: {0} is a perfect 5th power")]
    DegenerateRadicand(u128),
    #[error("radicand has an exponent outside 1..=4")]
    NotFifthPowerFree,
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("value does not fit in 128 bits")]
    Overflow,
    #[error("rank is indeterminate: q* is unknown")]
    IndeterminateRank,
    #[error("NotCovered is not a table form")]
    NotATableForm,
    #[error("oracle found mixed factor degrees {degrees:?} mod {prime}")]
    OracleInconsistent { prime: u64, degrees: Vec<u32> },
    #[error("unknown form identifier {0:?}")]
    UnknownForm(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
