//! The quintic Kummer extension `k = Q(n^(1/5), zeta_5)` over `k0 = Q(zeta_5)`
//! seen through the radicand: prime classes, splitting in `k0`, the ramified
//! prime count `d`, the norm indicators and the rank formula.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, checked_pow_mul, PrimeFactorization, PrimePower, Splitting};
use crate::classify::FormClass;
use crate::{Error, Result};

/// Residues mod 25 that are 5th powers of units: `{±1, ±7}`.
pub const FIFTH_POWER_RESIDUES: [u8; 4] = [1, 7, 18, 24];

/// Classification of a rational prime by its residue mod 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeClass {
    Five,
    /// `≡ 1 (mod 5)`, splits completely in `k0`.
    LType,
    /// `≡ -1 (mod 5)`, two primes of degree 2.
    PType,
    /// `≡ ±2 (mod 5)`, inert.
    QType,
}

impl PrimeClass {
    pub fn of_residue(r: u64) -> Self {
        match r % 5 {
            0 => PrimeClass::Five,
            1 => PrimeClass::LType,
            4 => PrimeClass::PType,
            _ => PrimeClass::QType,
        }
    }

    /// Residue degree `f` in `k0`; `None` for 5.
    pub fn residue_degree(self) -> Option<u32> {
        match self {
            PrimeClass::Five => None,
            PrimeClass::LType => Some(1),
            PrimeClass::PType => Some(2),
            PrimeClass::QType => Some(4),
        }
    }

    /// Whether a prime of this class with residue `r` mod 25 has all its
    /// `k0`-primes of norm `≡ 1 (mod 25)`.
    pub fn norm_condition(self, r: u64) -> bool {
        let r = r % 25;
        match self {
            PrimeClass::Five => true,
            PrimeClass::LType => r == 1,
            PrimeClass::PType => r == 24,
            PrimeClass::QType => r == 7 || r == 18,
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeClass::Five => "5",
            PrimeClass::LType => "l",
            PrimeClass::PType => "p",
            PrimeClass::QType => "q",
        })
    }
}

pub fn classify_prime(p: u64) -> Result<PrimeClass> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(PrimeClass::of_residue(p))
}

/// `(f, g)` of `p` in `k0` from its residue class.
pub fn splitting(p: u64) -> Result<Splitting> {
    match classify_prime(p)? {
        PrimeClass::Five => Err(Error::PrimeFive),
        class => {
            let f = class.residue_degree().expect("non-five class has a degree");
            Ok(Splitting { f, g: 4 / f })
        }
    }
}

/// A 5th-power-free radicand `n >= 2` with its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredRadicand {
    factorization: PrimeFactorization,
    classes: Vec<PrimeClass>,
    n_mod25: u8,
}

impl FactoredRadicand {
    pub fn new(factorization: PrimeFactorization) -> Result<Self> {
        if factorization.n() < 2 {
            return Err(Error::TooSmall(factorization.n()));
        }
        if factorization
            .factors()
            .iter()
            .any(|pp| !(1..=4).contains(&pp.exponent))
        {
            return Err(Error::NotFifthPowerFree);
        }
        let classes = factorization
            .factors()
            .iter()
            .map(|pp| PrimeClass::of_residue(pp.prime))
            .collect();
        let n_mod25 = (factorization.n() % 25) as u8;
        Ok(Self {
            factorization,
            classes,
            n_mod25,
        })
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        Self::new(arith::factorize(n)?)
    }

    pub fn n(&self) -> u128 {
        self.factorization.n()
    }

    pub fn factorization(&self) -> &PrimeFactorization {
        &self.factorization
    }

    pub fn factors(&self) -> &[PrimePower] {
        self.factorization.factors()
    }

    pub fn classes(&self) -> &[PrimeClass] {
        &self.classes
    }

    pub fn n_mod25(&self) -> u8 {
        self.n_mod25
    }

    pub fn entries(&self) -> impl Iterator<Item = (PrimePower, PrimeClass)> + '_ {
        self.factors()
            .iter()
            .copied()
            .zip(self.classes.iter().copied())
    }

    pub fn is_divisible_by_five(&self) -> bool {
        self.classes.contains(&PrimeClass::Five)
    }

    /// The radicand with every exponent `e` replaced by `t*e mod 5`.
    pub fn associate(&self, t: u8) -> Result<FactoredRadicand> {
        let factors = scale_exponents(self.factors(), t);
        FactoredRadicand::new(PrimeFactorization::from_factors(factors)?)
    }

    /// All four associates as exponent patterns with their residue mod 25,
    /// without materializing values that may not fit in 128 bits.
    pub(crate) fn associate_patterns(&self) -> [AssociatePattern; 4] {
        std::array::from_fn(|i| {
            let t = i as u8 + 1;
            let exponents: Vec<u32> = self
                .factors()
                .iter()
                .map(|pp| pp.exponent * t as u32 % 5)
                .collect();
            let n_mod25 = self
                .factors()
                .iter()
                .zip(&exponents)
                .fold(1u64, |acc, (pp, &e)| {
                    acc * arith::pow_mod(pp.prime % 25, e as u64, 25) % 25
                }) as u8;
            AssociatePattern {
                t,
                exponents,
                n_mod25,
            }
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct AssociatePattern {
    pub t: u8,
    pub exponents: Vec<u32>,
    pub n_mod25: u8,
}

fn scale_exponents(factors: &[PrimePower], t: u8) -> Vec<PrimePower> {
    factors
        .iter()
        .map(|pp| PrimePower::new(pp.prime, pp.exponent * t as u32 % 5))
        .filter(|pp| pp.exponent != 0)
        .collect()
}

/// Reduces exponents mod 5 and returns the canonical associate: the
/// numerically smallest of the four radicands `prod p^(t*e mod 5)`.
pub fn normalize(raw: &[PrimePower]) -> Result<FactoredRadicand> {
    canonical_associate(raw).map(|(r, _)| r)
}

/// Like [`normalize`], also returning the `t` that maps the reduced input
/// to the canonical radicand.
pub fn canonical_associate(raw: &[PrimePower]) -> Result<(FactoredRadicand, u8)> {
    let mut sorted = raw.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0].prime == w[1].prime) {
        return Err(Error::InvalidFactorization("repeated prime".into()));
    }
    let reduced = scale_exponents(&sorted, 1);
    for pp in &reduced {
        if !arith::is_prime(pp.prime) {
            return Err(Error::NotPrime(pp.prime));
        }
    }
    if reduced.is_empty() {
        let value = sorted
            .iter()
            .try_fold(1u128, |acc, pp| checked_pow_mul(acc, pp.prime, pp.exponent));
        return Err(Error::DegenerateRadicand(value.unwrap_or(u128::MAX)));
    }

    let mut best: Option<(u128, u8)> = None;
    for t in 1..=4u8 {
        let value = scale_exponents(&reduced, t)
            .iter()
            .try_fold(1u128, |acc, pp| checked_pow_mul(acc, pp.prime, pp.exponent));
        if let Some(v) = value {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, t));
            }
        }
    }
    let (_, t) = best.ok_or(Error::Overflow)?;
    let canonical = FactoredRadicand::new(PrimeFactorization::from_factors(scale_exponents(
        &reduced, t,
    ))?)?;
    Ok((canonical, t))
}

/// Whether `(1 - zeta_5)` ramifies in `k`: `n` is not `±1, ±7 (mod 25)`.
pub fn lambda_ramified(n_mod25: u8) -> bool {
    !FIFTH_POWER_RESIDUES.contains(&(n_mod25 % 25))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub prime: u64,
    pub f: u32,
    pub g: u32,
}

/// Splitting data of the primes dividing `n` (other than 5) and the count
/// `d` of primes of `k0` ramified in `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub entries: Vec<ProfileEntry>,
    pub lambda_ramified: bool,
    pub d: u32,
}

pub fn ramification_profile(r: &FactoredRadicand) -> RamificationProfile {
    let entries: Vec<ProfileEntry> = r
        .entries()
        .filter(|(_, class)| *class != PrimeClass::Five)
        .map(|(pp, class)| {
            let f = class.residue_degree().expect("non-five class has a degree");
            ProfileEntry {
                prime: pp.prime,
                f,
                g: 4 / f,
            }
        })
        .collect();
    let lambda = lambda_ramified(r.n_mod25());
    let d = entries.iter().map(|e| e.g).sum::<u32>() + lambda as u32;
    RamificationProfile {
        entries,
        lambda_ramified: lambda,
        d,
    }
}

/// Whether `zeta_5` is a norm from `k`: every prime divisor other than 5
/// meets the mod-25 condition of its class.
pub fn zeta_norm(r: &FactoredRadicand) -> bool {
    r.entries()
        .all(|(pp, class)| class.norm_condition(pp.prime))
}

/// The index `q*` of the rank formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QStar {
    Zero,
    One,
    Two,
    Unknown,
}

impl QStar {
    pub fn value(self) -> Option<u32> {
        match self {
            QStar::Zero => Some(0),
            QStar::One => Some(1),
            QStar::Two => Some(2),
            QStar::Unknown => None,
        }
    }
}

/// `q*` for each radicand form, as established case by case.
pub fn q_star(form: FormClass) -> QStar {
    use FormClass::*;
    match form {
        R1_1 | R1_2 | R1_4 => QStar::One,
        R1_3 | R1_5 | R1_6 => QStar::Two,
        R2_1 | R2_2 => QStar::Zero,
        R2_3 => QStar::One,
        NotCovered => QStar::Unknown,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormIndicators {
    pub zeta_is_norm: bool,
    pub q_star: QStar,
}

impl NormIndicators {
    pub fn new(zeta_is_norm: bool, q_star: QStar) -> Self {
        debug_assert!(q_star != QStar::Two || zeta_is_norm);
        Self {
            zeta_is_norm,
            q_star,
        }
    }
}

/// Rank of the ambiguous class group: `d - 3 + q*`.
pub fn ambiguous_rank(d: u32, q_star: QStar) -> Result<i64> {
    let q = q_star.value().ok_or(Error::IndeterminateRank)?;
    Ok(d as i64 - 3 + q as i64)
}

/// Range of `d - 3 + q*` over the admissible `q*` values, clamped at zero.
pub fn rank_bounds(profile: &RamificationProfile, zeta: bool) -> (u32, u32) {
    let base = profile.d as i64 - 3;
    let low = base.max(0);
    let high = (base + if zeta { 2 } else { 1 }).max(low);
    (low as u32, high as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radicand(n: u64) -> FactoredRadicand {
        FactoredRadicand::from_u64(n).unwrap()
    }

    fn pp(list: &[(u64, u32)]) -> Vec<PrimePower> {
        list.iter().map(|&(p, e)| PrimePower::new(p, e)).collect()
    }

    #[test]
    fn classify_prime_examples() {
        assert_eq!(classify_prime(5).unwrap(), PrimeClass::Five);
        assert_eq!(classify_prime(149).unwrap(), PrimeClass::PType);
        assert_eq!(classify_prime(7).unwrap(), PrimeClass::QType);
        assert_eq!(classify_prime(11).unwrap(), PrimeClass::LType);
        assert_eq!(classify_prime(3).unwrap(), PrimeClass::QType);
        assert!(matches!(classify_prime(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn splitting_examples() {
        assert_eq!(splitting(11).unwrap(), Splitting { f: 1, g: 4 });
        assert_eq!(splitting(149).unwrap(), Splitting { f: 2, g: 2 });
        assert_eq!(splitting(2).unwrap(), Splitting { f: 4, g: 1 });
        assert!(matches!(splitting(5), Err(Error::PrimeFive)));
    }

    #[test]
    fn normalize_examples() {
        let r = normalize(&pp(&[(3, 2), (19, 2)])).unwrap();
        assert_eq!(r.n(), 57);
        assert_eq!(normalize(&pp(&[(3, 1), (19, 1)])).unwrap().n(), 57);
        assert!(matches!(
            normalize(&pp(&[(2, 5)])),
            Err(Error::DegenerateRadicand(32))
        ));
        // 22201 = 149^2 has 149 as its smallest associate
        assert_eq!(normalize(&pp(&[(149, 2)])).unwrap().n(), 149);
    }

    #[test]
    fn normalize_reduces_exponents() {
        // 2^7 * 3^5 * 7 -> 2^2 * 7, associates 28, 2^4*7^2, 2*7^3, 2^3*7^4
        let (r, t) = canonical_associate(&pp(&[(2, 7), (3, 5), (7, 1)])).unwrap();
        assert_eq!(r.n(), 28);
        assert_eq!(t, 1);
        let (r, t) = canonical_associate(&pp(&[(2, 1), (7, 3)])).unwrap();
        assert_eq!(r.n(), 28);
        assert_eq!(t, 2);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(normalize(&pp(&[(4, 1)])).is_err());
        assert!(normalize(&pp(&[(3, 1), (3, 2)])).is_err());
        assert!(matches!(normalize(&[]), Err(Error::DegenerateRadicand(1))));
    }

    #[test]
    fn lambda_examples() {
        assert!(!lambda_ramified((22201 % 25) as u8));
        assert!(lambda_ramified(55 % 25));
        assert!(!lambda_ramified(24));
        assert!(lambda_ramified(0));
    }

    #[test]
    fn fifth_power_residues_are_fifth_powers() {
        let mut fifth: Vec<u8> = (1..25u64)
            .filter(|x| x % 5 != 0)
            .map(|x| arith::pow_mod(x, 5, 25) as u8)
            .collect();
        fifth.sort_unstable();
        fifth.dedup();
        assert_eq!(fifth, FIFTH_POWER_RESIDUES);
    }

    #[test]
    fn profile_examples() {
        let p = ramification_profile(&radicand(55));
        assert!(p.lambda_ramified);
        assert_eq!(p.d, 5);
        assert_eq!(
            p.entries,
            vec![ProfileEntry {
                prime: 11,
                f: 1,
                g: 4
            }]
        );

        let p = ramification_profile(&radicand(22201));
        assert!(!p.lambda_ramified);
        assert_eq!(p.d, 2);

        let p = ramification_profile(&radicand(60));
        assert!(p.lambda_ramified);
        assert_eq!(p.d, 3);
    }

    #[test]
    fn zeta_norm_examples() {
        assert!(zeta_norm(&radicand(2107)));
        assert!(!zeta_norm(&radicand(57)));
        assert!(zeta_norm(&radicand(22201)));
        assert!(zeta_norm(&radicand(5 * 151)));
    }

    #[test]
    fn zeta_norm_condition_matches_power_residue() {
        for class in [PrimeClass::LType, PrimeClass::PType, PrimeClass::QType] {
            let f = class.residue_degree().unwrap() as u64;
            for r in (0..25u64).filter(|r| PrimeClass::of_residue(*r) == class) {
                let power_is_one = arith::pow_mod(r, f, 25) == 1;
                assert_eq!(class.norm_condition(r), power_is_one, "{class:?} r={r}");
            }
        }
    }

    #[test]
    fn q_star_examples() {
        assert_eq!(q_star(FormClass::R1_5), QStar::Two);
        assert_eq!(q_star(FormClass::R1_2), QStar::One);
        assert_eq!(q_star(FormClass::NotCovered), QStar::Unknown);
    }

    #[test]
    fn ambiguous_rank_examples() {
        assert_eq!(ambiguous_rank(2, QStar::Two).unwrap(), 1);
        assert_eq!(ambiguous_rank(4, QStar::One).unwrap(), 2);
        assert_eq!(ambiguous_rank(3, QStar::Zero).unwrap(), 0);
        assert!(matches!(
            ambiguous_rank(3, QStar::Unknown),
            Err(Error::IndeterminateRank)
        ));
    }

    #[test]
    fn rank_bounds_examples() {
        let profile = |d| RamificationProfile {
            entries: vec![],
            lambda_ramified: false,
            d,
        };
        assert_eq!(rank_bounds(&profile(2), true), (0, 1));
        assert_eq!(rank_bounds(&profile(5), false), (2, 3));
        assert_eq!(rank_bounds(&profile(3), false), (0, 1));
    }

    #[test]
    fn associate_matches_pattern_residue() {
        let r = radicand(3249);
        for pattern in r.associate_patterns() {
            let a = r.associate(pattern.t).unwrap();
            assert_eq!(a.n_mod25(), pattern.n_mod25);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_radicand() -> impl Strategy<Value = Vec<PrimePower>> {
            let primes = [2u64, 3, 5, 7, 11, 13, 19, 29, 31, 43, 149, 151];
            proptest::sample::subsequence(primes.to_vec(), 1..=4).prop_flat_map(|ps| {
                let n = ps.len();
                proptest::collection::vec(1u32..=9, n).prop_map(move |es| {
                    ps.iter()
                        .zip(es)
                        .map(|(&p, e)| PrimePower::new(p, e))
                        .collect()
                })
            })
        }

        proptest! {
            #[test]
            fn normalize_is_idempotent(raw in small_radicand()) {
                if let Ok(r) = normalize(&raw) {
                    let again = normalize(r.factors()).unwrap();
                    prop_assert_eq!(&again, &r);
                    for t in 2..=4u8 {
                        let a = r.associate(t).unwrap();
                        prop_assert_eq!(&normalize(a.factors()).unwrap(), &r);
                    }
                }
            }

            #[test]
            fn d_decomposes(raw in small_radicand()) {
                if let Ok(r) = normalize(&raw) {
                    let profile = ramification_profile(&r);
                    let g_sum: u32 = r.entries()
                        .filter(|(_, c)| *c != PrimeClass::Five)
                        .map(|(pp, _)| splitting(pp.prime).unwrap().g)
                        .sum();
                    let lambda = !FIFTH_POWER_RESIDUES.contains(&((r.n() % 25) as u8));
                    prop_assert_eq!(profile.d, g_sum + lambda as u32);
                    if r.is_divisible_by_five() {
                        prop_assert!(profile.lambda_ramified);
                    }
                    prop_assert!(profile.d >= 1);
                }
            }
        }
    }

    #[test]
    fn gate_is_associate_invariant() {
        // Scaling exponents by t and dividing out 5th powers multiplies the
        // unit part by an element of {±1, ±7}; exhaust residues and t.
        for r in (1..25u64).filter(|r| r % 5 != 0) {
            for t in 1..=4u64 {
                for h in FIFTH_POWER_RESIDUES {
                    let scaled = arith::pow_mod(r, t, 25) * h as u64 % 25;
                    assert_eq!(
                        lambda_ramified(r as u8),
                        lambda_ramified(scaled as u8),
                        "r={r} t={t} h={h}"
                    );
                }
            }
        }
        for r in (0..25u8).filter(|r| r % 5 == 0) {
            assert!(lambda_ramified(r));
        }
    }
}
