//! Matching a radicand against the nine forms that determine the rank of the
//! ambiguous class group, and against the three forms conjectured to give a
//! cyclic 5-class group of order 5.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{self, PrimePower};
use crate::quintic::{
    self, canonical_associate, lambda_ramified, AssociatePattern, FactoredRadicand, NormIndicators,
    PrimeClass, QStar, RamificationProfile,
};
use crate::{Error, Result};

/// The radicand forms. `R1_*` predict rank 1, `R2_*` rank 2.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FormClass {
    /// `5^e q1^2 q2`, `n ≢ ±1,±7 (25)`, not both `q ≡ ±7 (25)`.
    R1_1,
    /// `5^e p`, `n ≢ ±1,±7 (25)`, `p ≢ -1 (25)`.
    R1_2,
    /// `5^e q1`, `n ≢ ±1,±7 (25)`, `q1 ≡ ±7 (25)`.
    R1_3,
    /// `p^e q1`, `n ≡ ±1,±7 (25)`, `p ≢ -1`, `q1 ≢ ±7 (25)`.
    R1_4,
    /// `p^e`, `n ≡ ±1,±7 (25)`, `p ≡ -1 (25)`.
    R1_5,
    /// `q1^e q2`, `n ≡ ±1,±7 (25)`, both `q ≡ ±7 (25)`.
    R1_6,
    /// `5^e l`, `n ≢ ±1,±7 (25)`, `l ≢ 1 (25)`.
    R2_1,
    /// `l^e q1`, `n ≡ ±1,±7 (25)`, `q1 ≡ ±2,±3,±7 (25)`.
    R2_2,
    /// `l^e`, `n ≡ ±1,±7 (25)`, `l ≡ 1 (25)`.
    R2_3,
    NotCovered,
}

impl FormClass {
    pub const ALL: [FormClass; 10] = [
        FormClass::R1_1,
        FormClass::R1_2,
        FormClass::R1_3,
        FormClass::R1_4,
        FormClass::R1_5,
        FormClass::R1_6,
        FormClass::R2_1,
        FormClass::R2_2,
        FormClass::R2_3,
        FormClass::NotCovered,
    ];

    pub const TABLE_FORMS: [FormClass; 9] = [
        FormClass::R1_1,
        FormClass::R1_2,
        FormClass::R1_3,
        FormClass::R1_4,
        FormClass::R1_5,
        FormClass::R1_6,
        FormClass::R2_1,
        FormClass::R2_2,
        FormClass::R2_3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormClass::R1_1 => "R1_1",
            FormClass::R1_2 => "R1_2",
            FormClass::R1_3 => "R1_3",
            FormClass::R1_4 => "R1_4",
            FormClass::R1_5 => "R1_5",
            FormClass::R1_6 => "R1_6",
            FormClass::R2_1 => "R2_1",
            FormClass::R2_2 => "R2_2",
            FormClass::R2_3 => "R2_3",
            FormClass::NotCovered => "NotCovered",
        }
    }
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormClass::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownForm(s.to_string()))
    }
}

pub fn predicted_rank(form: FormClass) -> Option<u8> {
    match form {
        FormClass::R1_1
        | FormClass::R1_2
        | FormClass::R1_3
        | FormClass::R1_4
        | FormClass::R1_5
        | FormClass::R1_6 => Some(1),
        FormClass::R2_1 | FormClass::R2_2 | FormClass::R2_3 => Some(2),
        FormClass::NotCovered => None,
    }
}

/// Position of a prime in a matched form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Five,
    P,
    Q1,
    Q2,
    L,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Five => "5",
            Role::P => "p",
            Role::Q1 => "q1",
            Role::Q2 => "q2",
            Role::L => "l",
        }
    }
}

/// Result of [`match_form`]: the form, the associate `t` whose exponents
/// fit it literally, and the prime assigned to each role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormMatch {
    pub form: FormClass,
    pub associate_t: Option<u8>,
    pub roles: Vec<(Role, PrimePower)>,
}

impl FormMatch {
    pub fn prime_for(&self, role: Role) -> Option<PrimePower> {
        self.roles
            .iter()
            .find(|(r, _)| *r == role)
            .map(|(_, pp)| *pp)
    }

    fn not_covered() -> Self {
        FormMatch {
            form: FormClass::NotCovered,
            associate_t: None,
            roles: Vec::new(),
        }
    }
}

fn is_pm7(r: u64) -> bool {
    matches!(r % 25, 7 | 18)
}

/// One associate's primes grouped by class, exponents taken from the
/// associate.
struct Grouped {
    five: Option<PrimePower>,
    p: Vec<PrimePower>,
    q: Vec<PrimePower>,
    l: Vec<PrimePower>,
    in_gate: bool,
}

impl Grouped {
    fn new(r: &FactoredRadicand, pattern: &AssociatePattern) -> Self {
        let mut g = Grouped {
            five: None,
            p: Vec::new(),
            q: Vec::new(),
            l: Vec::new(),
            in_gate: !lambda_ramified(pattern.n_mod25),
        };
        for ((pp, class), &e) in r.entries().zip(&pattern.exponents) {
            let pp = PrimePower::new(pp.prime, e);
            match class {
                PrimeClass::Five => g.five = Some(pp),
                PrimeClass::PType => g.p.push(pp),
                PrimeClass::QType => g.q.push(pp),
                PrimeClass::LType => g.l.push(pp),
            }
        }
        g
    }

    fn shape(&self) -> (bool, usize, usize, usize) {
        (
            self.five.is_some(),
            self.p.len(),
            self.q.len(),
            self.l.len(),
        )
    }

    /// Every form this associate satisfies, with role assignments.
    fn matches(&self) -> Vec<(FormClass, Vec<(Role, PrimePower)>)> {
        use FormClass::*;
        let mut out = Vec::new();
        let gate = self.in_gate;
        match self.shape() {
            (true, 0, 2, 0) if !gate => {
                for (a, b) in [(0, 1), (1, 0)] {
                    let (q1, q2) = (self.q[a], self.q[b]);
                    if q1.exponent == 2
                        && q2.exponent == 1
                        && !(is_pm7(q1.prime) && is_pm7(q2.prime))
                    {
                        out.push((
                            R1_1,
                            vec![
                                (Role::Five, self.five.unwrap()),
                                (Role::Q1, q1),
                                (Role::Q2, q2),
                            ],
                        ));
                    }
                }
            }
            (true, 1, 0, 0) if !gate => {
                let p = self.p[0];
                if p.exponent == 1 && p.prime % 25 != 24 {
                    out.push((R1_2, vec![(Role::Five, self.five.unwrap()), (Role::P, p)]));
                }
            }
            (true, 0, 1, 0) if !gate => {
                let q1 = self.q[0];
                if q1.exponent == 1 && is_pm7(q1.prime) {
                    out.push((R1_3, vec![(Role::Five, self.five.unwrap()), (Role::Q1, q1)]));
                }
            }
            (false, 1, 1, 0) if gate => {
                let (p, q1) = (self.p[0], self.q[0]);
                if q1.exponent == 1 && p.prime % 25 != 24 && !is_pm7(q1.prime) {
                    out.push((R1_4, vec![(Role::P, p), (Role::Q1, q1)]));
                }
            }
            (false, 1, 0, 0) if gate => {
                let p = self.p[0];
                if p.prime % 25 == 24 {
                    out.push((R1_5, vec![(Role::P, p)]));
                }
            }
            (false, 0, 2, 0) if gate => {
                for (a, b) in [(0, 1), (1, 0)] {
                    let (q1, q2) = (self.q[a], self.q[b]);
                    if q2.exponent == 1 && is_pm7(q1.prime) && is_pm7(q2.prime) {
                        out.push((R1_6, vec![(Role::Q1, q1), (Role::Q2, q2)]));
                        break;
                    }
                }
            }
            (true, 0, 0, 1) if !gate => {
                let l = self.l[0];
                if l.exponent == 1 && l.prime % 25 != 1 {
                    out.push((R2_1, vec![(Role::Five, self.five.unwrap()), (Role::L, l)]));
                }
            }
            (false, 0, 1, 1) if gate => {
                let (l, q1) = (self.l[0], self.q[0]);
                if q1.exponent == 1 && matches!(q1.prime % 25, 2 | 3 | 7 | 18 | 22 | 23) {
                    out.push((R2_2, vec![(Role::L, l), (Role::Q1, q1)]));
                }
            }
            (false, 0, 0, 1) if gate => {
                let l = self.l[0];
                if l.prime % 25 == 1 {
                    out.push((R2_3, vec![(Role::L, l)]));
                }
            }
            _ => {}
        }
        out
    }
}

/// Every `(form, t)` pair over the four associates of `r`.
pub fn all_form_matches(r: &FactoredRadicand) -> Vec<(FormClass, u8)> {
    r.associate_patterns()
        .iter()
        .flat_map(|pattern| {
            Grouped::new(r, pattern)
                .matches()
                .into_iter()
                .map(move |(form, _)| (form, pattern.t))
        })
        .collect()
}

/// Tries associates `t = 1..=4` in order; returns the first literal match.
pub fn match_form(r: &FactoredRadicand) -> FormMatch {
    for pattern in r.associate_patterns() {
        if let Some((form, roles)) = Grouped::new(r, &pattern).matches().into_iter().next() {
            return FormMatch {
                form,
                associate_t: Some(pattern.t),
                roles,
            };
        }
    }
    FormMatch::not_covered()
}

pub fn is_conjecture_form(form: FormClass) -> bool {
    matches!(form, FormClass::R1_6 | FormClass::R1_3 | FormClass::R1_1)
}

/// Whether `r` has one of the shapes conjectured to give `C_{k,5} = Z/5Z`.
pub fn conjecture_match(r: &FactoredRadicand) -> bool {
    is_conjecture_form(match_form(r).form)
}

/// Full record for one radicand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// The integer as given (before exponent reduction).
    pub n: u128,
    pub canonical: FactoredRadicand,
    pub form_match: FormMatch,
    pub predicted_rank: Option<u8>,
    pub conjecture_cyclic: bool,
    pub profile: RamificationProfile,
    pub indicators: NormIndicators,
    /// Only for `NotCovered`.
    pub rank_bounds: Option<(u32, u32)>,
}

impl Classification {
    pub fn form(&self) -> FormClass {
        self.form_match.form
    }

    pub fn canonical_n(&self) -> u128 {
        self.canonical.n()
    }

    /// Checks the record against its own invariants.
    pub fn check(&self) -> std::result::Result<(), String> {
        let form = self.form();
        if self.predicted_rank != predicted_rank(form) {
            return Err(format!(
                "{form}: rank {:?} does not match form",
                self.predicted_rank
            ));
        }
        if form != FormClass::NotCovered {
            let rank = quintic::ambiguous_rank(self.profile.d, self.indicators.q_star)
                .map_err(|e| e.to_string())?;
            if Some(rank) != self.predicted_rank.map(i64::from) {
                return Err(format!(
                    "{form}: d - 3 + q* = {rank} but form predicts {:?}",
                    self.predicted_rank
                ));
            }
        } else if self.rank_bounds.is_none() {
            return Err("NotCovered without rank bounds".into());
        }
        if self.indicators.q_star == QStar::Two && !self.indicators.zeta_is_norm {
            return Err("q* = 2 but zeta is not a norm".into());
        }
        Ok(())
    }
}

pub fn classify(n: u64) -> Result<Classification> {
    let factorization = arith::factorize(n)?;
    classify_factors_with_n(factorization.factors(), n as u128)
}

/// Classifies a radicand given by its factorization; exponents may be
/// arbitrary and are reduced mod 5.
pub fn classify_factors(raw: &[PrimePower]) -> Result<Classification> {
    let n = raw
        .iter()
        .try_fold(1u128, |acc, pp| {
            arith::checked_pow_mul(acc, pp.prime, pp.exponent)
        })
        .ok_or(Error::Overflow)?;
    classify_factors_with_n(raw, n)
}

fn classify_factors_with_n(raw: &[PrimePower], n: u128) -> Result<Classification> {
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    let (canonical, _) = canonical_associate(raw).map_err(|e| match e {
        Error::DegenerateRadicand(_) => Error::DegenerateRadicand(n),
        e => e,
    })?;
    Ok(classify_canonical(n, canonical))
}

/// Classifies an already canonical radicand.
pub fn classify_canonical(n: u128, canonical: FactoredRadicand) -> Classification {
    let form_match = match_form(&canonical);
    let form = form_match.form;
    let profile = quintic::ramification_profile(&canonical);
    let zeta = quintic::zeta_norm(&canonical);
    let indicators = NormIndicators::new(zeta, quintic::q_star(form));
    let rank_bounds = (form == FormClass::NotCovered).then(|| quintic::rank_bounds(&profile, zeta));
    Classification {
        n,
        canonical,
        predicted_rank: predicted_rank(form),
        conjecture_cyclic: is_conjecture_form(form),
        form_match,
        profile,
        indicators,
        rank_bounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form_of(n: u64) -> FormClass {
        classify(n).unwrap().form()
    }

    #[test]
    fn match_form_examples() {
        assert_eq!(form_of(22201), FormClass::R1_5);
        assert_eq!(form_of(55), FormClass::R2_1);
        assert_eq!(form_of(57), FormClass::R1_4);
        assert_eq!(form_of(12), FormClass::NotCovered);
    }

    #[test]
    fn match_form_reports_roles() {
        let r = FactoredRadicand::from_u64(60).unwrap();
        let m = match_form(&r);
        assert_eq!(m.form, FormClass::R1_1);
        assert_eq!(m.associate_t, Some(1));
        assert_eq!(m.prime_for(Role::Q1), Some(PrimePower::new(2, 2)));
        assert_eq!(m.prime_for(Role::Q2), Some(PrimePower::new(3, 1)));
    }

    #[test]
    fn predicted_rank_examples() {
        assert_eq!(predicted_rank(FormClass::R1_3), Some(1));
        assert_eq!(predicted_rank(FormClass::R2_2), Some(2));
        assert_eq!(predicted_rank(FormClass::NotCovered), None);
    }

    #[test]
    fn conjecture_examples() {
        let r = |n| FactoredRadicand::from_u64(n).unwrap();
        assert!(conjecture_match(&r(175)));
        assert!(conjecture_match(&r(2107)));
        assert!(!conjecture_match(&r(22201)));
    }

    #[test]
    fn classify_examples() {
        let c = classify(118).unwrap();
        assert_eq!((c.form(), c.predicted_rank), (FormClass::R1_4, Some(1)));
        let c = classify(1775).unwrap();
        assert_eq!((c.form(), c.predicted_rank), (FormClass::R2_1, Some(2)));

        let a = classify(3249).unwrap();
        let b = classify(57).unwrap();
        assert_eq!(a.n, 3249);
        assert_eq!(a.canonical, b.canonical);
        assert_eq!(a.form_match, b.form_match);
        assert_eq!(a.profile, b.profile);
        assert_eq!(a.indicators, b.indicators);
    }

    #[test]
    fn classify_rejects_fifth_powers() {
        assert!(matches!(classify(32), Err(Error::DegenerateRadicand(32))));
        assert!(matches!(classify(1), Err(Error::TooSmall(1))));
        assert!(matches!(
            classify(7u64.pow(5) * 3u64.pow(10)),
            Err(Error::DegenerateRadicand(_))
        ));
    }

    #[test]
    fn not_covered_carries_bounds() {
        let c = classify(12).unwrap();
        assert_eq!(c.predicted_rank, None);
        assert_eq!(c.indicators.q_star, QStar::Unknown);
        assert!(c.rank_bounds.is_some());
        c.check().unwrap();
    }

    #[test]
    fn form_round_trips_through_str() {
        for f in FormClass::ALL {
            assert_eq!(f.as_str().parse::<FormClass>().unwrap(), f);
        }
        assert!("R3_1".parse::<FormClass>().is_err());
    }

    #[test]
    fn representative_of_each_form() {
        // smallest hand-checked representatives
        let cases = [
            (60, FormClass::R1_1),
            (145, FormClass::R1_2),
            (35, FormClass::R1_3),
            (57, FormClass::R1_4),
            (149, FormClass::R1_5),
            (301, FormClass::R1_6),
            (55, FormClass::R2_1),
            (943, FormClass::R2_2),
            (151, FormClass::R2_3),
        ];
        for (n, form) in cases {
            let c = classify(n).unwrap();
            assert_eq!(c.form(), form, "n = {n}");
            c.check().unwrap();
        }
    }

    #[test]
    fn r1_1_requires_exponent_ratio_two() {
        // 5 * 2 * 3: exponents (1, 1) never become (2, 1) under scaling
        assert_eq!(form_of(30), FormClass::NotCovered);
        // 5 * 2 * 3^2 has q1 = 3, q2 = 2
        let c = classify(90).unwrap();
        assert_eq!(c.form(), FormClass::R1_1);
        assert_eq!(c.form_match.prime_for(Role::Q1).unwrap().prime, 3);
    }
}
