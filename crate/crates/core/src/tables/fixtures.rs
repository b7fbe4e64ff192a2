//! The published example tables, embedded verbatim, and a checker that
//! recomputes every stated fact in a row.
//!
//! Storage format (`fixtures.tsv`), one row per line, tab separated:
//!
//! ```text
//! table_id  primes  n  factorization  h_k5  group  rank
//! ```
//!
//! * `primes`: comma-separated `role=prime:mod5:mod25`, residues as printed
//!   (they may be negative).
//! * `n`: the printed value of the radicand, or `-` when the table only
//!   prints a factorization.
//! * `factorization`: the printed factorization, `*` between factors and
//!   `^` for exponents.
//!
//! Lines starting with `#` are comments.

use std::fmt;

use serde::Serialize;

use crate::arith::{self, checked_pow_mul, PrimePower};
use crate::classify::{self, FormClass};
use crate::quintic::lambda_ramified;

const FIXTURES_TSV: &str = include_str!("fixtures.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatedPrime {
    pub role: String,
    pub prime: u64,
    pub mod5: i64,
    pub mod25: i64,
}

/// Group type column of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupType {
    /// `Z/5Z`
    Cyclic5,
    /// `(5,5)`
    Elementary25,
}

impl GroupType {
    pub fn code(self) -> &'static str {
        match self {
            GroupType::Cyclic5 => "Z5",
            GroupType::Elementary25 => "Z5xZ5",
        }
    }

    pub fn printed(self) -> &'static str {
        match self {
            GroupType::Cyclic5 => "Z/5Z",
            GroupType::Elementary25 => "(5,5)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureRow {
    pub table_id: String,
    /// Position of the row within its table, from 1.
    pub index: usize,
    pub primes: Vec<StatedPrime>,
    pub stated_n: Option<u64>,
    pub printed_factorization: String,
    pub paper_h5: u32,
    pub paper_group: GroupType,
    pub paper_rank: u8,
}

impl FixtureRow {
    /// The form each table illustrates.
    pub fn table_form(&self) -> FormClass {
        table_form(&self.table_id).expect("fixture table ids are validated on load")
    }

    pub fn printed_factors(&self) -> Vec<PrimePower> {
        parse_factorization(&self.printed_factorization).expect("validated on load")
    }

    pub fn printed_product(&self) -> Option<u128> {
        self.printed_factors()
            .iter()
            .try_fold(1u128, |acc, pp| checked_pow_mul(acc, pp.prime, pp.exponent))
    }

    /// The radicand the row is about: the printed value when there is one,
    /// else the printed factorization multiplied out.
    pub fn radicand(&self) -> Option<u128> {
        match self.stated_n {
            Some(n) => Some(n as u128),
            None => self.printed_product(),
        }
    }

    pub fn label(&self) -> String {
        let primes: Vec<String> = self
            .primes
            .iter()
            .map(|sp| format!("{}={}", sp.role, sp.prime))
            .collect();
        match self.stated_n {
            Some(n) => format!(
                "{} #{} ({}; {} = {})",
                self.table_id,
                self.index,
                primes.join(", "),
                n,
                self.printed_factorization
            ),
            None => format!(
                "{} #{} ({}; {})",
                self.table_id,
                self.index,
                primes.join(", "),
                self.printed_factorization
            ),
        }
    }
}

pub fn table_form(table_id: &str) -> Option<FormClass> {
    Some(match table_id {
        "3.1-T1" => FormClass::R1_5,
        "3.1-T2" => FormClass::R1_6,
        "3.1-T3" => FormClass::R1_3,
        "3.1-T4" => FormClass::R1_1,
        "3.1-T5" => FormClass::R1_4,
        "3.1-T6" => FormClass::R1_2,
        "3.2-T1" => FormClass::R2_1,
        "3.2-T2" => FormClass::R2_2,
        "3.2-T3" => FormClass::R2_3,
        _ => return None,
    })
}

fn parse_factorization(s: &str) -> Option<Vec<PrimePower>> {
    s.split('*')
        .map(|part| {
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b, e.parse().ok()?),
                None => (part, 1),
            };
            Some(PrimePower::new(base.trim().parse().ok()?, exp))
        })
        .collect()
}

fn parse_row(line: &str, index: usize) -> Result<FixtureRow, String> {
    let cols: Vec<&str> = line.split('\t').collect();
    let [table_id, primes, n, fact, h5, group, rank] = cols[..] else {
        return Err(format!("expected 7 columns, got {}", cols.len()));
    };
    table_form(table_id).ok_or_else(|| format!("unknown table {table_id}"))?;
    let primes = primes
        .split(',')
        .map(|entry| {
            let (role, rest) = entry.split_once('=').ok_or("missing role")?;
            let mut it = rest.split(':');
            let mut next = || -> Result<i64, String> {
                it.next()
                    .ok_or("short prime entry")?
                    .parse()
                    .map_err(|e| format!("{entry}: {e}"))
            };
            Ok(StatedPrime {
                role: role.to_string(),
                prime: next()? as u64,
                mod5: next()?,
                mod25: next()?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    parse_factorization(fact).ok_or_else(|| format!("bad factorization {fact}"))?;
    let paper_group = match group {
        "(5,5)" => GroupType::Elementary25,
        "Z/5Z" => GroupType::Cyclic5,
        g => return Err(format!("unknown group {g}")),
    };
    Ok(FixtureRow {
        table_id: table_id.to_string(),
        index,
        primes,
        stated_n: if n == "-" {
            None
        } else {
            Some(n.parse().map_err(|e| format!("n: {e}"))?)
        },
        printed_factorization: fact.to_string(),
        paper_h5: h5.parse().map_err(|e| format!("h: {e}"))?,
        paper_group,
        paper_rank: rank.parse().map_err(|e| format!("rank: {e}"))?,
    })
}

/// All embedded rows, in table order.
pub fn fixtures() -> Vec<FixtureRow> {
    let mut rows: Vec<FixtureRow> = Vec::new();
    for (lineno, line) in FIXTURES_TSV.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let table_id = line.split('\t').next().unwrap_or_default();
        let index = rows.iter().filter(|r| r.table_id == table_id).count() + 1;
        let row = parse_row(line, index)
            .unwrap_or_else(|e| panic!("fixtures.tsv line {}: {e}", lineno + 1));
        rows.push(row);
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindingKind {
    CompositeStatedPrime,
    ProductMismatch,
    ResidueMismatch,
    CongruenceGateFailure,
    RankMismatch,
    FormMismatch,
}

impl FindingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FindingKind::CompositeStatedPrime => "composite-stated-prime",
            FindingKind::ProductMismatch => "product-mismatch",
            FindingKind::ResidueMismatch => "residue-mismatch",
            FindingKind::CongruenceGateFailure => "congruence-gate-failure",
            FindingKind::RankMismatch => "rank-mismatch",
            FindingKind::FormMismatch => "form-mismatch",
        }
    }
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscrepancyReport {
    pub table_id: String,
    pub row_index: usize,
    pub row: String,
    pub kind: FindingKind,
    pub evidence: String,
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.row, self.kind, self.evidence)
    }
}

/// Every inconsistency found in one row.
pub fn check_row(row: &FixtureRow) -> Vec<DiscrepancyReport> {
    let mut out = Vec::new();
    let mut report = |kind, evidence: String| {
        out.push(DiscrepancyReport {
            table_id: row.table_id.clone(),
            row_index: row.index,
            row: row.label(),
            kind,
            evidence,
        })
    };

    for sp in &row.primes {
        if !arith::is_prime(sp.prime) {
            let f = arith::factorize(sp.prime)
                .map(|f| f.to_string())
                .unwrap_or_default();
            report(
                FindingKind::CompositeStatedPrime,
                format!("{} = {} is composite: {}", sp.role, sp.prime, f),
            );
        }
        let (r5, r25) = (sp.prime % 5, sp.prime % 25);
        if sp.mod5.rem_euclid(5) as u64 != r5 || sp.mod25.rem_euclid(25) as u64 != r25 {
            report(
                FindingKind::ResidueMismatch,
                format!(
                    "{} = {}: printed ({}, {}) mod (5, 25), actual ({}, {})",
                    sp.role, sp.prime, sp.mod5, sp.mod25, r5, r25
                ),
            );
        }
    }

    let printed = row.printed_factors();
    let product = row.printed_product();
    if let (Some(n), Some(prod)) = (row.stated_n, product) {
        if n as u128 != prod {
            report(
                FindingKind::ProductMismatch,
                format!(
                    "{} multiplies to {prod}, not {n}",
                    row.printed_factorization
                ),
            );
        }
    }
    let mut printed_primes: Vec<u64> = printed
        .iter()
        .map(|pp| pp.prime)
        .filter(|&p| p != 5)
        .collect();
    printed_primes.sort_unstable();
    let mut stated_primes: Vec<u64> = row.primes.iter().map(|sp| sp.prime).collect();
    stated_primes.sort_unstable();
    if printed_primes != stated_primes {
        report(
            FindingKind::ProductMismatch,
            format!(
                "printed factorization {} has primes {:?} besides 5, stated primes are {:?}",
                row.printed_factorization, printed_primes, stated_primes
            ),
        );
    }
    if let Some(n) = row.stated_n {
        // must factor over the stated primes (and 5 where the form has it)
        let mut rest = n;
        for p in stated_primes.iter().copied().chain([5]) {
            if p >= 2 {
                while rest % p == 0 {
                    rest /= p;
                }
            }
        }
        if rest != 1 && printed_primes == stated_primes {
            report(
                FindingKind::ProductMismatch,
                format!("{n} has the cofactor {rest} outside the stated primes"),
            );
        }
    }

    let form = row.table_form();
    let Some(n) = row.radicand() else {
        report(
            FindingKind::ProductMismatch,
            "radicand overflows 128 bits".into(),
        );
        return out;
    };
    let n_mod25 = (n % 25) as u8;
    let wants_gate = matches!(
        form,
        FormClass::R1_4 | FormClass::R1_5 | FormClass::R1_6 | FormClass::R2_2 | FormClass::R2_3
    );
    if wants_gate == lambda_ramified(n_mod25) {
        report(
            FindingKind::CongruenceGateFailure,
            format!(
                "n = {n} = {n_mod25} (mod 25); {form} needs n {} +-1, +-7 (mod 25)",
                if wants_gate { "in" } else { "outside" }
            ),
        );
    }

    let classification = match u64::try_from(n) {
        Ok(n) => classify::classify(n),
        Err(_) => classify::classify_factors(&printed),
    };
    match classification {
        Ok(c) => {
            if c.form() != form {
                report(
                    FindingKind::FormMismatch,
                    format!(
                        "n = {n} classifies as {} (canonical {}), table is {form}",
                        c.form(),
                        c.canonical.factorization()
                    ),
                );
            }
            if c.predicted_rank != Some(row.paper_rank) {
                report(
                    FindingKind::RankMismatch,
                    format!(
                        "n = {n}: predicted rank {}, printed {}",
                        c.predicted_rank
                            .map_or("none".to_string(), |r| r.to_string()),
                        row.paper_rank
                    ),
                );
            }
        }
        Err(e) => report(
            FindingKind::RankMismatch,
            format!("n = {n} cannot be classified: {e}"),
        ),
    }
    out
}

/// Checks every embedded row; rows absent from the result are confirmed.
pub fn verify_fixtures() -> Vec<DiscrepancyReport> {
    fixtures().iter().flat_map(check_row).collect()
}

/// Fixture rows with no findings.
pub fn confirmed_rows() -> Vec<FixtureRow> {
    fixtures()
        .into_iter()
        .filter(|row| check_row(row).is_empty())
        .collect()
}
