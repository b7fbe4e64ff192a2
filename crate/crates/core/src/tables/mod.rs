//! Enumeration of classified radicands, table emission, and the embedded
//! example tables.

pub mod fixtures;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::arith::PrimePower;
use crate::classify::{classify_canonical, Classification, FormClass, Role};
use crate::quintic::{canonical_associate, QStar};
use crate::{Error, Result};

pub use fixtures::{
    confirmed_rows, fixtures, verify_fixtures, DiscrepancyReport, FindingKind, FixtureRow,
    GroupType,
};

/// Practical ceiling for enumeration bounds.
pub const MAX_BOUND: u64 = 1 << 40;

const CHUNK: u64 = 1 << 18;
const SUBCHUNK: u64 = 1 << 13;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Filter {
    pub form: Option<FormClass>,
    pub rank: Option<u8>,
}

impl Filter {
    pub fn form(form: FormClass) -> Self {
        Filter {
            form: Some(form),
            rank: None,
        }
    }

    pub fn rank(rank: u8) -> Self {
        Filter {
            form: None,
            rank: Some(rank),
        }
    }

    pub fn accepts(&self, c: &Classification) -> bool {
        self.form.is_none_or(|f| c.form() == f)
            && self.rank.is_none_or(|r| c.predicted_rank == Some(r))
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Factorizations of `lo..hi` by a segmented sieve; `None` marks integers
/// divisible by a 5th power. `primes` must cover `sqrt(hi)`.
fn factor_segment(lo: u64, hi: u64, primes: &[u64]) -> Vec<Option<Vec<PrimePower>>> {
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    let mut factors: Vec<Option<Vec<PrimePower>>> = vec![Some(Vec::new()); len];
    for &p in primes {
        if p * p >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first;
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0;
            while rest[i].is_multiple_of(p) {
                rest[i] /= p;
                e += 1;
            }
            if e >= 5 {
                factors[i] = None;
            } else if let Some(list) = factors[i].as_mut() {
                list.push(PrimePower::new(p, e));
            }
            m += p;
        }
    }
    for (i, slot) in factors.iter_mut().enumerate() {
        if let Some(list) = slot.as_mut() {
            if rest[i] > 1 {
                list.push(PrimePower::new(rest[i], 1));
            }
        }
    }
    factors
}

/// Streams classifications of the 5th-power-free `n` in `[2, bound]` in
/// increasing order. Unless `raw` is set, only canonical radicands (the
/// smallest of their four associates) are yielded, so each field appears
/// once.
pub struct Enumeration {
    next: u64,
    bound: u64,
    filter: Filter,
    raw: bool,
    primes: Arc<Vec<u64>>,
    buffer: VecDeque<Classification>,
}

impl Enumeration {
    fn fill(&mut self) {
        while self.buffer.is_empty() && self.next <= self.bound {
            let lo = self.next;
            let hi = lo.saturating_add(CHUNK).min(self.bound + 1);
            self.next = hi;
            let (filter, raw, primes) = (self.filter, self.raw, Arc::clone(&self.primes));
            let starts: Vec<u64> = (lo..hi).step_by(SUBCHUNK as usize).collect();
            let chunks: Vec<Vec<Classification>> = starts
                .into_par_iter()
                .map(|s| {
                    let e = (s + SUBCHUNK).min(hi);
                    factor_segment(s, e, &primes)
                        .into_iter()
                        .zip(s..e)
                        .filter_map(|(factors, n)| {
                            let (canonical, _) = canonical_associate(&factors?).ok()?;
                            if !raw && canonical.n() != n as u128 {
                                return None;
                            }
                            let c = classify_canonical(n as u128, canonical);
                            filter.accepts(&c).then_some(c)
                        })
                        .collect()
                })
                .collect();
            self.buffer.extend(chunks.into_iter().flatten());
        }
    }
}

impl Iterator for Enumeration {
    type Item = Classification;

    fn next(&mut self) -> Option<Classification> {
        self.fill();
        self.buffer.pop_front()
    }
}

pub fn enumerate_classified(bound: u64, filter: Filter) -> Result<Enumeration> {
    enumerate_with(bound, filter, false)
}

pub fn enumerate_with(bound: u64, filter: Filter, raw: bool) -> Result<Enumeration> {
    if bound > MAX_BOUND {
        return Err(Error::InvalidFactorization(format!(
            "enumeration bound {bound} exceeds 2^40"
        )));
    }
    Ok(Enumeration {
        next: 2,
        bound,
        filter,
        raw,
        primes: Arc::new(small_primes(isqrt(bound) + 1)),
        buffer: VecDeque::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (csv, md, json)")),
        }
    }
}

/// Flat machine-readable view of a [`Classification`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub n: u128,
    pub canonical_n: u128,
    pub factors: String,
    pub form: FormClass,
    pub predicted_rank: Option<u8>,
    pub d: u32,
    pub q_star: Option<u32>,
    pub zeta_norm: bool,
    pub lambda_ramified: bool,
    pub conjecture_cyclic: bool,
    pub associate_t: Option<u8>,
    pub rank_bounds: Option<(u32, u32)>,
}

impl From<&Classification> for ClassificationRecord {
    fn from(c: &Classification) -> Self {
        ClassificationRecord {
            n: c.n,
            canonical_n: c.canonical_n(),
            factors: c.canonical.factorization().to_string(),
            form: c.form(),
            predicted_rank: c.predicted_rank,
            d: c.profile.d,
            q_star: c.indicators.q_star.value(),
            zeta_norm: c.indicators.zeta_is_norm,
            lambda_ramified: c.profile.lambda_ramified,
            conjecture_cyclic: c.conjecture_cyclic,
            associate_t: c.form_match.associate_t,
            rank_bounds: c.rank_bounds,
        }
    }
}

pub const RECORD_COLUMNS: [&str; 12] = [
    "n",
    "canonical_n",
    "factors",
    "form",
    "predicted_rank",
    "d",
    "q_star",
    "zeta_norm",
    "lambda_ramified",
    "conjecture_cyclic",
    "associate_t",
    "rank_bounds",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

impl ClassificationRecord {
    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.canonical_n.to_string(),
            self.factors.clone(),
            self.form.to_string(),
            opt(self.predicted_rank),
            self.d.to_string(),
            opt(self.q_star),
            self.zeta_norm.to_string(),
            self.lambda_ramified.to_string(),
            self.conjecture_cyclic.to_string(),
            opt(self.associate_t),
            opt(self.rank_bounds.map(|(lo, hi)| format!("{lo}..{hi}"))),
        ]
    }

    /// Parses one row written by [`write_records`] in CSV format.
    pub fn from_csv_cells(cells: &[&str]) -> std::result::Result<Self, String> {
        if cells.len() != RECORD_COLUMNS.len() {
            return Err(format!(
                "expected {} cells, got {}",
                RECORD_COLUMNS.len(),
                cells.len()
            ));
        }
        fn num<T: FromStr>(s: &str) -> std::result::Result<T, String> {
            s.parse().map_err(|_| format!("bad number {s:?}"))
        }
        fn maybe<T: FromStr>(s: &str) -> std::result::Result<Option<T>, String> {
            if s == "none" {
                Ok(None)
            } else {
                num(s).map(Some)
            }
        }
        let rank_bounds = if cells[11] == "none" {
            None
        } else {
            let (lo, hi) = cells[11].split_once("..").ok_or("bad rank_bounds")?;
            Some((num(lo)?, num(hi)?))
        };
        Ok(ClassificationRecord {
            n: num(cells[0])?,
            canonical_n: num(cells[1])?,
            factors: cells[2].to_string(),
            form: cells[3].parse().map_err(|e: Error| e.to_string())?,
            predicted_rank: maybe(cells[4])?,
            d: num(cells[5])?,
            q_star: maybe(cells[6])?,
            zeta_norm: num(cells[7])?,
            lambda_ramified: num(cells[8])?,
            conjecture_cyclic: num(cells[9])?,
            associate_t: maybe(cells[10])?,
            rank_bounds,
        })
    }
}

/// Writes classification records in the given format.
pub fn write_records<'a>(
    records: impl IntoIterator<Item = &'a Classification>,
    format: Format,
) -> String {
    let records: Vec<ClassificationRecord> = records.into_iter().map(Into::into).collect();
    match format {
        Format::Json => serde_json::to_string_pretty(&records).expect("records serialize"),
        Format::Csv => {
            let mut out = RECORD_COLUMNS.join(",");
            out.push('\n');
            for r in &records {
                out.push_str(&r.cells().join(","));
                out.push('\n');
            }
            out
        }
        Format::Markdown => {
            let header: Vec<String> = RECORD_COLUMNS.iter().map(|c| c.to_string()).collect();
            let rows: Vec<Vec<String>> = records.iter().map(|r| r.cells()).collect();
            markdown(&header, &rows)
        }
    }
}

fn markdown(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out
}

/// Prime columns of each table, in the published order.
fn role_layout(form: FormClass) -> &'static [Role] {
    match form {
        FormClass::R1_1 | FormClass::R1_6 => &[Role::Q1, Role::Q2],
        FormClass::R1_2 | FormClass::R1_5 => &[Role::P],
        FormClass::R1_3 => &[Role::Q1],
        FormClass::R1_4 => &[Role::P, Role::Q1],
        FormClass::R2_1 | FormClass::R2_3 => &[Role::L],
        FormClass::R2_2 => &[Role::L, Role::Q1],
        FormClass::NotCovered => &[],
    }
}

/// Tables with a single prime column put `n` right after the prime.
fn n_after_first_prime(form: FormClass) -> bool {
    role_layout(form).len() == 1
}

fn signed_residue(r: u64, m: u64) -> i64 {
    let r = (r % m) as i64;
    if r > m as i64 / 2 {
        r - m as i64
    } else {
        r
    }
}

#[derive(Debug, Clone)]
struct PublishedRow {
    h5: u32,
    group: GroupType,
    n: u128,
}

fn published_by_canonical() -> HashMap<u128, PublishedRow> {
    let mut map = HashMap::new();
    for row in confirmed_rows() {
        let Some(n) = row.radicand() else { continue };
        let Ok(c) = u64::try_from(n)
            .map_err(|_| Error::Overflow)
            .and_then(crate::classify::classify)
        else {
            continue;
        };
        map.entry(c.canonical_n()).or_insert(PublishedRow {
            h5: row.paper_h5,
            group: row.paper_group,
            n,
        });
    }
    map
}

/// Column names of [`emit_table`] for a form.
pub fn table_columns(form: FormClass) -> Vec<String> {
    let mut cols = Vec::new();
    for (i, role) in role_layout(form).iter().enumerate() {
        let r = role.as_str();
        if n_after_first_prime(form) {
            cols.extend([
                r.to_string(),
                "n".to_string(),
                format!("{r}_mod5"),
                format!("{r}_mod25"),
            ]);
        } else {
            cols.extend([r.to_string(), format!("{r}_mod5"), format!("{r}_mod25")]);
            if i + 1 == role_layout(form).len() {
                cols.push("n".to_string());
            }
        }
    }
    cols.extend(
        [
            "factors",
            "associate_t",
            "d",
            "q_star",
            "h_k5",
            "C_k5",
            "rank",
            "table_n",
        ]
        .map(String::from),
    );
    cols
}

/// One table of radicands of `form` up to `bound`, columns laid out like the
/// published tables. Class number and group type come from the embedded
/// rows when the radicand matches one, and read `unverified` otherwise.
pub fn emit_table(form: FormClass, bound: u64, format: Format) -> Result<String> {
    if form == FormClass::NotCovered {
        return Err(Error::NotATableForm);
    }
    let published = published_by_canonical();
    let columns = table_columns(form);
    let rows: Vec<Vec<Value>> = enumerate_classified(bound, Filter::form(form))?
        .map(|c| table_row(&c, form, &published))
        .collect();

    Ok(match format {
        Format::Json => {
            let objects: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        columns.iter().cloned().zip(row.iter().cloned()).collect();
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_string_pretty(&objects).expect("table serializes")
        }
        Format::Csv => {
            let mut out = columns.join(",");
            out.push('\n');
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|v| cell(v, false)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
        Format::Markdown => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|row| row.iter().map(|v| cell(v, true)).collect())
                .collect();
            markdown(&columns, &cells)
        }
    })
}

fn cell(v: &Value, pretty: bool) -> String {
    match v {
        Value::String(s) if pretty && s == GroupType::Elementary25.code() => {
            GroupType::Elementary25.printed().to_string()
        }
        Value::String(s) if pretty && s == GroupType::Cyclic5.code() => {
            GroupType::Cyclic5.printed().to_string()
        }
        Value::String(s) => s.clone(),
        Value::Null => "none".to_string(),
        other => other.to_string(),
    }
}

fn table_row(
    c: &Classification,
    form: FormClass,
    published: &HashMap<u128, PublishedRow>,
) -> Vec<Value> {
    let mut row = Vec::new();
    let layout = role_layout(form);
    for (i, role) in layout.iter().enumerate() {
        let p = c.form_match.prime_for(*role).map_or(0, |pp| pp.prime);
        row.push(json!(p));
        if n_after_first_prime(form) {
            row.push(json!(c.canonical_n()));
        }
        row.push(json!(signed_residue(p, 5)));
        row.push(json!(signed_residue(p, 25)));
        if !n_after_first_prime(form) && i + 1 == layout.len() {
            row.push(json!(c.canonical_n()));
        }
    }
    let matched = published.get(&c.canonical_n());
    row.push(json!(c.canonical.factorization().to_string()));
    row.push(json!(c.form_match.associate_t));
    row.push(json!(c.profile.d));
    row.push(json!(c.indicators.q_star.value()));
    match matched {
        Some(pd) => {
            row.push(json!(pd.h5));
            row.push(json!(pd.group.code()));
        }
        None => {
            row.push(json!("unverified"));
            row.push(json!("unverified"));
        }
    }
    row.push(json!(c.predicted_rank));
    row.push(matched.map_or(json!("none"), |pd| json!(pd.n)));
    row
}

/// Checks that `q* = 2` only comes with `zeta` a norm.
pub fn q_star_two_implies_zeta(c: &Classification) -> bool {
    c.indicators.q_star != QStar::Two || c.indicators.zeta_is_norm
}
