//! Verification suites: published tables, oracle equivalence, recurrences and
//! the conjectured column recurrences of the `A_k` tables.
//!
//! Every suite returns a [`VerificationReport`]. Mismatches are records with
//! status [`Status::Fail`], never errors; errors are reserved for oracle
//! budget overruns and invalid suite parameters.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::{
    bulk, centered_multinomial, centered_multinomial_gamma_terms, centered_multinomial_terms,
    count, fit_quasipolynomial, fit_sequence, v_by_recurrence, v_even, v_odd, Kind,
    QuasiPolynomial, Variable,
};
use crate::combinatorics::{binomial, odd_pow};
use crate::error::{Error, Result};
use crate::genfunc::{
    eta_partial_fraction_numerator, eta_row, gamma_row, gf_bulk, gf_d_bulk, gf_expand, gf_for,
    gf_surface, RationalGF,
};
use crate::lattice::{Family, LatticeSpec};
use crate::oracle::{count_bulk_pspace, count_surface, OracleConfig};
use crate::{BigCount, BigInt, IntPoly, Rational, RationalPoly};

/// Published values, one fixture per line.
pub const FIXTURES: &str = include_str!("../data/fixtures.txt");
/// Known misprints in published formulas.
pub const ERRATA: &str = include_str!("../data/errata.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The published value is wrong and the corrected value was confirmed.
    KnownErratum,
    /// Not enough history for the check (e.g. recurrence depth).
    NotApplicable,
}

impl Status {
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::KnownErratum => "KNOWN-ERRATUM",
            Status::NotApplicable => "N/A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub parameters: Vec<(String, String)>,
    pub expected: String,
    pub actual: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    fn new(check: &str, parameters: Vec<(String, String)>, expected: String, actual: String) -> Self {
        let status = if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckRecord {
            check: check.to_string(),
            parameters,
            expected,
            actual,
            status,
            note: None,
        }
    }

    fn not_applicable(check: &str, parameters: Vec<(String, String)>, note: &str) -> Self {
        CheckRecord {
            check: check.to_string(),
            parameters,
            expected: String::new(),
            actual: String::new(),
            status: Status::NotApplicable,
            note: Some(note.to_string()),
        }
    }

    /// Value of the named parameter, if the record has it.
    pub fn param(&self, name: &str) -> Option<&str> {
        self.parameters
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    fn parameter_string(&self) -> String {
        self.parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Orders numeric parameter values numerically so `k=9` sorts before `k=10`.
fn compare_values(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    }
}

fn compare_records(a: &CheckRecord, b: &CheckRecord) -> Ordering {
    a.check.cmp(&b.check).then_with(|| {
        for ((ka, va), (kb, vb)) in a.parameters.iter().zip(&b.parameters) {
            let o = ka.cmp(kb).then_with(|| compare_values(va, vb));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.parameters
            .len()
            .cmp(&b.parameters.len())
            .then_with(|| a.expected.cmp(&b.expected))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub passed: bool,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(suite: &str, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(compare_records);
        let passed = records.iter().all(|r| r.status.is_ok());
        VerificationReport {
            suite: suite.to_string(),
            passed,
            records,
        }
    }

    /// Concatenates several reports under a new suite name.
    pub fn combine(suite: &str, reports: Vec<VerificationReport>) -> Self {
        Self::new(suite, reports.into_iter().flat_map(|r| r.records).collect())
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }
}

impl fmt::Display for VerificationReport {
    /// Summary line, then every record that is not a plain pass.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {}: {} ({} checks: {} pass, {} fail, {} known erratum, {} not applicable)",
            self.suite,
            if self.passed { "PASS" } else { "FAIL" },
            self.records.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::KnownErratum),
            self.count(Status::NotApplicable),
        )?;
        for r in self.records.iter().filter(|r| r.status != Status::Pass) {
            if r.status == Status::NotApplicable {
                continue;
            }
            write!(f, "  {} {} [{}]", r.status.label(), r.check, r.parameter_string())?;
            write!(f, " expected {} got {}", r.expected, r.actual)?;
            if let Some(note) = &r.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn p(name: &str, value: impl ToString) -> (String, String) {
    (name.to_string(), value.to_string())
}

// ---------------------------------------------------------------------------
// Fixture data

/// What a fixture line describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subject {
    Count(Kind, LatticeSpec),
    /// Integer points of `[-n, n]^k` with even coordinate sum.
    EvenSum(u32),
    /// Integer points of `[-n, n]^k` with odd coordinate sum.
    OddSum(u32),
}

impl Subject {
    pub fn value(self, n: u64) -> BigCount {
        match self {
            Subject::Count(kind, spec) => count(spec, kind, n),
            Subject::EvenSum(k) => v_even(k, n),
            Subject::OddSum(k) => v_odd(k, n),
        }
    }

    fn fit(self, variable: Variable) -> Result<QuasiPolynomial> {
        match self {
            Subject::Count(kind, spec) => fit_quasipolynomial(spec, kind, variable),
            Subject::EvenSum(k) => fit_sequence(k, Kind::Bulk, variable, |n| v_even(k, n)),
            Subject::OddSum(k) => fit_sequence(k, Kind::Bulk, variable, |n| v_odd(k, n)),
        }
    }

    fn params(self) -> Vec<(String, String)> {
        match self {
            Subject::Count(kind, spec) => vec![
                p("kind", kind),
                p("family", spec.family()),
                p("rank", spec.rank()),
            ],
            Subject::EvenSum(k) => vec![p("kind", "veven"), p("family", "-"), p("rank", k)],
            Subject::OddSum(k) => vec![p("kind", "vodd"), p("family", "-"), p("rank", k)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residue {
    All,
    Even,
    Odd,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Residue::All => "all",
            Residue::Even => "even",
            Residue::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Sequence {
        subject: Subject,
        first_n: u64,
        values: Vec<BigCount>,
    },
    Polynomial {
        subject: Subject,
        variable: Variable,
        residue: Residue,
        coeffs: RationalPoly,
        erratum: Option<String>,
    },
    Eta {
        k: u32,
        values: Vec<BigInt>,
    },
    Gamma {
        k: u32,
        values: Vec<BigInt>,
    },
    GeneratingFunction {
        kind: Kind,
        spec: LatticeSpec,
        gf: RationalGF,
    },
}

fn parse_err(line: usize, msg: impl fmt::Display) -> Error {
    Error::InvalidInput(format!("fixture line {line}: {msg}"))
}

fn parse_num<T: FromStr>(line: usize, field: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| parse_err(line, format!("cannot parse {field:?}")))
}

fn parse_subject(line: usize, kind: &str, family: &str, rank: &str) -> Result<Subject> {
    let rank: u32 = parse_num(line, rank)?;
    match kind {
        "veven" | "vodd" => {
            if family != "-" {
                return Err(parse_err(line, "parity counts take family `-`"));
            }
            Ok(if kind == "veven" {
                Subject::EvenSum(rank)
            } else {
                Subject::OddSum(rank)
            })
        }
        _ => {
            let kind: Kind = kind.parse().map_err(|e| parse_err(line, e))?;
            let family: Family = family.parse().map_err(|e| parse_err(line, e))?;
            let spec = LatticeSpec::new(family, rank).map_err(|e| parse_err(line, e))?;
            Ok(Subject::Count(kind, spec))
        }
    }
}

fn parse_spec(line: usize, family: &str, rank: &str) -> Result<LatticeSpec> {
    let family: Family = family.parse().map_err(|e| parse_err(line, e))?;
    LatticeSpec::new(family, parse_num(line, rank)?).map_err(|e| parse_err(line, e))
}

/// Parses the fixture format described at the top of the data file.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let f: Vec<&str> = content.split_whitespace().collect();
        let need = |n: usize| {
            if f.len() < n {
                Err(parse_err(line, format!("expected at least {n} fields")))
            } else {
                Ok(())
            }
        };
        let fixture = match f[0] {
            "seq" => {
                need(6)?;
                Fixture::Sequence {
                    subject: parse_subject(line, f[1], f[2], f[3])?,
                    first_n: parse_num(line, f[4])?,
                    values: f[5..].iter().map(|v| parse_num(line, v)).collect::<Result<_>>()?,
                }
            }
            "poly" => {
                need(7)?;
                let mut rest = &f[6..];
                let mut erratum = None;
                if let Some(tag) = rest.last().and_then(|t| t.strip_prefix("erratum=")) {
                    erratum = Some(tag.to_string());
                    rest = &rest[..rest.len() - 1];
                }
                let residue = match f[5] {
                    "all" => Residue::All,
                    "even" => Residue::Even,
                    "odd" => Residue::Odd,
                    other => return Err(parse_err(line, format!("unknown residue {other:?}"))),
                };
                Fixture::Polynomial {
                    subject: parse_subject(line, f[1], f[2], f[3])?,
                    variable: f[4].parse().map_err(|e| parse_err(line, e))?,
                    residue,
                    coeffs: RationalPoly::new(
                        rest.iter().map(|c| parse_num::<Rational>(line, c)).collect::<Result<_>>()?,
                    ),
                    erratum,
                }
            }
            "eta" | "gamma" => {
                need(3)?;
                let k = parse_num(line, f[1])?;
                let values = f[2..].iter().map(|v| parse_num(line, v)).collect::<Result<_>>()?;
                if f[0] == "eta" {
                    Fixture::Eta { k, values }
                } else {
                    Fixture::Gamma { k, values }
                }
            }
            "gf" => {
                need(7)?;
                let numerator =
                    IntPoly::new(f[6..].iter().map(|v| parse_num(line, v)).collect::<Result<_>>()?);
                Fixture::GeneratingFunction {
                    kind: f[1].parse().map_err(|e| parse_err(line, e))?,
                    spec: parse_spec(line, f[2], f[3])?,
                    gf: RationalGF::new(numerator, parse_num(line, f[4])?, parse_num(line, f[5])?),
                }
            }
            other => return Err(parse_err(line, format!("unknown record type {other:?}"))),
        };
        out.push(fixture);
    }
    Ok(out)
}

/// A misprinted formula and the value that replaces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub id: String,
    pub location: String,
    pub printed: String,
    pub kind: Kind,
    pub family: Family,
    pub rank: u32,
    pub n: u64,
    pub corrected: BigCount,
    pub evidence: String,
}

/// Parses `id | location | printed | <kind> <family> <rank> <n> <count> | evidence`.
pub fn parse_errata(text: &str) -> Result<Vec<Erratum>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = content.split('|').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(parse_err(line, "errata lines have five `|`-separated fields"));
        }
        let v: Vec<&str> = parts[3].split_whitespace().collect();
        if v.len() != 5 {
            return Err(parse_err(line, "corrected value is `<kind> <family> <rank> <n> <count>`"));
        }
        out.push(Erratum {
            id: parts[0].to_string(),
            location: parts[1].to_string(),
            printed: parts[2].to_string(),
            kind: v[0].parse().map_err(|e| parse_err(line, e))?,
            family: v[1].parse().map_err(|e| parse_err(line, e))?,
            rank: parse_num(line, v[2])?,
            n: parse_num(line, v[3])?,
            corrected: parse_num(line, v[4])?,
            evidence: parts[4].to_string(),
        });
    }
    Ok(out)
}

fn oracle_count(spec: LatticeSpec, kind: Kind, n: u64) -> Result<BigCount> {
    let config = OracleConfig::new(spec, n);
    match kind {
        Kind::Bulk => count_bulk_pspace(&config),
        Kind::Surface => count_surface(&config),
    }
}

fn ints(values: &[BigInt]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn check_polynomial(
    subject: Subject,
    variable: Variable,
    residue: Residue,
    printed: &RationalPoly,
    erratum: Option<&Erratum>,
) -> Result<CheckRecord> {
    let mut params = subject.params();
    params.push(p("variable", variable.symbol()));
    params.push(p("residue", residue));
    let fit = subject.fit(variable)?;
    let component = match residue {
        Residue::All if fit.period() != 1 => None,
        Residue::All | Residue::Even => Some(fit.component(0)),
        Residue::Odd => Some(fit.component(1)),
    };
    let actual = match component {
        Some(c) => c.to_string_in(variable.symbol()),
        None => format!("period {}: {fit}", fit.period()),
    };
    let expected = printed.to_string_in(variable.symbol());
    let record = CheckRecord::new("published polynomial", params, expected, actual);
    let Some(e) = erratum else {
        return Ok(record);
    };
    if record.status == Status::Pass {
        return Ok(record
            .with_status(Status::Fail)
            .with_note(format!("listed as erratum {} but the printed form matches", e.id)));
    }
    let spec = LatticeSpec::new(e.family, e.rank)?;
    let closed = count(spec, e.kind, e.n);
    let oracle = oracle_count(spec, e.kind, e.n)?;
    let status = if closed == e.corrected && oracle == e.corrected {
        Status::KnownErratum
    } else {
        Status::Fail
    };
    Ok(record.with_status(status).with_note(format!(
        "erratum {}: corrected {} {} at n={} is {}; closed form {}, enumeration {}",
        e.id, e.kind, spec, e.n, e.corrected, closed, oracle
    )))
}

impl CheckRecord {
    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

fn check_fixture(fixture: &Fixture, errata: &[Erratum]) -> Result<Vec<CheckRecord>> {
    Ok(match fixture {
        Fixture::Sequence {
            subject,
            first_n,
            values,
        } => values
            .iter()
            .enumerate()
            .map(|(i, want)| {
                let n = first_n + i as u64;
                let mut params = subject.params();
                params.push(p("n", n));
                CheckRecord::new("published value", params, want.to_string(), subject.value(n).to_string())
            })
            .collect(),
        Fixture::Polynomial {
            subject,
            variable,
            residue,
            coeffs,
            erratum,
        } => {
            let e = match erratum {
                Some(id) => Some(errata.iter().find(|e| &e.id == id).ok_or_else(|| {
                    Error::InvalidInput(format!("fixture refers to unknown erratum {id}"))
                })?),
                None => None,
            };
            vec![check_polynomial(*subject, *variable, *residue, coeffs, e)?]
        }
        Fixture::Eta { k, values } => vec![CheckRecord::new(
            "inverse binomial coefficients",
            vec![p("k", k)],
            ints(values),
            ints(&eta_row(*k)?),
        )],
        Fixture::Gamma { k, values } => {
            let row = gamma_row(*k)?;
            let prefix = &row[..values.len().min(row.len())];
            vec![CheckRecord::new(
                "generating function numerator",
                vec![p("k", k), p("printed-terms", values.len())],
                ints(values),
                ints(prefix),
            )]
        }
        Fixture::GeneratingFunction { kind, spec, gf } => vec![CheckRecord::new(
            "published generating function",
            vec![p("kind", kind), p("family", spec.family()), p("rank", spec.rank())],
            gf.to_string(),
            gf_for(*spec, *kind).to_string(),
        )],
    })
}

/// Compares closed forms against every embedded published value.
pub fn verify_tables() -> Result<VerificationReport> {
    let fixtures = parse_fixtures(FIXTURES)?;
    let errata = parse_errata(ERRATA)?;
    let records: Vec<Vec<CheckRecord>> = fixtures
        .par_iter()
        .map(|f| check_fixture(f, &errata))
        .collect::<Result<_>>()?;
    Ok(VerificationReport::new("tables", records.into_iter().flatten().collect()))
}

// ---------------------------------------------------------------------------
// Oracle equivalence

/// Every spec whose ambient space has dimension at most 8.
pub fn oracle_specs() -> Vec<LatticeSpec> {
    let ranges: [(Family, std::ops::RangeInclusive<u32>); 5] = [
        (Family::A, 1..=7),
        (Family::D, 2..=8),
        (Family::Dstar, 2..=8),
        (Family::E, 6..=8),
        (Family::Z, 1..=8),
    ];
    ranges
        .into_iter()
        .flat_map(|(f, r)| r.map(move |k| LatticeSpec::new(f, k).expect("valid range")))
        .collect()
}

/// Brute-force bulk counts equal the closed forms for `n = 0..=max_n`.
pub fn verify_oracle_equivalence(max_n: u64) -> Result<VerificationReport> {
    let jobs: Vec<(LatticeSpec, u64)> = oracle_specs()
        .into_iter()
        .flat_map(|s| (0..=max_n).map(move |n| (s, n)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(spec, n)| {
            let oracle = count_bulk_pspace(&OracleConfig::new(spec, n))?;
            Ok(CheckRecord::new(
                "enumeration equals closed form",
                vec![p("family", spec.family()), p("rank", spec.rank()), p("n", n)],
                bulk(spec, n).to_string(),
                oracle.to_string(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("oracle", records))
}

/// `E_6 = (2n+1)·A_5`, `E_7 = A_7`, `E_8 = V_8^even`, by closed forms up to
/// `closed_max` and by enumeration up to `oracle_max`.
pub fn verify_e_reductions(closed_max: u64, oracle_max: u64) -> Result<VerificationReport> {
    let a = |k| LatticeSpec::new(Family::A, k).expect("valid");
    let e = |k| LatticeSpec::new(Family::E, k).expect("valid");
    let reduced = |k: u32, n: u64| -> BigCount {
        match k {
            6 => BigCount::from(2 * n + 1) * bulk(a(5), n),
            7 => bulk(a(7), n),
            _ => v_even(8, n),
        }
    };
    let mut records = Vec::new();
    for k in 6..=8 {
        for n in 0..=closed_max {
            records.push(CheckRecord::new(
                "E reduction (closed form)",
                vec![p("rank", k), p("n", n)],
                reduced(k, n).to_string(),
                bulk(e(k), n).to_string(),
            ));
        }
    }
    let jobs: Vec<(u32, u64)> = (6..=8).flat_map(|k| (0..=oracle_max).map(move |n| (k, n))).collect();
    let oracle = jobs
        .par_iter()
        .map(|&(k, n)| {
            Ok(CheckRecord::new(
                "E reduction (enumeration)",
                vec![p("rank", k), p("n", n)],
                reduced(k, n).to_string(),
                count_bulk_pspace(&OracleConfig::new(e(k), n))?.to_string(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    records.extend(oracle);
    Ok(VerificationReport::new("e-reductions", records))
}

// ---------------------------------------------------------------------------
// Recurrences

fn signed_bulk_a(k: u32, n: u64) -> BigInt {
    BigInt::from(centered_multinomial(k + 1, n))
}

/// `A_k(n) = Σ_{j=1}^{k+1} C(k+1, j) (-1)^{j+1} A_k(n-j)` for `n > k`.
pub fn verify_polynomial_recurrence(k_max: u32, n_max: u64) -> VerificationReport {
    let mut records = Vec::new();
    for k in 1..=k_max {
        for n in 0..=n_max {
            let params = vec![p("k", k), p("n", n)];
            if n <= u64::from(k) {
                records.push(CheckRecord::not_applicable(
                    "binomial recurrence",
                    params,
                    "needs k+1 earlier terms",
                ));
                continue;
            }
            let rhs: BigInt = (1..=u64::from(k) + 1)
                .map(|j| {
                    let term = BigInt::from(binomial(u64::from(k) + 1, j)) * signed_bulk_a(k, n - j);
                    if j % 2 == 1 {
                        term
                    } else {
                        -term
                    }
                })
                .sum();
            records.push(CheckRecord::new(
                "binomial recurrence",
                params,
                signed_bulk_a(k, n).to_string(),
                rhs.to_string(),
            ));
        }
    }
    VerificationReport::new("polynomial-recurrence", records)
}

/// The Gamma-function form of the centered multinomial agrees term by term
/// with the binomial form, for `A_{k}` with `k ≤ k_max`.
pub fn verify_gamma_form(k_max: u32, n_max: u64) -> VerificationReport {
    let mut records = Vec::new();
    for k in 1..=k_max {
        for n in 0..=n_max {
            let binom: Vec<Rational> = centered_multinomial_terms(k + 1, n)
                .into_iter()
                .map(Rational::from_integer)
                .collect();
            let gamma = centered_multinomial_gamma_terms(k + 1, n);
            let show = |t: &[Rational]| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            records.push(CheckRecord::new(
                "factorial form",
                vec![p("k", k), p("n", n)],
                show(&binom),
                show(&gamma),
            ));
        }
    }
    VerificationReport::new("factorial-form", records)
}

/// Even-sum closed form against the axis-by-axis recurrence.
pub fn verify_parity_recurrence(k_max: u32, n_max: u64) -> VerificationReport {
    let mut records = Vec::new();
    for k in 1..=k_max {
        for n in 0..=n_max {
            let (even, odd) = v_by_recurrence(k, n);
            let total_ok = &even + &odd == odd_pow(n, k);
            let mut r = CheckRecord::new(
                "even-sum closed form",
                vec![p("k", k), p("n", n)],
                even.to_string(),
                v_even(k, n).to_string(),
            );
            if !total_ok {
                r = r.with_status(Status::Fail).with_note("even + odd is not (2n+1)^k".into());
            }
            records.push(r);
        }
    }
    VerificationReport::new("parity-recurrence", records)
}

/// Linear recurrences published for `D_3` and `D_4`, checked on the
/// generating-function expansions for `n ≤ n_max`.
pub fn verify_d_recurrences(n_max: usize) -> Result<VerificationReport> {
    // (name, series, coefficients c_1.., first n where it applies)
    let d3 = gf_d_bulk(3)?;
    let d4 = gf_d_bulk(4)?;
    let cases: [(&str, RationalGF, &[i64], usize); 4] = [
        ("D3 bulk", d3.clone(), &[3, -2, -2, 3, -1], 5),
        ("D3 surface", gf_surface(&d3)?, &[2, 0, -2, 1], 5),
        ("D4 bulk", d4.clone(), &[5, -10, 10, -5, 1], 5),
        ("D4 surface", gf_surface(&d4)?, &[4, -6, 4, -1], 5),
    ];
    let mut records = Vec::new();
    for (name, gf, coeffs, from) in cases {
        let s = gf.expand_signed(n_max + 1);
        for n in from..=n_max {
            let rhs: BigInt = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| &s[n - 1 - i] * BigInt::from(*c))
                .sum();
            records.push(CheckRecord::new(
                "linear recurrence",
                vec![p("sequence", name), p("n", n)],
                s[n].to_string(),
                rhs.to_string(),
            ));
        }
    }
    Ok(VerificationReport::new("d-recurrences", records))
}

/// Series expansions of every generating function against closed forms,
/// the η partial-fraction identity and the inverse binomial identity.
pub fn verify_generating_functions(terms: usize) -> Result<VerificationReport> {
    let mut records = Vec::new();
    for f in Family::ALL {
        for k in f.min_rank()..=10 {
            let Ok(spec) = LatticeSpec::new(f, k) else {
                continue;
            };
            for kind in [Kind::Bulk, Kind::Surface] {
                let series = gf_expand(&gf_for(spec, kind), terms)?;
                let closed: Vec<BigCount> = (0..terms as u64).map(|n| count(spec, kind, n)).collect();
                let first_bad = (0..terms).find(|&i| series[i] != closed[i]);
                let (expected, actual) = match first_bad {
                    None => ("all equal".to_string(), "all equal".to_string()),
                    Some(i) => (format!("{}@{i}", closed[i]), format!("{}@{i}", series[i])),
                };
                records.push(CheckRecord::new(
                    "series expansion equals closed form",
                    vec![p("kind", kind), p("family", f), p("rank", k), p("terms", terms)],
                    expected,
                    actual,
                ));
            }
            records.push(CheckRecord::new(
                "numerator starts with 1",
                vec![p("family", f), p("rank", k)],
                "1".into(),
                gf_bulk(spec).numerator().coeff(0).to_string(),
            ));
        }
    }
    for k in 1..=8 {
        records.push(CheckRecord::new(
            "partial fractions",
            vec![p("k", k)],
            IntPoly::new(gamma_row(k)?).to_string_in("x"),
            eta_partial_fraction_numerator(k)?.to_string_in("x"),
        ));
        let row = eta_row(k)?;
        for n in 0..=12_u64 {
            let sum: BigInt = (1..=n.min(u64::from(k)))
                .map(|j| BigInt::from(binomial(n, j)) * &row[j as usize - 1])
                .sum();
            records.push(CheckRecord::new(
                "inverse binomial identity",
                vec![p("k", k), p("n", n)],
                signed_bulk_a(k, n).to_string(),
                (sum * BigInt::from(2) + BigInt::one()).to_string(),
            ));
        }
    }
    for k in 1..=10 {
        let row = gamma_row(k)?;
        let mut rev = row.clone();
        rev.reverse();
        records.push(CheckRecord::new(
            "numerator symmetry",
            vec![p("k", k)],
            ints(&row),
            ints(&rev),
        ));
    }
    Ok(VerificationReport::new("generating-functions", records))
}

// ---------------------------------------------------------------------------
// Conjectured column recurrences

type Coefficients = fn(i128) -> Vec<i128>;

/// Coefficients `c_0 .. c_d` of `Σ_j c_j(k) A_{k-j}(n) = 0` along column `n`.
fn bulk_column_recurrence(n: u64) -> Option<Coefficients> {
    match n {
        1 => Some(|k| vec![k + 1, -(2 * k + 1), -3 * k]),
        2 => Some(|k| {
            vec![
                2 * (k + 1) * (2 * k + 1),
                k * k - 49 * k - 2,
                5 * (-21 * k * k + 37 * k - 18),
                -25 * (k - 1) * (k - 4),
                125 * (k - 1) * (k - 2),
            ]
        }),
        3 => Some(|k| {
            let k2 = k * k;
            let k3 = k2 * k;
            vec![
                3 * (3 * k + 2) * (3 * k + 1) * (k + 1),
                41 * k3 - 600 * k2 - 191 * k - 6,
                7 * (-383 * k3 + 1458 * k2 - 1927 * k + 840),
                49 * (-83 * k3 + 1068 * k2 - 4321 * k + 5040),
                343 * (199 * k3 - 1890 * k2 + 6017 * k - 6390),
                2401 * (k - 3) * (43 * k2 - 351 * k + 722),
                -16807 * (k - 3) * (k - 4) * (5 * k - 19),
                -117649 * (k - 5) * (k - 4) * (k - 3),
            ]
        }),
        _ => None,
    }
}

fn surface_column_recurrence(n: u64) -> Option<Coefficients> {
    match n {
        1 => Some(|k| vec![(k + 1) * (k - 1), -(3 * k * k - k - 1), -k * (k - 2), 3 * k * (k - 1)]),
        2 => Some(|k| {
            let k2 = k * k;
            let k3 = k2 * k;
            let k4 = k3 * k;
            vec![
                2 * (k - 1) * (2 * k + 1) * (k + 1) * (65576 * k - 74745),
                262304 * k4 - 10212201 * k3 + 21353744 * k2 - 8959001 * k - 149490,
                2 * (-6440305 * k4 + 44418225 * k3 - 87651471 * k2 + 52631106 * k - 4105233),
                20 * (811225 * k4 - 3988621 * k3 + 5814523 * k2 + 2441684 * k - 8566578),
                2 * (24847058 * k4 - 190384802 * k3 + 480247197 * k2 - 462996527 * k
                    + 158679414),
                -(k - 3) * (20387704 * k3 - 72824267 * k2 - 29485137 * k + 331041750),
                -10 * (k - 3) * (k - 4) * (3707581 * k2 - 5729012 * k + 3352341),
                150 * (k - 3) * (k - 4) * (k - 5) * (26006 * k + 104375),
            ]
        }),
        _ => None,
    }
}

/// `A_k^b(n)` extended to `k = 0` (a single point).
fn column_bulk(k: u32, n: u64) -> BigInt {
    BigInt::from(centered_multinomial(k + 1, n))
}

fn column_surface(k: u32, n: u64) -> BigInt {
    if n == 0 {
        BigInt::one()
    } else {
        column_bulk(k, n) - column_bulk(k, n - 1)
    }
}

fn conjecture_report(
    suite: &str,
    check: &str,
    n: u64,
    k_max: u32,
    coeffs: Coefficients,
    value: fn(u32, u64) -> BigInt,
) -> VerificationReport {
    let depth = (coeffs(0).len() - 1) as u32;
    let records = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let params = vec![p("n", n), p("k", k)];
            if k < depth {
                return CheckRecord::not_applicable(check, params, "recurrence reaches below A_0");
            }
            let residual: BigInt = coeffs(i128::from(k))
                .into_iter()
                .enumerate()
                .map(|(j, c)| BigInt::from(c) * value(k - j as u32, n))
                .sum();
            CheckRecord::new(check, params, "0".into(), residual.to_string())
        })
        .collect();
    VerificationReport::new(suite, records)
}

/// Exact residuals of the conjectured bulk column recurrence for column
/// `n ∈ {1, 2, 3}`, for every `k ≤ k_max`. Pass means the residual is 0.
pub fn verify_conjecture_bulk(n: u64, k_max: u32) -> Result<VerificationReport> {
    let coeffs = bulk_column_recurrence(n)
        .ok_or_else(|| Error::InvalidInput(format!("no bulk column recurrence for n = {n}")))?;
    if k_max < 8 {
        return Err(Error::InvalidInput(format!("k_max must be at least 8, got {k_max}")));
    }
    Ok(conjecture_report(
        "conjecture-bulk",
        "bulk column recurrence residual",
        n,
        k_max,
        coeffs,
        column_bulk,
    ))
}

/// Same for the conjectured surface column recurrences, `n ∈ {1, 2}`.
pub fn verify_conjecture_surface_column(n: u64, k_max: u32) -> Result<VerificationReport> {
    let coeffs = surface_column_recurrence(n)
        .ok_or_else(|| Error::InvalidInput(format!("no surface column recurrence for n = {n}")))?;
    Ok(conjecture_report(
        "conjecture-surface",
        "surface column recurrence residual",
        n,
        k_max,
        coeffs,
        column_surface,
    ))
}

/// Both surface columns up to `k_max`.
pub fn verify_conjecture_surface(k_max: u32) -> Result<VerificationReport> {
    Ok(VerificationReport::combine(
        "conjecture-surface",
        vec![
            verify_conjecture_surface_column(1, k_max)?,
            verify_conjecture_surface_column(2, k_max)?,
        ],
    ))
}

/// Bulk columns 1, 2, 3 up to the given ranks and both surface columns up to
/// `surface_k_max`.
pub fn verify_conjectures(
    bulk_k_max: [u32; 3],
    surface_k_max: u32,
) -> Result<VerificationReport> {
    let mut reports = Vec::new();
    for (i, k_max) in bulk_k_max.into_iter().enumerate() {
        reports.push(verify_conjecture_bulk(i as u64 + 1, k_max)?);
    }
    reports.push(verify_conjecture_surface(surface_k_max)?);
    Ok(VerificationReport::combine("conjectures", reports))
}

/// Index of the first position where the sequences differ, counting a length
/// difference as a mismatch at the end of the shorter one.
pub fn first_mismatch(expected: &[BigCount], actual: &[BigCount]) -> Option<usize> {
    expected
        .iter()
        .zip(actual)
        .position(|(a, b)| a != b)
        .or_else(|| (expected.len() != actual.len()).then(|| expected.len().min(actual.len())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn fixtures_parse() {
        let fixtures = parse_fixtures(FIXTURES).unwrap();
        let rows = fixtures
            .iter()
            .filter(|f| matches!(f, Fixture::Sequence { subject: Subject::Count(Kind::Bulk, s), first_n: 0, values } if s.family() == Family::A && values.len() == 9))
            .count();
        assert!(rows >= 8);
        let errata = parse_errata(ERRATA).unwrap();
        assert_eq!(errata.len(), 3);
        assert_eq!(errata[0].corrected, BigCount::from(1093_u32));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_fixtures("# ok\nseq bulk Q 2 0 1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_fixtures("poly bulk A 2 n sometimes 1 2\n").is_err());
        assert!(parse_fixtures("frob 1 2 3\n").is_err());
        assert!(parse_errata("a | b | c\n").is_err());
    }

    #[test]
    fn tables_pass_with_three_errata() {
        let r = verify_tables().unwrap();
        assert!(r.passed, "{r}");
        // three errata; the D_7 one covers both parity components
        assert_eq!(r.count(Status::KnownErratum), 4, "{r}");
        let d7: Vec<&CheckRecord> = r
            .records
            .iter()
            .filter(|c| c.status == Status::KnownErratum && c.note.as_deref().unwrap().contains("d7-bulk-poly"))
            .collect();
        assert_eq!(d7.len(), 2);
        assert!(d7[0].note.as_deref().unwrap().contains("is 1093"));
    }

    #[test]
    fn a_corrupted_fixture_fails() {
        let fixtures = parse_fixtures("seq bulk A 8 2 180326\n").unwrap();
        let records = check_fixture(&fixtures[0], &[]).unwrap();
        assert_eq!(records[0].status, Status::Fail);
        assert_eq!(records[0].expected, "180326");
        assert_eq!(records[0].actual, "180325");
    }

    #[test]
    fn erratum_that_matches_is_a_failure() {
        let errata = parse_errata(ERRATA).unwrap();
        let fixtures = parse_fixtures("poly bulk D 2 n all 1 2 2 erratum=d7-bulk-poly\n").unwrap();
        let records = check_fixture(&fixtures[0], &errata).unwrap();
        assert_eq!(records[0].status, Status::Fail);
        let unknown = parse_fixtures("poly bulk D 2 n all 1 2 2 erratum=nope\n").unwrap();
        assert!(check_fixture(&unknown[0], &errata).is_err());
    }

    #[test]
    fn oracle_suite_small() {
        let r = verify_oracle_equivalence(1).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.records.len(), oracle_specs().len() * 2);
        assert_eq!(oracle_specs().len(), 7 + 7 + 7 + 3 + 8);
    }

    #[test]
    fn recurrence_suites() {
        let r = verify_polynomial_recurrence(8, 12);
        assert!(r.passed, "{r}");
        let k2n3 = r
            .records
            .iter()
            .find(|c| c.parameters == vec![p("k", 2), p("n", 3)])
            .unwrap();
        assert_eq!(k2n3.expected, "37");
        assert!(verify_gamma_form(8, 4).passed);
        assert!(verify_parity_recurrence(6, 10).passed);
        assert!(verify_d_recurrences(50).unwrap().passed);
    }

    #[test]
    fn conjectures_small() {
        let r = verify_conjectures([12, 10, 9], 10).unwrap();
        assert!(r.passed, "{r}");
        // n = 1 bulk at k = 1 is below the recurrence depth
        let na = r.records.iter().filter(|c| c.status == Status::NotApplicable).count();
        assert_eq!(na, 1 + 3 + 6 + 2 + 6);
        assert!(verify_conjecture_bulk(4, 10).is_err());
        assert!(verify_conjecture_bulk(1, 7).is_err());
        assert!(verify_conjecture_surface_column(3, 10).is_err());
    }

    #[test]
    fn conjecture_residual_is_reported() {
        // a deliberately wrong recurrence leaves a nonzero residual
        let r = conjecture_report("x", "wrong", 1, 9, |k| vec![k + 1, -(2 * k + 1), -3 * k + 1], column_bulk);
        assert!(!r.passed);
        assert!(r.failures().all(|c| c.actual != "0"));
    }

    #[test]
    fn reports_are_sorted_and_deterministic() {
        let a = verify_conjectures([9, 9, 9], 9).unwrap();
        let b = verify_conjectures([9, 9, 9], 9).unwrap();
        assert_eq!(a, b);
        let ks: Vec<&str> = a
            .records
            .iter()
            .filter(|c| c.check == "bulk column recurrence residual" && c.parameters[0].1 == "1")
            .map(|c| c.parameters[1].1.as_str())
            .collect();
        assert_eq!(ks, ["1", "2", "3", "4", "5", "6", "7", "8", "9"]);
    }

    #[test]
    fn display_lists_only_notable_records() {
        let r = verify_tables().unwrap();
        let text = r.to_string();
        assert!(text.starts_with("suite tables: PASS"));
        assert_eq!(text.lines().count(), 1 + 4);
        assert!(text.contains("KNOWN-ERRATUM"));
    }

    #[test]
    fn mismatch_index() {
        let a: Vec<BigCount> = [1_u32, 2, 3].iter().map(|&v| v.into()).collect();
        let mut b = a.clone();
        assert_eq!(first_mismatch(&a, &b), None);
        b[1] = BigCount::zero();
        assert_eq!(first_mismatch(&a, &b), Some(1));
        assert_eq!(first_mismatch(&a, &a[..2]), Some(2));
    }
}
