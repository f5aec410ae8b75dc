//! Batch verification over many `(p, q, a, b, c)` instances.
//!
//! Rows are computed in parallel, one prime pair per task, and always come
//! back sorted by `(p, q, abc)` so that identical specs produce identical
//! output files.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::adic2::{complexity_report, TheoremViolation};
use crate::autocorr::{
    autocorr_all_empirical, compare_routes, distribution, nontrivial_bound, ClassValues, Family,
};
use crate::error::{Error, Result};
use crate::groupring::{verify_correlation_identity, verify_lemma1};
use crate::numtheory::{is_odd_prime, pairs_up_to, OddPrimePair};
use crate::report::big_as_string;
use crate::sequence::{generate, SequenceParams, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Check {
    /// Empirical vs closed-form autocorrelation, the `max(|q-p|+3, 9)`
    /// bound, and the `(p,a) <-> (q,b)` swap symmetry.
    Theorem1,
    /// Gauss-sum squares and subgroup products in `Z[Γ]`.
    Lemma1,
    /// Every gcd relation tracked by [`crate::adic2::complexity_report`].
    Theorem2,
    /// `σ(S) S` against both autocorrelation routes.
    CorrelationIdentity,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::Theorem1,
        Check::Lemma1,
        Check::Theorem2,
        Check::CorrelationIdentity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Lemma1 => "lemma1",
            Check::Theorem2 => "theorem2",
            Check::CorrelationIdentity => "correlation_identity",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Which prime pairs to enumerate. All bounds are inclusive and combine
/// conjunctively; only pairs with `p < q` are produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairBounds {
    pub max_n: Option<u64>,
    pub p_max: Option<u64>,
    pub q_max: Option<u64>,
    /// Restrict to `q = p + gap`.
    pub gap: Option<u64>,
}

impl PairBounds {
    pub fn enumerate(&self) -> Vec<OddPrimePair> {
        let q_limit = match (self.q_max, self.p_max, self.gap) {
            (Some(q), _, _) => q,
            (None, Some(p), Some(g)) => p + g,
            (None, _, _) => self.max_n.map_or(0, |n| n / 3),
        };
        let max_n = self.max_n.unwrap_or(u64::MAX);
        let p_limit = self.p_max.unwrap_or(q_limit);
        let primes: Vec<u64> = (3..=q_limit).filter(|&m| is_odd_prime(m)).collect();
        let mut pairs = Vec::new();
        for &p in primes.iter().filter(|&&p| p <= p_limit) {
            for &q in primes.iter().filter(|&&q| q > p) {
                if p.saturating_mul(q) > max_n {
                    break;
                }
                if self.gap.is_some_and(|g| q != p + g) {
                    continue;
                }
                if let Ok(pair) = OddPrimePair::new(p, q) {
                    pairs.push(pair);
                }
            }
        }
        pairs
    }
}

/// `"3:5,5:7"` → pairs, validated.
pub fn parse_pairs(s: &str) -> Result<Vec<OddPrimePair>> {
    s.split(',')
        .filter(|part| !part.is_empty())
        .map(|part| {
            let (p, q) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidPair(part.to_string()))?;
            let p = p.trim().parse().map_err(|_| Error::InvalidPair(part.to_string()))?;
            let q = q.trim().parse().map_err(|_| Error::InvalidPair(part.to_string()))?;
            OddPrimePair::new(p, q)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub pairs: Vec<OddPrimePair>,
    pub triples: Vec<Triple>,
    pub checks: BTreeSet<Check>,
    pub format: Format,
}

impl SweepSpec {
    pub fn new(pairs: Vec<OddPrimePair>) -> Self {
        SweepSpec {
            pairs,
            triples: Triple::all().collect(),
            checks: Check::ALL.into_iter().collect(),
            format: Format::Csv,
        }
    }

    pub fn with_triples(mut self, triples: Vec<Triple>) -> Self {
        self.triples = triples;
        self
    }

    pub fn with_checks<I: IntoIterator<Item = Check>>(mut self, checks: I) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: u64,
    pub q: u64,
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub n: usize,
    pub family: Family,
    pub ac_p: i64,
    pub ac_q: i64,
    pub ac_unit_plus: i64,
    pub ac_unit_minus: i64,
    pub max_abs: i64,
    #[serde(serialize_with = "big_as_string")]
    pub d: num_bigint::BigUint,
    #[serde(serialize_with = "big_as_string")]
    pub d_p: num_bigint::BigUint,
    #[serde(serialize_with = "big_as_string")]
    pub d_q: num_bigint::BigUint,
    #[serde(serialize_with = "big_as_string")]
    pub d_star: num_bigint::BigUint,
    pub best_value: bool,
    pub checks_run: Vec<Check>,
    pub checks_failed: Vec<Check>,
    pub violations: Vec<TheoremViolation>,
}

impl SweepRow {
    pub fn passed(&self) -> bool {
        self.checks_failed.is_empty()
    }

    pub fn checks_passed(&self) -> String {
        format!(
            "{}/{}",
            self.checks_run.len() - self.checks_failed.len(),
            self.checks_run.len()
        )
    }
}

pub const CSV_HEADER: [&str; 18] = [
    "p",
    "q",
    "a",
    "b",
    "c",
    "n",
    "family",
    "ac_P",
    "ac_Q",
    "ac_unit_plus",
    "ac_unit_minus",
    "max_abs",
    "d",
    "d_p",
    "d_q",
    "d_star",
    "best_value",
    "checks_passed",
];

fn run_pair(primes: OddPrimePair, spec: &SweepSpec) -> Vec<SweepRow> {
    let lemma1 = spec.checks.contains(&Check::Lemma1).then(|| verify_lemma1(&primes).passed());
    let mut triples = spec.triples.clone();
    triples.sort_by_key(Triple::index);
    triples.dedup();
    triples
        .into_iter()
        .map(|triple| run_row(SequenceParams { primes, triple }, spec, lemma1))
        .collect()
}

fn run_row(params: SequenceParams, spec: &SweepSpec, lemma1: Option<bool>) -> SweepRow {
    let profile = distribution(&params);
    let cv = ClassValues::of(&params);
    let adic = complexity_report(&params);
    let mut checks_failed = Vec::new();
    for &check in &spec.checks {
        let ok = match check {
            Check::Theorem1 => {
                let seq = generate(&params);
                let empirical = autocorr_all_empirical(&seq);
                let max_abs = empirical[1..].iter().map(|v| v.abs()).max().unwrap_or(0);
                compare_routes(&params, &empirical).passed
                    && max_abs <= nontrivial_bound(&params)
                    && generate(&params.swapped()).bits() == seq.bits()
            }
            Check::Lemma1 => lemma1.unwrap_or_else(|| verify_lemma1(&params.primes).passed()),
            Check::Theorem2 => adic.holds(),
            Check::CorrelationIdentity => verify_correlation_identity(&params).passed(),
        };
        if !ok {
            checks_failed.push(check);
        }
    }
    let t = params.triple;
    SweepRow {
        p: params.p(),
        q: params.q(),
        a: t.a as u8,
        b: t.b as u8,
        c: t.c as u8,
        n: params.n(),
        family: profile.family,
        ac_p: cv.class_p,
        ac_q: cv.class_q,
        ac_unit_plus: cv.unit_plus,
        ac_unit_minus: cv.unit_minus,
        max_abs: profile.max_nontrivial_abs,
        d: adic.d_exact,
        d_p: adic.d_p,
        d_q: adic.d_q,
        d_star: adic.d_star,
        best_value: adic.best_value,
        checks_run: spec.checks.iter().copied().collect(),
        checks_failed,
        violations: adic.violations,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
}

impl SweepOutcome {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn failed_rows(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| !r.passed())
    }

    pub fn summary(&self) -> String {
        let mut per_check = String::new();
        for check in Check::ALL {
            let count = self
                .rows
                .iter()
                .filter(|r| r.checks_failed.contains(&check))
                .count();
            if count > 0 {
                per_check.push_str(&format!(" {check}={count}"));
            }
        }
        format!(
            "{} rows, {} failures{}",
            self.rows.len(),
            self.failures(),
            if per_check.is_empty() {
                String::new()
            } else {
                format!(" ({})", per_check.trim_start())
            }
        )
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &self.rows)?;
                writeln!(out)
            }
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([
                r.p.to_string(),
                r.q.to_string(),
                r.a.to_string(),
                r.b.to_string(),
                r.c.to_string(),
                r.n.to_string(),
                r.family.name().to_string(),
                r.ac_p.to_string(),
                r.ac_q.to_string(),
                r.ac_unit_plus.to_string(),
                r.ac_unit_minus.to_string(),
                r.max_abs.to_string(),
                r.d.to_string(),
                r.d_p.to_string(),
                r.d_q.to_string(),
                r.d_star.to_string(),
                r.best_value.to_string(),
                r.checks_passed(),
            ])?;
        }
        w.flush()
    }
}

pub fn run_sweep(spec: &SweepSpec) -> SweepOutcome {
    let mut pairs = spec.pairs.clone();
    pairs.sort();
    pairs.dedup();
    let groups: Vec<Vec<SweepRow>> = pairs.par_iter().map(|&pr| run_pair(pr, spec)).collect();
    SweepOutcome {
        rows: groups.into_iter().flatten().collect(),
    }
}

/// Convenience for the common case `p*q <= max_n`, all triples.
pub fn sweep_up_to(max_n: u64, checks: &[Check]) -> SweepOutcome {
    run_sweep(&SweepSpec::new(pairs_up_to(max_n)).with_checks(checks.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_bounds() {
        let b = PairBounds { max_n: Some(55), ..Default::default() };
        assert_eq!(b.enumerate(), pairs_up_to(55));
        let b = PairBounds { p_max: Some(29), gap: Some(2), ..Default::default() };
        let got: Vec<_> = b.enumerate().iter().map(|x| (x.p(), x.q())).collect();
        assert_eq!(got, vec![(3, 5), (5, 7), (11, 13), (17, 19), (29, 31)]);
        let b = PairBounds { p_max: Some(5), q_max: Some(11), ..Default::default() };
        let got: Vec<_> = b.enumerate().iter().map(|x| (x.p(), x.q())).collect();
        assert_eq!(got, vec![(3, 5), (3, 7), (3, 11), (5, 7), (5, 11)]);
    }

    #[test]
    fn pair_parsing() {
        let pairs = parse_pairs("3:5,5:7").unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(matches!(parse_pairs("3-5"), Err(Error::InvalidPair(_))));
        assert_eq!(parse_pairs("4:5"), Err(Error::NotOddPrime { name: "p", value: 4 }));
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("theorem3".parse::<Check>().is_err());
    }

    #[test]
    fn rows_are_sorted_and_complete() {
        let pairs = vec![OddPrimePair::new(5, 7).unwrap(), OddPrimePair::new(3, 5).unwrap()];
        let spec = SweepSpec::new(pairs).with_triples(vec![Triple::from_index(3), Triple::from_index(4)]);
        let out = run_sweep(&spec);
        let keys: Vec<_> = out.rows.iter().map(|r| (r.p, r.q, r.a, r.b, r.c)).collect();
        assert_eq!(keys, vec![(3, 5, 0, 1, 1), (3, 5, 1, 0, 0), (5, 7, 0, 1, 1), (5, 7, 1, 0, 0)]);
        assert_eq!(out.failures(), 0);
        assert_eq!(out.rows[1].family, Family::Ideal);
        assert_eq!(out.rows[1].checks_passed(), "4/4");
    }

    #[test]
    fn csv_layout() {
        let spec = SweepSpec::new(vec![OddPrimePair::new(3, 5).unwrap()])
            .with_triples(vec!["100".parse().unwrap()]);
        let mut buf = Vec::new();
        run_sweep(&spec).write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "p,q,a,b,c,n,family,ac_P,ac_Q,ac_unit_plus,ac_unit_minus,max_abs,d,d_p,d_q,d_star,best_value,checks_passed\n\
             3,5,1,0,0,15,Ideal,-1,-1,-1,-1,1,1,1,1,1,true,4/4\n"
        );
    }

    #[test]
    fn failing_rows_are_counted() {
        let spec = SweepSpec::new(vec![OddPrimePair::new(3, 5).unwrap()])
            .with_checks([Check::Theorem2]);
        let out = run_sweep(&spec);
        let failed: Vec<String> = out
            .failed_rows()
            .map(|r| format!("{}{}{}", r.a, r.b, r.c))
            .collect();
        assert_eq!(failed, vec!["001", "110"]);
        assert_eq!(out.summary(), "8 rows, 2 failures (theorem2=2)");
    }
}
