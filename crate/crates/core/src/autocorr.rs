//! Periodic autocorrelation `C_S(τ) = Σ_λ (-1)^{s_λ + s_{λ+τ}}`.
//!
//! Two independent routes are provided: the direct shift-and-sum over the
//! ±1 view of a generated sequence, and the per-class closed form
//!
//! ```text
//! C(0)  = pq
//! C(τ)  = (q-p) + 2(-1)^{a+c} - 1                          τ ∈ P
//! C(τ)  = (p-q) + 2(-1)^{b+c} - 1                          τ ∈ Q
//! C(τ)  = 1 + 2(-1)^{a+b} + e(1 + (-1/p)(-1/q))(τ/p)(τ/q)  τ a unit
//! ```

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{class_of, generate, sign_of, unit_character, BinarySequence, ResidueClass, SequenceParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Every nontrivial value is `-1`.
    Ideal,
    /// Every nontrivial value lies in `{1, -3}`.
    ThreeValuedOptimal,
    Other,
}

impl Family {
    pub fn classify<I: IntoIterator<Item = i64>>(nontrivial: I) -> Family {
        let mut ideal = true;
        let mut optimal = true;
        for v in nontrivial {
            ideal &= v == -1;
            optimal &= v == 1 || v == -3;
        }
        if ideal {
            Family::Ideal
        } else if optimal {
            Family::ThreeValuedOptimal
        } else {
            Family::Other
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Ideal => "Ideal",
            Family::ThreeValuedOptimal => "ThreeValuedOptimal",
            Family::Other => "Other",
        }
    }
}

/// Closed-form autocorrelation on each residue class. The unit class splits
/// by the sign of `(τ/p)(τ/q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassValues {
    pub zero: i64,
    pub class_p: i64,
    pub class_q: i64,
    pub unit_plus: i64,
    pub unit_minus: i64,
}

impl ClassValues {
    pub fn of(params: &SequenceParams) -> Self {
        let (p, q) = (params.p() as i64, params.q() as i64);
        let t = params.triple;
        let (sa, sb, sc) = (sign_of(t.a), sign_of(t.b), sign_of(t.c));
        let unit_base = 1 + 2 * sa * sb;
        let unit_term = t.e() * (1 + params.primes.minus_one_character());
        ClassValues {
            zero: p * q,
            class_p: (q - p) + 2 * sa * sc - 1,
            class_q: (p - q) + 2 * sb * sc - 1,
            unit_plus: unit_base + unit_term,
            unit_minus: unit_base - unit_term,
        }
    }

    pub fn value(&self, class: ResidueClass, character: i64) -> i64 {
        match class {
            ResidueClass::Zero => self.zero,
            ResidueClass::ClassP => self.class_p,
            ResidueClass::ClassQ => self.class_q,
            ResidueClass::Unit if character == 1 => self.unit_plus,
            ResidueClass::Unit => self.unit_minus,
        }
    }
}

/// Largest nontrivial `|C(τ)|` permitted by the family-wide bound
/// `max(|q-p| + 3, 9)`.
pub fn nontrivial_bound(params: &SequenceParams) -> i64 {
    let gap = (params.q() as i64 - params.p() as i64).abs();
    (gap + 3).max(9)
}

/// `Σ_i v[i] v[(i+τ) mod n]` split into two contiguous dot products.
#[inline]
fn shifted_dot(v: &[i32], tau: usize) -> i64 {
    let n = v.len();
    let head: i64 = v[..n - tau]
        .iter()
        .zip(&v[tau..])
        .map(|(&x, &y)| (x * y) as i64)
        .sum();
    let tail: i64 = v[n - tau..]
        .iter()
        .zip(&v[..tau])
        .map(|(&x, &y)| (x * y) as i64)
        .sum();
    head + tail
}

fn signs_i32(seq: &BinarySequence) -> Vec<i32> {
    seq.bits().iter().map(|b| sign_of(b) as i32).collect()
}

pub fn autocorr_empirical(seq: &BinarySequence, tau: usize) -> Result<i64> {
    let n = seq.len();
    if tau >= n {
        return Err(Error::IndexOutOfRange { index: tau, n });
    }
    Ok(shifted_dot(&signs_i32(seq), tau))
}

/// `C(τ)` for all `τ`, by direct summation.
pub fn autocorr_all_empirical(seq: &BinarySequence) -> Vec<i64> {
    let v = signs_i32(seq);
    (0..v.len()).map(|tau| shifted_dot(&v, tau)).collect()
}

/// As [`autocorr_all_empirical`], partitioning shifts across the rayon pool.
pub fn autocorr_all_empirical_par(seq: &BinarySequence) -> Vec<i64> {
    let v = signs_i32(seq);
    (0..v.len()).into_par_iter().map(|tau| shifted_dot(&v, tau)).collect()
}

pub fn autocorr_closed_form(params: &SequenceParams, tau: usize) -> Result<i64> {
    let n = params.n();
    if tau >= n {
        return Err(Error::IndexOutOfRange { index: tau, n });
    }
    let class = class_of(tau, params.p(), params.q());
    Ok(ClassValues::of(params).value(class, unit_character(tau, &params.primes)))
}

/// `C(τ)` for all `τ`, by the closed form.
pub fn autocorr_all_closed_form(params: &SequenceParams) -> Vec<i64> {
    let values = ClassValues::of(params);
    (0..params.n())
        .map(|tau| {
            values.value(
                class_of(tau, params.p(), params.q()),
                unit_character(tau, &params.primes),
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutocorrelationProfile {
    pub p: u64,
    pub q: u64,
    pub abc: String,
    pub n: usize,
    pub class_values: ClassValues,
    /// Per-shift values; only filled when computed empirically.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
    /// value → number of shifts `0 <= τ < n` attaining it.
    pub distribution: BTreeMap<i64, u64>,
    pub max_nontrivial_abs: i64,
    pub family: Family,
}

impl AutocorrelationProfile {
    fn assemble(
        params: &SequenceParams,
        distribution: BTreeMap<i64, u64>,
        values: Option<Vec<i64>>,
    ) -> Self {
        let n = params.n();
        let mut nontrivial = distribution.clone();
        if let Some(count) = nontrivial.get_mut(&(n as i64)) {
            *count -= 1;
            if *count == 0 {
                nontrivial.remove(&(n as i64));
            }
        }
        let max_nontrivial_abs = nontrivial.keys().map(|v| v.abs()).max().unwrap_or(0);
        AutocorrelationProfile {
            p: params.p(),
            q: params.q(),
            abc: params.triple.to_string(),
            n,
            class_values: ClassValues::of(params),
            values,
            family: Family::classify(nontrivial.keys().copied()),
            distribution,
            max_nontrivial_abs,
        }
    }

    /// Nontrivial values (τ ≠ 0), each listed once.
    pub fn nontrivial_values(&self) -> Vec<i64> {
        let n = self.n as i64;
        self.distribution
            .iter()
            .filter(|&(&v, &c)| v != n || c > 1)
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn total_count(&self) -> u64 {
        self.distribution.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("profile serializes")
    }

    /// `value,count` rows with a header, ascending by value.
    pub fn write_distribution_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["value", "count"])?;
        for (v, c) in &self.distribution {
            w.write_record([v.to_string(), c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// The distribution from the closed form and class cardinalities, without
/// touching individual shifts.
pub fn distribution(params: &SequenceParams) -> AutocorrelationProfile {
    let (p, q) = (params.p(), params.q());
    let cv = ClassValues::of(params);
    let half_units = (p - 1) * (q - 1) / 2;
    let mut dist = BTreeMap::new();
    for (value, count) in [
        (cv.zero, 1),
        (cv.class_p, q - 1),
        (cv.class_q, p - 1),
        (cv.unit_plus, half_units),
        (cv.unit_minus, half_units),
    ] {
        *dist.entry(value).or_insert(0) += count;
    }
    AutocorrelationProfile::assemble(params, dist, None)
}

/// The distribution from direct summation over every shift.
pub fn distribution_empirical(seq: &BinarySequence) -> AutocorrelationProfile {
    let values = autocorr_all_empirical(seq);
    let mut dist = BTreeMap::new();
    for &v in &values {
        *dist.entry(v).or_insert(0) += 1;
    }
    AutocorrelationProfile::assemble(seq.params(), dist, Some(values))
}

/// `tau,class,C_S` rows with a header for every shift.
pub fn write_tau_csv<W: Write>(params: &SequenceParams, values: &[i64], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tau", "class", "C_S"])?;
    for (tau, v) in values.iter().enumerate() {
        let class = class_of(tau, params.p(), params.q());
        w.write_record([tau.to_string(), class.name().to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub tau: usize,
    pub class: ResidueClass,
    pub empirical: i64,
    pub closed_form: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Check {
    pub passed: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Compares both routes at every shift.
pub fn verify_theorem1(params: &SequenceParams) -> Theorem1Check {
    let seq = generate(params);
    compare_routes(params, &autocorr_all_empirical(&seq))
}

pub(crate) fn compare_routes(params: &SequenceParams, empirical: &[i64]) -> Theorem1Check {
    let closed = autocorr_all_closed_form(params);
    let first_mismatch = empirical
        .iter()
        .zip(&closed)
        .enumerate()
        .find(|(_, (e, c))| e != c)
        .map(|(tau, (&e, &c))| Mismatch {
            tau,
            class: class_of(tau, params.p(), params.q()),
            empirical: e,
            closed_form: c,
        });
    Theorem1Check {
        passed: first_mismatch.is_none() && empirical.len() == closed.len(),
        first_mismatch,
    }
}
