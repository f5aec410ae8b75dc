//! Exact 2-adic complexity `A_S(2) = log2((2^n - 1) / d)`,
//! `d = gcd(T(2), 2^n - 1)`, `T(2) = Σ s_λ 2^λ`.
//!
//! Besides the direct gcd, this module evaluates the factor gcds
//!
//! ```text
//! d_p = gcd(q - 1 + (-1)^{a+c} - (-1)^{a+b}, 2^p - 1)
//! d_q = gcd(p - 1 + (-1)^{b+c} - (-1)^{a+b}, 2^q - 1)
//! d*  = gcd(S(2), (2^n - 1) / ((2^p - 1)(2^q - 1)))
//! ```
//!
//! and checks the claimed relations between them. Relations that fail are
//! reported as [`TheoremViolation`]s rather than panics: for `p = 3` and
//! `a = b ≠ c` the first argument of `d_q` vanishes, so `d_q = 2^q - 1` and
//! the `max(d_p, d_q)` form and the `16p > 4q + 4 > p + 5` guard both break.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::groupring::{build_decomposition, mersenne};
use crate::numtheory::OddPrimePair;
use crate::report::big_as_string;
use crate::sequence::{generate, sign_of, BitString, SequenceParams};

/// `T(2) = Σ s_λ 2^λ`, exact and `< 2^n`.
pub fn t2(bits: &BitString) -> BigUint {
    let bytes: Vec<u8> = bits.words().iter().flat_map(|w| w.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

/// `S(2) = Σ (-1)^{s_λ} 2^λ` without reduction; may be negative.
pub fn s2_raw(bits: &BitString) -> BigInt {
    let plus = t2(&bits.complement());
    let minus = t2(bits);
    BigInt::from(plus) - BigInt::from(minus)
}

/// `S(2)` reduced into `[0, 2^n - 1)`.
pub fn s2(bits: &BitString) -> BigUint {
    reduce(&s2_raw(bits), &mersenne(bits.len()))
}

fn reduce(x: &BigInt, modulus: &BigUint) -> BigUint {
    x.mod_floor(&BigInt::from(modulus.clone()))
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative")
}

/// `gcd(T(2), 2^n - 1)`.
pub fn d_exact(bits: &BitString) -> BigUint {
    t2(bits).gcd(&mersenne(bits.len()))
}

/// `gcd(S(2), 2^n - 1)`; equal to [`d_exact`] since `2T(2) ≡ -S(2)`.
pub fn d_via_s2(bits: &BitString) -> BigUint {
    s2(bits).gcd(&mersenne(bits.len()))
}

fn signed_gcd(x: i64, m: BigUint) -> BigUint {
    BigUint::from(x.unsigned_abs()).gcd(&m)
}

/// `gcd(q - 1 + (-1)^{a+c} - (-1)^{a+b}, 2^p - 1)`.
pub fn dp_closed(params: &SequenceParams) -> BigUint {
    let t = params.triple;
    let (sa, sb, sc) = (sign_of(t.a), sign_of(t.b), sign_of(t.c));
    let arg = params.q() as i64 - 1 + sa * sc - sa * sb;
    signed_gcd(arg, mersenne(params.p() as usize))
}

/// `gcd(p - 1 + (-1)^{b+c} - (-1)^{a+b}, 2^q - 1)`.
pub fn dq_closed(params: &SequenceParams) -> BigUint {
    let t = params.triple;
    let (sa, sb, sc) = (sign_of(t.a), sign_of(t.b), sign_of(t.c));
    let arg = params.p() as i64 - 1 + sb * sc - sa * sb;
    signed_gcd(arg, mersenne(params.q() as usize))
}

/// `gcd(e + (-1)^a q, 2^p - 1)`, the unnormalized form of [`dp_closed`].
pub fn dp_from_e(params: &SequenceParams) -> BigUint {
    let t = params.triple;
    signed_gcd(t.e() + sign_of(t.a) * params.q() as i64, mersenne(params.p() as usize))
}

/// `gcd(e + (-1)^b p, 2^q - 1)`, the unnormalized form of [`dq_closed`].
pub fn dq_from_e(params: &SequenceParams) -> BigUint {
    let t = params.triple;
    signed_gcd(t.e() + sign_of(t.b) * params.p() as i64, mersenne(params.q() as usize))
}

/// `(2^n - 1) / ((2^p - 1)(2^q - 1))`.
pub fn cofactor(primes: &OddPrimePair) -> BigUint {
    let m = mersenne(primes.n());
    let divisor = mersenne(primes.p() as usize) * mersenne(primes.q() as usize);
    debug_assert!((&m % &divisor).is_zero());
    m / divisor
}

/// `gcd(S(2), (2^n - 1) / ((2^p - 1)(2^q - 1)))`.
pub fn d_star(bits: &BitString, primes: &OddPrimePair) -> BigUint {
    s2(bits).gcd(&cofactor(primes))
}

/// `S(2) mod 2^n - 1` evaluated from `H + G_p G_q` at `x = 2`:
/// `e + (-1)^b (2^n-1)/(2^q-1) + (-1)^a (2^n-1)/(2^p-1) + G_p(2) G_q(2)`.
pub fn s2_from_decomposition(params: &SequenceParams) -> BigUint {
    let dec = build_decomposition(params);
    let primes = &params.primes;
    let n = params.n();
    let m = mersenne(n);
    let t = params.triple;
    let gamma_q_at_two = BigInt::from(&m / mersenne(primes.q() as usize));
    let gamma_p_at_two = BigInt::from(&m / mersenne(primes.p() as usize));
    let gp = BigInt::from(dec.gp.eval_at_two_mod_mersenne());
    let gq = BigInt::from(dec.gq.eval_at_two_mod_mersenne());
    let total = BigInt::from(dec.e)
        + gamma_q_at_two * sign_of(t.b)
        + gamma_p_at_two * sign_of(t.a)
        + gp * gq;
    reduce(&total, &m)
}

/// `S(2^{-1}) mod 2^n - 1`, i.e. `σ(S)` at `x = 2`, predicted as the value
/// of [`s2_from_decomposition`] with the Gauss product scaled by
/// `(-1/p)(-1/q)`. Returns `(direct, predicted)`.
pub fn s2_inverse_pair(params: &SequenceParams) -> (BigUint, BigUint) {
    let dec = build_decomposition(params);
    let direct = dec.s.invert_support().eval_at_two_mod_mersenne();
    let predicted = dec.reflected().eval_at_two_mod_mersenne();
    (direct, predicted)
}

/// `16p > 4q + 4 > p + 5`.
pub fn best_value_predicate(primes: &OddPrimePair) -> bool {
    let (p, q) = (primes.p(), primes.q());
    16 * p > 4 * q + 4 && 4 * q + 4 > p + 5
}

/// `log2(x)` for an arbitrarily large positive integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits in f64").log2() + shift as f64
}

/// `log2((2^n - 1) / d)` evaluated as `n + log2(1 - 2^-n) - log2(d)`.
pub fn complexity_float(n: usize, d: &BigUint) -> f64 {
    let correction = (-(-(n as f64)).exp2()).ln_1p() / std::f64::consts::LN_2;
    n as f64 + correction - log2_big(d)
}

/// A relation between the gcds that was expected to hold and did not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TheoremViolation {
    /// `2T(2) + S(2) ≢ 0 (mod 2^n - 1)`.
    ReductionIdentity,
    /// `gcd(T(2), 2^n-1) ≠ gcd(S(2), 2^n-1)`.
    GcdRoutesDisagree,
    /// `S(2)` from the decomposition at `x = 2` differs from the direct sum.
    DecompositionAtTwo,
    /// `σ(S)` at `x = 2` differs from its predicted form.
    ReflectionAtTwo,
    /// `d* ≠ 1`.
    DStarNotOne,
    /// The normalized and unnormalized `d_p` / `d_q` formulas disagree.
    FactorFormsDisagree,
    /// `d ≠ d_p d_q`.
    ProductForm,
    /// `d ≠ max(d_p, d_q)`.
    MaxForm,
    /// `min(d_p, d_q) ≠ 1`.
    MinNotOne,
    /// `4p > q + 1` yet `d_p ≠ 1`.
    GuardP,
    /// `4q > p + 1` yet `d_q ≠ 1`.
    GuardQ,
    /// `16p > 4q + 4 > p + 5` yet `d ≠ 1`.
    BestValueGuard,
}

impl TheoremViolation {
    pub fn name(&self) -> &'static str {
        match self {
            TheoremViolation::ReductionIdentity => "reduction_identity",
            TheoremViolation::GcdRoutesDisagree => "gcd_routes_disagree",
            TheoremViolation::DecompositionAtTwo => "decomposition_at_two",
            TheoremViolation::ReflectionAtTwo => "reflection_at_two",
            TheoremViolation::DStarNotOne => "d_star_not_one",
            TheoremViolation::FactorFormsDisagree => "factor_forms_disagree",
            TheoremViolation::ProductForm => "product_form",
            TheoremViolation::MaxForm => "max_form",
            TheoremViolation::MinNotOne => "min_not_one",
            TheoremViolation::GuardP => "guard_p",
            TheoremViolation::GuardQ => "guard_q",
            TheoremViolation::BestValueGuard => "best_value_guard",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdicComplexityReport {
    pub params: SequenceParams,
    pub n: usize,
    pub t2_mod: BigUint,
    pub s2_mod: BigUint,
    pub d_exact: BigUint,
    pub d_p: BigUint,
    pub d_q: BigUint,
    pub d_star: BigUint,
    pub complexity_float: f64,
    /// `d = 1`, i.e. the complexity is `log2(2^n - 1)`.
    pub best_value: bool,
    pub best_value_predicate: bool,
    pub violations: Vec<TheoremViolation>,
}

impl AdicComplexityReport {
    /// `(n, d)`, denoting `log2((2^n - 1) / d)` exactly.
    pub fn complexity_exact(&self) -> (usize, &BigUint) {
        (self.n, &self.d_exact)
    }

    pub fn complexity_bits_exact(&self) -> String {
        format!("log2((2^{}-1)/{})", self.n, self.d_exact)
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AdicJson::from(self)).expect("report serializes")
    }
}

#[derive(Serialize)]
struct AdicJson<'a> {
    p: u64,
    q: u64,
    a: u8,
    b: u8,
    c: u8,
    n: usize,
    #[serde(serialize_with = "big_as_string")]
    d: &'a BigUint,
    #[serde(serialize_with = "big_as_string")]
    d_p: &'a BigUint,
    #[serde(serialize_with = "big_as_string")]
    d_q: &'a BigUint,
    #[serde(serialize_with = "big_as_string")]
    d_star: &'a BigUint,
    best_value: bool,
    complexity_bits_exact: String,
    complexity_float: f64,
    best_value_predicate: bool,
    violations: Vec<&'static str>,
}

impl<'a> From<&'a AdicComplexityReport> for AdicJson<'a> {
    fn from(r: &'a AdicComplexityReport) -> Self {
        let t = r.params.triple;
        AdicJson {
            p: r.params.p(),
            q: r.params.q(),
            a: t.a as u8,
            b: t.b as u8,
            c: t.c as u8,
            n: r.n,
            d: &r.d_exact,
            d_p: &r.d_p,
            d_q: &r.d_q,
            d_star: &r.d_star,
            best_value: r.best_value,
            complexity_bits_exact: r.complexity_bits_exact(),
            complexity_float: r.complexity_float,
            best_value_predicate: r.best_value_predicate,
            violations: r.violations.iter().map(|v| v.name()).collect(),
        }
    }
}

pub fn complexity_report(params: &SequenceParams) -> AdicComplexityReport {
    let seq = generate(params);
    let bits = seq.bits();
    let n = params.n();
    let (p, q) = (params.p(), params.q());
    let m = mersenne(n);

    let t2_value = t2(bits);
    let t2_mod = &t2_value % &m;
    let s2_mod = s2(bits);
    let d = t2_value.gcd(&m);
    let d_p = dp_closed(params);
    let d_q = dq_closed(params);
    let d_star = s2_mod.gcd(&cofactor(&params.primes));
    let predicate = best_value_predicate(&params.primes);
    let one = BigUint::one();

    let mut violations = Vec::new();
    let mut flag = |cond: bool, v: TheoremViolation| {
        if !cond {
            violations.push(v);
        }
    };
    flag(((&t2_mod << 1u32) + &s2_mod) % &m == BigUint::zero(), TheoremViolation::ReductionIdentity);
    flag(s2_mod.gcd(&m) == d, TheoremViolation::GcdRoutesDisagree);
    flag(s2_from_decomposition(params) == s2_mod, TheoremViolation::DecompositionAtTwo);
    let (refl_direct, refl_predicted) = s2_inverse_pair(params);
    flag(refl_direct == refl_predicted, TheoremViolation::ReflectionAtTwo);
    flag(d_star == one, TheoremViolation::DStarNotOne);
    flag(
        dp_from_e(params) == d_p && dq_from_e(params) == d_q,
        TheoremViolation::FactorFormsDisagree,
    );
    flag(d == &d_p * &d_q, TheoremViolation::ProductForm);
    flag(d == *(&d_p).max(&d_q), TheoremViolation::MaxForm);
    flag(*(&d_p).min(&d_q) == one, TheoremViolation::MinNotOne);
    flag(!(4 * p > q + 1) || d_p == one, TheoremViolation::GuardP);
    flag(!(4 * q > p + 1) || d_q == one, TheoremViolation::GuardQ);
    flag(!predicate || d == one, TheoremViolation::BestValueGuard);

    AdicComplexityReport {
        params: *params,
        n,
        complexity_float: complexity_float(n, &d),
        best_value: d == one,
        best_value_predicate: predicate,
        t2_mod,
        s2_mod,
        d_exact: d,
        d_p,
        d_q,
        d_star,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::pairs_up_to;
    use crate::sequence::Triple;

    fn params(p: u64, q: u64, abc: &str) -> SequenceParams {
        SequenceParams::new(p, q, abc.parse().unwrap()).unwrap()
    }

    fn bits_of(p: u64, q: u64, abc: &str) -> BitString {
        generate(&params(p, q, abc)).bits().clone()
    }

    // Bit-weighted sum built one power at a time.
    fn t2_oracle(bits: &BitString) -> BigUint {
        let mut acc = BigUint::zero();
        let mut pow = BigUint::one();
        for b in bits.iter() {
            if b {
                acc += &pow;
            }
            pow <<= 1u32;
        }
        acc
    }

    #[test]
    fn t2_examples() {
        assert_eq!(t2(&bits_of(3, 5, "100")), BigUint::from(31432u32));
        assert_eq!(t2(&BitString::zeros(15)), BigUint::zero());
        assert_eq!(t2(&BitString::ones(77)), mersenne(77));
        for pr in pairs_up_to(400) {
            let bits = generate(&SequenceParams { primes: pr, triple: Triple::from_index(5) }).bits().clone();
            assert_eq!(t2(&bits), t2_oracle(&bits));
        }
    }

    #[test]
    fn s2_examples() {
        let bits = bits_of(3, 5, "100");
        assert_eq!(s2_raw(&bits), BigInt::from(-30097));
        assert_eq!(s2(&bits), BigUint::from(2670u32));
        assert_eq!(s2(&BitString::zeros(15)), BigUint::zero());
        assert_eq!(((t2(&bits) << 1u32) + s2(&bits)) % mersenne(15), BigUint::zero());
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_exact(&bits_of(3, 5, "100")), BigUint::one());
        assert_eq!(d_exact(&bits_of(3, 13, "010")), BigUint::from(7u32));
        assert_eq!(d_exact(&BitString::ones(21)), mersenne(21));
        assert_eq!(d_via_s2(&bits_of(3, 13, "010")), BigUint::from(7u32));
    }

    #[test]
    fn closed_factor_examples() {
        let pr = params(3, 5, "100");
        assert_eq!((dp_closed(&pr), dq_closed(&pr)), (BigUint::one(), BigUint::one()));
        assert_eq!(dp_closed(&params(3, 13, "010")), BigUint::from(7u32));
        assert_eq!(dq_closed(&params(3, 13, "010")), BigUint::one());
        for t in Triple::all() {
            let pr = SequenceParams::new(5, 7, t).unwrap();
            assert_eq!((dp_closed(&pr), dq_closed(&pr)), (BigUint::one(), BigUint::one()));
        }
    }

    #[test]
    fn d_star_examples() {
        assert_eq!(cofactor(&OddPrimePair::new(3, 5).unwrap()), BigUint::from(151u32));
        let pr = OddPrimePair::new(3, 5).unwrap();
        assert_eq!(d_star(&bits_of(3, 5, "100"), &pr), BigUint::one());
        let pr = OddPrimePair::new(3, 13).unwrap();
        assert_eq!(d_star(&bits_of(3, 13, "010"), &pr), BigUint::one());
        for t in Triple::all() {
            let pr = SequenceParams::new(5, 7, t).unwrap();
            assert_eq!(d_star(generate(&pr).bits(), &pr.primes), BigUint::one());
        }
    }

    #[test]
    fn predicate_examples() {
        let pred = |p, q| best_value_predicate(&OddPrimePair::new(p, q).unwrap());
        assert!(pred(3, 5));
        assert!(!pred(3, 13));
        assert!(pred(5, 7));
        for p in (3..2000u64).filter(|&p| crate::numtheory::is_odd_prime(p)) {
            for gap in [2, 4] {
                if crate::numtheory::is_odd_prime(p + gap) {
                    assert!(pred(p, p + gap), "({p}, {})", p + gap);
                }
            }
        }
    }

    #[test]
    fn factor_forms_agree() {
        for pr in pairs_up_to(3000) {
            for t in Triple::all() {
                let sp = SequenceParams { primes: pr, triple: t };
                assert_eq!(dp_from_e(&sp), dp_closed(&sp));
                assert_eq!(dq_from_e(&sp), dq_closed(&sp));
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = complexity_report(&params(3, 5, "100"));
        assert_eq!(r.d_exact, BigUint::one());
        assert_eq!(r.complexity_exact(), (15, &BigUint::one()));
        assert!((r.complexity_float - 14.999_955_971_769_56).abs() < 1e-9);
        assert!(r.best_value && r.best_value_predicate && r.holds());

        let r = complexity_report(&params(3, 13, "010"));
        assert_eq!(r.d_exact, BigUint::from(7u32));
        assert_eq!(r.complexity_bits_exact(), "log2((2^39-1)/7)");
        assert!((r.complexity_float - 36.192_645_077_939_77).abs() < 1e-9);
        assert!(!r.best_value && !r.best_value_predicate && r.holds(), "{:?}", r.violations);

        for t in Triple::all() {
            let r = complexity_report(&SequenceParams::new(5, 7, t).unwrap());
            assert_eq!(r.d_exact, BigUint::one());
            assert!(r.holds());
        }
    }

    #[test]
    fn vanishing_factor_argument_at_p_three() {
        // a = b ≠ c with p = 3 makes p - 1 + (-1)^{b+c} - (-1)^{a+b} = 0.
        let r = complexity_report(&params(3, 5, "001"));
        assert_eq!(r.d_q, mersenne(5));
        assert_eq!(r.d_exact, BigUint::from(31u32));
        assert_eq!(r.violations, vec![TheoremViolation::GuardQ, TheoremViolation::BestValueGuard]);

        let r = complexity_report(&params(3, 17, "110"));
        assert_eq!(r.d_p, BigUint::from(7u32));
        assert_eq!(r.d_q, mersenne(17));
        assert_eq!(r.d_exact, BigUint::from(7u32 * 131_071));
        assert_eq!(
            r.violations,
            vec![TheoremViolation::MaxForm, TheoremViolation::MinNotOne, TheoremViolation::GuardQ]
        );
    }

    #[test]
    fn json_shape() {
        let v = complexity_report(&params(3, 13, "010")).to_json();
        assert_eq!(v["d"], "7");
        assert_eq!(v["d_p"], "7");
        assert_eq!(v["d_q"], "1");
        assert_eq!(v["d_star"], "1");
        assert_eq!(v["n"], 39);
        assert_eq!(v["best_value"], false);
        assert_eq!(v["complexity_bits_exact"], "log2((2^39-1)/7)");
        assert_eq!(v["violations"], serde_json::json!([]));
    }

    #[test]
    fn log2_of_large_values() {
        let x = mersenne(5000);
        assert!((log2_big(&x) - 5000.0).abs() < 1e-9);
        assert_eq!(log2_big(&BigUint::one()), 0.0);
        assert!((complexity_float(100_000, &BigUint::one()) - 100_000.0).abs() < 1e-9);
    }
}
