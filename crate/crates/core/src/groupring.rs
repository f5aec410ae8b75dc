//! Exact arithmetic in the group ring `R = Z[Γ]`, `Γ = <x | x^n = 1>`.
//!
//! Elements are dense coefficient vectors, `coeffs[k]` being the coefficient
//! of `x^k`; multiplication is cyclic convolution.
//!
//! Naming follows the usual convention for these sequences and is easy to
//! trip over: `Γ_p = Σ_{i<q} x^{ip}` is the subgroup generated by `x^p` and
//! therefore has `q` terms, while the Gauss sum `G_p` has Legendre symbols
//! mod `p` as coefficients but is supported on the multiples of `q`.

use std::fmt;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::autocorr::{autocorr_all_closed_form, autocorr_all_empirical};
use crate::error::{Error, Result};
use crate::numtheory::{legendre_unchecked, OddPrimePair};
use crate::sequence::{generate, sign_of, sign_view, SequenceParams};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    coeffs: Vec<BigInt>,
}

impl GroupRingElement {
    /// # Panics
    /// If `coeffs` is empty; the trivial group is not supported.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "group ring order must be positive");
        GroupRingElement { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(vec![BigInt::zero(); order])
    }

    /// `1_Γ`.
    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    /// `coeff * x^(exponent mod order)`.
    pub fn monomial(order: usize, exponent: usize, coeff: BigInt) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[exponent % order] = coeff;
        e
    }

    /// The whole group `Γ = Σ_k x^k`.
    pub fn all_ones(order: usize) -> Self {
        Self::from_coeffs(vec![BigInt::one(); order])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k % self.order()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.order()).filter(|&k| !self.coeffs[k].is_zero()).collect()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_coeffs(
            self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x - y).collect(),
        ))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Cyclic convolution: `result[k] = Σ_{i+j ≡ k} u[i] v[j]`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(match (small_terms(self), small_terms(other)) {
            (Some(u), Some(v)) if fits_i128(&u, &v, self.order()) => {
                convolve_i128(&u, &v, self.order())
            }
            _ => convolve_big(self, other),
        })
    }

    /// `σ(u)`, the image under `g ↦ g^{-1}`: `result[k] = u[(n-k) mod n]`.
    pub fn invert_support(&self) -> Self {
        let n = self.order();
        Self::from_coeffs((0..n).map(|k| self.coeffs[(n - k) % n].clone()).collect())
    }

    /// Sum of all coefficients (the augmentation map `x ↦ 1`).
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Image under `x ↦ 2` in `Z / (2^n - 1)`, as a value in `[0, 2^n - 1)`.
    ///
    /// Well defined because `2^n ≡ 1` modulo `2^n - 1`.
    pub fn eval_at_two_mod_mersenne(&self) -> BigUint {
        let n = self.order();
        let modulus = BigInt::from(mersenne(n));
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc << 1u32) + c;
        }
        acc.mod_floor(&modulus).to_biguint().expect("mod_floor is non-negative")
    }

    /// One line per nonzero coefficient, `"k: c"`, ascending in `k`.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                writeln!(out, "{k}: {c}").expect("write to String");
            }
        }
        out
    }

    /// First exponent at which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<CoefficientDifference> {
        if self.order() != other.order() {
            return Some(CoefficientDifference {
                exponent: self.order().min(other.order()),
                left: BigInt::zero(),
                right: BigInt::zero(),
            });
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(x, y)| x != y)
            .map(|k| CoefficientDifference {
                exponent: k,
                left: self.coeffs[k].clone(),
                right: other.coeffs[k].clone(),
            })
    }
}

/// `2^n - 1`, built by shift and subtract.
pub fn mersenne(n: usize) -> BigUint {
    (BigUint::one() << n) - 1u32
}

fn small_terms(u: &GroupRingElement) -> Option<Vec<(usize, i64)>> {
    let mut terms = Vec::new();
    for (k, c) in u.coeffs.iter().enumerate() {
        if !c.is_zero() {
            terms.push((k, c.to_i64()?));
        }
    }
    Some(terms)
}

fn fits_i128(u: &[(usize, i64)], v: &[(usize, i64)], n: usize) -> bool {
    let max_u = u.iter().map(|&(_, c)| c.unsigned_abs() as u128).max().unwrap_or(0);
    let max_v = v.iter().map(|&(_, c)| c.unsigned_abs() as u128).max().unwrap_or(0);
    max_u
        .checked_mul(max_v)
        .and_then(|x| x.checked_mul(n as u128))
        .is_some_and(|bound| bound < i128::MAX as u128)
}

fn convolve_i128(u: &[(usize, i64)], v: &[(usize, i64)], n: usize) -> GroupRingElement {
    let mut acc = vec![0i128; n];
    for &(i, a) in u {
        for &(j, b) in v {
            let k = if i + j >= n { i + j - n } else { i + j };
            acc[k] += a as i128 * b as i128;
        }
    }
    GroupRingElement::from_coeffs(acc.into_iter().map(BigInt::from).collect())
}

fn convolve_big(u: &GroupRingElement, v: &GroupRingElement) -> GroupRingElement {
    let n = u.order();
    let vs: Vec<(usize, &BigInt)> = v.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut acc = vec![BigInt::zero(); n];
    for (i, a) in u.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for &(j, b) in &vs {
            acc[(i + j) % n] += a * b;
        }
    }
    GroupRingElement::from_coeffs(acc)
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.sign() == Sign::Minus, c.abs());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

// Operator forms panic on mismatched orders; use the `try_` methods when the
// orders are not known to agree.
impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> GroupRingElement {
        self.try_add(rhs).expect("group ring orders must match")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: Self) -> GroupRingElement {
        self.try_sub(rhs).expect("group ring orders must match")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: Self) -> GroupRingElement {
        self.try_mul(rhs).expect("group ring orders must match")
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientDifference {
    pub exponent: usize,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub left: BigInt,
    #[serde(serialize_with = "crate::report::big_as_string")]
    pub right: BigInt,
}

/// `Γ_p = Σ_{i=0}^{q-1} x^{ip}`.
pub fn gamma_p(primes: &OddPrimePair) -> GroupRingElement {
    subgroup_sum(primes.n(), primes.p() as usize)
}

/// `Γ_q = Σ_{j=0}^{p-1} x^{jq}`.
pub fn gamma_q(primes: &OddPrimePair) -> GroupRingElement {
    subgroup_sum(primes.n(), primes.q() as usize)
}

fn subgroup_sum(n: usize, step: usize) -> GroupRingElement {
    let mut e = GroupRingElement::zero(n);
    for k in (0..n).step_by(step) {
        e.coeffs[k] = BigInt::one();
    }
    e
}

/// `G_p = Σ_{j=1}^{p-1} (jq/p) x^{jq}`.
pub fn gauss_gp(primes: &OddPrimePair) -> GroupRingElement {
    gauss_sum(primes.n(), primes.q(), primes.p())
}

/// `G_q = Σ_{i=1}^{q-1} (ip/q) x^{ip}`.
pub fn gauss_gq(primes: &OddPrimePair) -> GroupRingElement {
    gauss_sum(primes.n(), primes.p(), primes.q())
}

fn gauss_sum(n: usize, step: u64, modulus: u64) -> GroupRingElement {
    let mut e = GroupRingElement::zero(n);
    for j in 1..modulus {
        let k = j * step;
        e.coeffs[k as usize] = BigInt::from(legendre_unchecked(k as i64, modulus));
    }
    e
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub first_difference: Option<CoefficientDifference>,
}

impl IdentityCheck {
    fn compare(name: &'static str, lhs: &GroupRingElement, rhs: &GroupRingElement) -> Self {
        let first_difference = lhs.first_difference(rhs);
        IdentityCheck {
            name,
            passed: first_difference.is_none(),
            first_difference,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// The squares of the Gauss sums and their products with the subgroup sums:
///
/// ```text
/// G_p^2 = (-1/p)(p - Γ_q)    G_q^2 = (-1/q)(q - Γ_p)
/// Γ_p G_q = 0    Γ_q G_p = 0    Γ_p Γ_q = Γ
/// ```
pub fn verify_lemma1(primes: &OddPrimePair) -> IdentityReport {
    let n = primes.n();
    let (p, q) = (primes.p(), primes.q());
    let one = GroupRingElement::one(n);
    let (gam_p, gam_q) = (gamma_p(primes), gamma_q(primes));
    let (gp, gq) = (gauss_gp(primes), gauss_gq(primes));
    let zero = GroupRingElement::zero(n);

    let gp_sq_rhs = (&one.scale_i64(p as i64) - &gam_q).scale_i64(legendre_unchecked(-1, p));
    let gq_sq_rhs = (&one.scale_i64(q as i64) - &gam_p).scale_i64(legendre_unchecked(-1, q));

    IdentityReport {
        checks: vec![
            IdentityCheck::compare("Gp^2 = (-1/p)(p - Gamma_q)", &(&gp * &gp), &gp_sq_rhs),
            IdentityCheck::compare("Gq^2 = (-1/q)(q - Gamma_p)", &(&gq * &gq), &gq_sq_rhs),
            IdentityCheck::compare("Gamma_p * Gq = 0", &(&gam_p * &gq), &zero),
            IdentityCheck::compare("Gamma_q * Gp = 0", &(&gam_q * &gp), &zero),
            IdentityCheck::compare(
                "Gamma_p * Gamma_q = Gamma",
                &(&gam_p * &gam_q),
                &GroupRingElement::all_ones(n),
            ),
        ],
    }
}

/// `S(x) = H + G_p G_q` with `H = e + (-1)^a Γ_p + (-1)^b Γ_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub params: SequenceParams,
    pub e: i64,
    pub h: GroupRingElement,
    pub gp: GroupRingElement,
    pub gq: GroupRingElement,
    /// `Σ_λ (-1)^{s_λ} x^λ`.
    pub s: GroupRingElement,
}

/// # Panics
/// If `H + G_p G_q` disagrees with the ±1 view of the generated sequence,
/// which would mean a bug in this crate rather than bad input.
pub fn build_decomposition(params: &SequenceParams) -> Decomposition {
    let primes = &params.primes;
    let n = params.n();
    let t = params.triple;
    let e = t.e();
    let h = &(&GroupRingElement::one(n).scale_i64(e) + &gamma_p(primes).scale_i64(sign_of(t.a)))
        + &gamma_q(primes).scale_i64(sign_of(t.b));
    let gp = gauss_gp(primes);
    let gq = gauss_gq(primes);
    let s = &h + &(&gp * &gq);

    let signs = sign_view(&generate(params));
    for (k, (coeff, &sign)) in s.coeffs().iter().zip(&signs).enumerate() {
        assert_eq!(
            *coeff,
            BigInt::from(sign),
            "decomposition disagrees with generated sequence at x^{k} for {params}"
        );
    }
    Decomposition { params: *params, e, h, gp, gq, s }
}

impl Decomposition {
    /// `(-1/p)(-1/q)`.
    fn epsilon(&self) -> i64 {
        self.params.primes.minus_one_character()
    }

    /// `H + (-1/p)(-1/q) G_p G_q`, the predicted value of `σ(S)`.
    pub fn reflected(&self) -> GroupRingElement {
        &self.h + &(&self.gp * &self.gq).scale_i64(self.epsilon())
    }

    /// `σ(S) S` computed by raw convolution.
    pub fn correlation_raw(&self) -> GroupRingElement {
        &self.s.invert_support() * &self.s
    }

    /// `H^2 + (1 + ε) H G_p G_q + (p - Γ_q)(q - Γ_p)`, `ε = (-1/p)(-1/q)`.
    pub fn correlation_factored(&self) -> GroupRingElement {
        let primes = &self.params.primes;
        let n = self.params.n();
        let one = GroupRingElement::one(n);
        let gpgq = &self.gp * &self.gq;
        let lhs = &(&self.h * &self.h) + &(&self.h * &gpgq).scale_i64(1 + self.epsilon());
        let tail = &(&one.scale_i64(primes.p() as i64) - &gamma_q(primes))
            * &(&one.scale_i64(primes.q() as i64) - &gamma_p(primes));
        &lhs + &tail
    }

    /// Fully expanded product
    ///
    /// ```text
    /// (pq + e^2) + (q - p + 2e(-1)^a) Γ_p + (p - q + 2e(-1)^b) Γ_q
    ///     + (1 + 2(-1)^{a+b}) Γ + e(1 + ε) G_p G_q
    /// ```
    pub fn correlation_expanded(&self) -> GroupRingElement {
        let primes = &self.params.primes;
        let n = self.params.n();
        let (p, q) = (primes.p() as i64, primes.q() as i64);
        let t = self.params.triple;
        let (sa, sb) = (sign_of(t.a), sign_of(t.b));
        let e = self.e;
        let terms = [
            GroupRingElement::one(n).scale_i64(p * q + e * e),
            gamma_p(primes).scale_i64(q - p + 2 * e * sa),
            gamma_q(primes).scale_i64(p - q + 2 * e * sb),
            GroupRingElement::all_ones(n).scale_i64(1 + 2 * sa * sb),
            (&self.gp * &self.gq).scale_i64(e * (1 + self.epsilon())),
        ];
        terms.iter().fold(GroupRingElement::zero(n), |acc, t| &acc + t)
    }
}

/// Checks the chain
/// `σ(S) = H + ε G_p G_q` and
/// `σ(S) S = factored = expanded = Σ_τ C(τ) x^τ`, with `C(τ)` taken from
/// both the empirical sum and the closed form.
pub fn verify_correlation_identity(params: &SequenceParams) -> IdentityReport {
    let dec = build_decomposition(params);
    let raw = dec.correlation_raw();
    let empirical = GroupRingElement::from_i64s(&autocorr_all_empirical(&generate(params)));
    let closed = GroupRingElement::from_i64s(&autocorr_all_closed_form(params));
    IdentityReport {
        checks: vec![
            IdentityCheck::compare("sigma(S) = H + eps*Gp*Gq", &dec.s.invert_support(), &dec.reflected()),
            IdentityCheck::compare("sigma(S)*S = empirical C_S", &raw, &empirical),
            IdentityCheck::compare("sigma(S)*S = closed-form C_S", &raw, &closed),
            IdentityCheck::compare("factored product = sigma(S)*S", &dec.correlation_factored(), &raw),
            IdentityCheck::compare("expanded product = sigma(S)*S", &dec.correlation_expanded(), &raw),
        ],
    }
}
