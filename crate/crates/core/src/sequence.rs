//! The generalized cyclotomic sequence `S(a,b,c)` of period `n = pq`.
//!
//! ```text
//! s_0 = c
//! s_λ = a                      λ ∈ P = {p, 2p, .., (q-1)p}
//! s_λ = b                      λ ∈ Q = {q, 2q, .., (p-1)q}
//! s_λ = (1 - (λ/p)(λ/q)) / 2   λ a unit mod pq
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{legendre_unchecked, OddPrimePair};

/// `(-1)^bit`.
#[inline]
pub fn sign_of(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

/// The bits `(a, b, c)` selecting a member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

impl Triple {
    pub const fn new(a: bool, b: bool, c: bool) -> Self {
        Triple { a, b, c }
    }

    /// `abc` read as a 3-bit integer, `a` the most significant bit.
    pub fn index(&self) -> u8 {
        (self.a as u8) << 2 | (self.b as u8) << 1 | self.c as u8
    }

    pub fn from_index(index: u8) -> Self {
        Triple::new(index & 4 != 0, index & 2 != 0, index & 1 != 0)
    }

    /// All eight triples in `index` order.
    pub fn all() -> impl Iterator<Item = Triple> {
        (0..8).map(Triple::from_index)
    }

    /// `e = (-1)^c - (-1)^a - (-1)^b`.
    pub fn e(&self) -> i64 {
        sign_of(self.c) - sign_of(self.a) - sign_of(self.b)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.a as u8, self.b as u8, self.c as u8)
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidTriple(s.to_string())),
            })
            .collect::<Result<_>>()?;
        match bits[..] {
            [a, b, c] => Ok(Triple::new(a, b, c)),
            _ => Err(Error::InvalidTriple(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceParams {
    pub primes: OddPrimePair,
    pub triple: Triple,
}

impl SequenceParams {
    pub fn new(p: u64, q: u64, triple: Triple) -> Result<Self> {
        Ok(SequenceParams {
            primes: OddPrimePair::new(p, q)?,
            triple,
        })
    }

    pub fn p(&self) -> u64 {
        self.primes.p()
    }

    pub fn q(&self) -> u64 {
        self.primes.q()
    }

    pub fn n(&self) -> usize {
        self.primes.n()
    }

    /// Parameters of the same sequence seen with `p` and `q` exchanged:
    /// `S(p,q;a,b,c) = S(q,p;b,a,c)`.
    pub fn swapped(&self) -> Self {
        let t = self.triple;
        SequenceParams {
            primes: self.primes.swapped(),
            triple: Triple::new(t.b, t.a, t.c),
        }
    }
}

impl fmt::Display for SequenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} abc={}", self.p(), self.q(), self.triple)
    }
}

/// Position of an index in the partition `Z_pq = {0} ∪ P ∪ Q ∪ Z*_pq`.
///
/// Note the naming: `ClassP` holds the nonzero multiples of `p`, of which
/// there are `q - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResidueClass {
    Zero,
    ClassP,
    ClassQ,
    Unit,
}

impl ResidueClass {
    pub fn name(&self) -> &'static str {
        match self {
            ResidueClass::Zero => "zero",
            ResidueClass::ClassP => "P",
            ResidueClass::ClassQ => "Q",
            ResidueClass::Unit => "unit",
        }
    }
}

#[inline]
pub(crate) fn class_of(lambda: usize, p: u64, q: u64) -> ResidueClass {
    let l = lambda as u64;
    if l == 0 {
        ResidueClass::Zero
    } else if l.is_multiple_of(p) {
        ResidueClass::ClassP
    } else if l.is_multiple_of(q) {
        ResidueClass::ClassQ
    } else {
        ResidueClass::Unit
    }
}

pub fn classify(lambda: usize, params: &SequenceParams) -> Result<ResidueClass> {
    let n = params.n();
    if lambda >= n {
        return Err(Error::IndexOutOfRange { index: lambda, n });
    }
    Ok(class_of(lambda, params.p(), params.q()))
}

/// `(λ/p)(λ/q)`; zero off the units.
pub fn unit_character(lambda: usize, primes: &OddPrimePair) -> i64 {
    let l = lambda as i64;
    legendre_unchecked(l, primes.p()) * legendre_unchecked(l, primes.q())
}

/// A packed, fixed-length bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut bits = BitString::zeros(len);
        for i in 0..len {
            bits.set(i, true);
        }
        bits
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = BitString::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            out.set(i, b);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Little-endian 64-bit words; bit `i` is bit `i % 64` of word `i / 64`.
    /// Bits past `len` are zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// `(-1)^{s_λ}` for every position.
    pub fn signs(&self) -> Vec<i8> {
        self.iter().map(|b| if b { -1 } else { 1 }).collect()
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        if !self.len.is_multiple_of(64) {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
        out
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for BitString {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit character {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(BitString::from_bools(&bits))
    }
}

/// One period `s_0 .. s_{n-1}` of `S(a,b,c)`. Immutable once generated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySequence {
    params: SequenceParams,
    bits: BitString,
    weight: usize,
}

impl BinarySequence {
    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn get(&self, lambda: usize) -> bool {
        self.bits.get(lambda)
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.to_string()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SequenceJson::from(self)).expect("sequence serializes")
    }
}

/// JSON form `{p, q, a, b, c, bits}` with `bits` as an ASCII 0/1 string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub p: u64,
    pub q: u64,
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub bits: String,
}

impl From<&BinarySequence> for SequenceJson {
    fn from(seq: &BinarySequence) -> Self {
        let t = seq.params.triple;
        SequenceJson {
            p: seq.params.p(),
            q: seq.params.q(),
            a: t.a as u8,
            b: t.b as u8,
            c: t.c as u8,
            bits: seq.to_bit_string(),
        }
    }
}

pub fn generate(params: &SequenceParams) -> BinarySequence {
    let n = params.n();
    let (p, q) = (params.p(), params.q());
    let t = params.triple;
    let mut bits = BitString::zeros(n);
    for lambda in 0..n {
        let bit = match class_of(lambda, p, q) {
            ResidueClass::Zero => t.c,
            ResidueClass::ClassP => t.a,
            ResidueClass::ClassQ => t.b,
            ResidueClass::Unit => unit_character(lambda, &params.primes) == -1,
        };
        bits.set(lambda, bit);
    }
    let weight = bits.weight();
    BinarySequence {
        params: *params,
        bits,
        weight,
    }
}

/// `(-1)^{s_λ}` for `λ = 0..n-1`.
pub fn sign_view(seq: &BinarySequence) -> Vec<i8> {
    seq.bits.signs()
}
