//! Legendre symbols, primality and big-integer gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest period accepted by the crate; indices are stored as `usize` but
/// serialized formats assume they fit in 31 bits.
pub const MAX_PERIOD: u64 = 1 << 31;

const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

// Deterministic for every m < 3.3 * 10^24, which covers all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Two distinct odd primes `p`, `q` and the period `n = p*q`.
///
/// Order is meaningful: `p` always plays the role of the first prime in the
/// sequence definition, and swapping the pair swaps the roles of `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct OddPrimePair {
    p: u64,
    q: u64,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    p: u64,
    q: u64,
}

impl TryFrom<RawPair> for OddPrimePair {
    type Error = Error;
    fn try_from(raw: RawPair) -> Result<Self> {
        OddPrimePair::new(raw.p, raw.q)
    }
}

impl From<OddPrimePair> for RawPair {
    fn from(pair: OddPrimePair) -> Self {
        RawPair { p: pair.p, q: pair.q }
    }
}

impl OddPrimePair {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime { name: "p", value: p });
        }
        if !is_odd_prime(q) {
            return Err(Error::NotOddPrime { name: "q", value: q });
        }
        if p == q {
            return Err(Error::EqualPrimes(p));
        }
        match p.checked_mul(q) {
            Some(n) if n <= MAX_PERIOD => Ok(OddPrimePair { p, q }),
            _ => Err(Error::PeriodTooLarge { p, q }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The period `p*q`.
    pub fn n(&self) -> usize {
        (self.p * self.q) as usize
    }

    /// The pair with the roles of `p` and `q` exchanged.
    pub fn swapped(&self) -> Self {
        OddPrimePair { p: self.q, q: self.p }
    }

    /// `(-1/p)(-1/q)`, which is `1` iff `n = 1 (mod 4)`.
    pub fn minus_one_character(&self) -> i64 {
        legendre_unchecked(-1, self.p) * legendre_unchecked(-1, self.q)
    }
}

/// All pairs `p < q` of odd primes with `p*q <= max_n`, sorted by `(p, q)`.
pub fn pairs_up_to(max_n: u64) -> Vec<OddPrimePair> {
    let primes: Vec<u64> = (3..=max_n / 3).filter(|&m| is_odd_prime(m)).collect();
    let mut pairs = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        if p * p >= max_n {
            break;
        }
        for &q in &primes[i + 1..] {
            if p * q > max_n {
                break;
            }
            // Bounded by max_n, which the caller keeps far below MAX_PERIOD.
            if let Ok(pair) = OddPrimePair::new(p, q) {
                pairs.push(pair);
            }
        }
    }
    pairs
}

/// `base^exp mod m` for `m < 2^64`.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut result: u128 = 1;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    result as u64
}

/// true iff `m` is a prime and `m >= 3`.
pub fn is_odd_prime(m: u64) -> bool {
    if m < 3 || m.is_multiple_of(2) {
        return false;
    }
    if m < TRIAL_DIVISION_LIMIT {
        let mut d = 3;
        while d * d <= m {
            if m.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        return true;
    }
    miller_rabin(m)
}

fn miller_rabin(m: u64) -> bool {
    for &w in &MR_WITNESSES {
        if m.is_multiple_of(w) {
            return m == w;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = mod_pow(w, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % m as u128) as u64;
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a/r)` for an odd prime `r`.
pub fn legendre(a: i64, r: u64) -> Result<i64> {
    if !is_odd_prime(r) {
        return Err(Error::NotOddPrime { name: "r", value: r });
    }
    Ok(legendre_unchecked(a, r))
}

/// Legendre symbol by Euler's criterion; `r` must already be known to be an
/// odd prime.
pub(crate) fn legendre_unchecked(a: i64, r: u64) -> i64 {
    let residue = a.rem_euclid(r as i64) as u64;
    if residue == 0 {
        return 0;
    }
    match mod_pow(residue, (r - 1) / 2, r) {
        1 => 1,
        x => {
            debug_assert_eq!(x, r - 1);
            -1
        }
    }
}

/// `gcd(|x|, |y|)`, with `gcd(0, 0) = 0`.
pub fn gcd_big(x: &BigInt, y: &BigInt) -> BigInt {
    x.gcd(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_mod(r: u64) -> Vec<u64> {
        let mut sq: Vec<u64> = (0..r).map(|x| x * x % r).collect();
        sq.sort_unstable();
        sq.dedup();
        sq
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(1, 3).unwrap(), 1);
        assert_eq!(legendre(2, 3).unwrap(), -1);
        assert_eq!(legendre(3, 5).unwrap(), -1);
        assert_eq!(legendre(6, 3).unwrap(), 0);
        assert_eq!(legendre(-1, 5).unwrap(), 1);
        assert_eq!(legendre(-1, 7).unwrap(), -1);
    }

    #[test]
    fn legendre_rejects_non_odd_primes() {
        for r in [0, 1, 2, 4, 9, 15] {
            assert!(matches!(legendre(1, r), Err(Error::NotOddPrime { .. })), "r = {r}");
        }
    }

    #[test]
    fn legendre_matches_exhaustive_squaring() {
        for r in (3..100).filter(|&r| is_odd_prime(r)) {
            let squares = squares_mod(r);
            for a in -(r as i64)..(2 * r as i64) {
                let red = a.rem_euclid(r as i64) as u64;
                let expected = if red == 0 {
                    0
                } else if squares.binary_search(&red).is_ok() {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a, r).unwrap(), expected, "({a}/{r})");
            }
        }
    }

    #[test]
    fn legendre_is_multiplicative() {
        for r in (3..100).filter(|&r| is_odd_prime(r)) {
            for a in 0..r as i64 {
                for b in 0..r as i64 {
                    assert_eq!(
                        legendre_unchecked(a * b, r),
                        legendre_unchecked(a, r) * legendre_unchecked(b, r)
                    );
                }
            }
        }
    }

    #[test]
    fn minus_one_is_residue_iff_one_mod_four() {
        for r in (3..1000).filter(|&r| is_odd_prime(r)) {
            assert_eq!(legendre_unchecked(-1, r) == 1, r % 4 == 1, "r = {r}");
        }
    }

    #[test]
    fn primality_small() {
        assert!(!is_odd_prime(0));
        assert!(!is_odd_prime(1));
        assert!(!is_odd_prime(2));
        assert!(is_odd_prime(3));
        assert!(!is_odd_prime(15));
        // sieve oracle
        let limit = 5000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (m, &prime) in sieve.iter().enumerate() {
            assert_eq!(is_odd_prime(m as u64), prime && m != 2, "m = {m}");
        }
    }

    #[test]
    fn primality_miller_rabin_range() {
        assert!(is_odd_prime(1_048_583));
        assert!(!is_odd_prime(1_048_577)); // 17 * 61681
        assert!(is_odd_prime(2_147_483_647));
        assert!(!is_odd_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_odd_prime(18_446_744_073_709_551_557));
        assert!(!is_odd_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn pair_validation() {
        assert!(OddPrimePair::new(3, 5).is_ok());
        assert_eq!(
            OddPrimePair::new(4, 5),
            Err(Error::NotOddPrime { name: "p", value: 4 })
        );
        assert_eq!(
            OddPrimePair::new(3, 9),
            Err(Error::NotOddPrime { name: "q", value: 9 })
        );
        assert_eq!(OddPrimePair::new(3, 3), Err(Error::EqualPrimes(3)));
        assert_eq!(OddPrimePair::new(2, 5), Err(Error::NotOddPrime { name: "p", value: 2 }));
        assert!(matches!(
            OddPrimePair::new(65_537, 65_539),
            Err(Error::PeriodTooLarge { .. })
        ));
        assert_eq!(OddPrimePair::new(5, 3).unwrap().n(), 15);
    }

    #[test]
    fn pairs_enumeration() {
        let pairs: Vec<(u64, u64)> = pairs_up_to(55).iter().map(|x| (x.p(), x.q())).collect();
        assert_eq!(
            pairs,
            vec![(3, 5), (3, 7), (3, 11), (3, 13), (3, 17), (5, 7), (5, 11)]
        );
        assert_eq!(pairs_up_to(14), vec![]);
    }

    #[test]
    fn gcd_examples() {
        let g = |x: i64, y: i64| gcd_big(&BigInt::from(x), &BigInt::from(y));
        assert_eq!(g(14, 7), BigInt::from(7));
        assert_eq!(g(2670, 32767), BigInt::from(1));
        assert_eq!(g(-4, 6), BigInt::from(2));
        assert_eq!(g(0, 0), BigInt::from(0));
        assert_eq!(g(0, -9), BigInt::from(9));
    }

    fn gcd_by_subtraction(mut x: u64, mut y: u64) -> u64 {
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        while x != y {
            if x > y {
                x -= y;
            } else {
                y -= x;
            }
        }
        x
    }

    proptest::proptest! {
        #[test]
        fn gcd_matches_subtraction_oracle(x in -5000i64..5000, y in -5000i64..5000) {
            let g = gcd_big(&BigInt::from(x), &BigInt::from(y));
            proptest::prop_assert_eq!(
                g,
                BigInt::from(gcd_by_subtraction(x.unsigned_abs(), y.unsigned_abs()))
            );
        }

        #[test]
        fn gcd_divides_and_is_greatest(x in proptest::prelude::any::<u128>(), y in proptest::prelude::any::<u128>(), k in 1u64..1_000_000) {
            let bx = BigInt::from(x) * k;
            let by = -(BigInt::from(y) * k);
            let g = gcd_big(&bx, &by);
            if g != BigInt::from(0) {
                proptest::prop_assert_eq!(&bx % &g, BigInt::from(0));
                proptest::prop_assert_eq!(&by % &g, BigInt::from(0));
            }
            // k is a common divisor, so it must divide the gcd
            proptest::prop_assert_eq!(&g % BigInt::from(k), BigInt::from(0));
        }

        #[test]
        fn euler_criterion(idx in 0usize..24, a in 1i64..100) {
            let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
            let r = primes[idx];
            let a = a.rem_euclid(r as i64);
            proptest::prop_assume!(a != 0);
            let euler = mod_pow(a as u64, (r - 1) / 2, r);
            let sym = legendre(a, r).unwrap();
            proptest::prop_assert_eq!(if sym == 1 { 1 } else { r - 1 }, euler);
        }
    }
}
