//! Exact modular and combinatorial arithmetic.
//!
//! Binomials modulo a prime go through Lucas digit products. The Witt
//! counts are evaluated in unbounded integers and divided exactly at the
//! end, so no intermediate can overflow.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// A validated prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeChar(u64);

impl PrimeChar {
    pub const TWO: PrimeChar = PrimeChar(2);

    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeChar(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Returns `m` with `m = p^k`, `k >= 1`.
    pub fn power_exponent(self, n: u64) -> Option<u32> {
        if n < self.0 {
            return None;
        }
        let mut n = n;
        let mut k = 0;
        while n.is_multiple_of(self.0) {
            n /= self.0;
            k += 1;
        }
        (n == 1).then_some(k)
    }

    /// `n = p^k` for some `k >= 1`.
    pub fn is_power(self, n: u64) -> bool {
        self.power_exponent(n).is_some()
    }

    pub fn divides(self, n: u64) -> bool {
        n.is_multiple_of(self.0)
    }
}

impl fmt::Display for PrimeChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<PrimeChar> for u64 {
    fn from(p: PrimeChar) -> u64 {
        p.0
    }
}

impl TryFrom<u64> for PrimeChar {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeChar::new(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `C(n, k) mod p` by Lucas' theorem: the product of digit binomials in base `p`.
pub fn binom_mod(n: u64, k: u64, p: PrimeChar) -> u64 {
    let p = p.get();
    if k > n {
        return 0;
    }
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, small_binom_mod(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

// n, k < p: falling product over k!, inverted with Fermat.
fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..k {
        num = mul_mod(num, n - i, p);
        den = mul_mod(den, i + 1, p);
    }
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// The Möbius function by trial division.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Multiplicity `m_{s,t}` of multidegree `(s, t)` Lie monomials: the
/// Witt formula for a two-letter alphabet.
pub fn witt_bidegree(s: u64, t: u64) -> Result<BigUint> {
    ensure!(s + t >= 1, "witt_bidegree needs s + t >= 1");
    let n = s + t;
    let mut sum = BigInt::zero();
    for d in divisors(s.gcd(&t)) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(binomial(n / d, s / d));
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    exact_div(sum, n)
}

/// Number of Lyndon words of length `r` over `{x, y}` with `i` letters `y`.
///
/// `gcd(r, 0)` is taken to be `r`, which gives zero for `i = 0, r > 1`.
pub fn witt_weight_count(r: u64, i: u64) -> Result<BigUint> {
    ensure!(r >= 1, "witt_weight_count needs r >= 1");
    ensure!(
        i <= r,
        "witt_weight_count needs i <= r (got i = {i}, r = {r})"
    );
    let mut sum = BigInt::zero();
    for d in divisors(r.gcd(&i)) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(binomial(r / d, i / d));
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    exact_div(sum, r)
}

/// Dimension of the degree `n` Lie power of an `dim`-dimensional space:
/// `(1/n) Σ_{d|n} μ(d) dim^{n/d}`.
pub fn lie_power_dim(n: u64, dim: u64) -> Result<BigUint> {
    ensure!(n >= 1, "lie_power_dim needs n >= 1");
    let mut sum = BigInt::zero();
    for d in divisors(n) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(BigUint::from(dim).pow((n / d) as u32));
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    exact_div(sum, n)
}

fn exact_div(sum: BigInt, n: u64) -> Result<BigUint> {
    let (q, rem) = sum.div_rem(&BigInt::from(n));
    if !rem.is_zero() {
        return Err(Error::Consistency(format!("Witt sum not divisible by {n}")));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Consistency("negative Witt count".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeChar {
        PrimeChar::new(n).unwrap()
    }

    // Exact factorial route, kept independent of Lucas.
    fn binom_by_factorials(n: u64, k: u64) -> BigUint {
        let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, x| acc * x);
        fact(n) / (fact(k) * fact(n - k))
    }

    // Brute-force Lyndon enumeration over {0, 1}; returns counts by number of 1s.
    fn lyndon_counts(n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; n + 1];
        for bits in 0u32..(1 << n) {
            let word: Vec<u8> = (0..n).rev().map(|j| ((bits >> j) & 1) as u8).collect();
            let lyndon = (1..n).all(|s| {
                let rot: Vec<u8> = word[s..].iter().chain(&word[..s]).copied().collect();
                word < rot
            });
            if lyndon {
                counts[word.iter().filter(|&&b| b == 1).count()] += 1;
            }
        }
        counts
    }

    #[test]
    fn primes() {
        assert!(PrimeChar::new(2).is_ok());
        assert!(PrimeChar::new(97).is_ok());
        assert_eq!(PrimeChar::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeChar::new(0), Err(Error::NotPrime(0)));
        assert_eq!(PrimeChar::new(91), Err(Error::NotPrime(91)));
        assert_eq!(p(3).power_exponent(27), Some(3));
        assert_eq!(p(3).power_exponent(1), None);
        assert_eq!(p(2).power_exponent(12), None);
    }

    #[test]
    fn binom_mod_examples() {
        assert_eq!(binom_mod(26, 5, p(3)), 2);
        assert_eq!(binom_mod(7, 3, p(2)), 1);
        assert_eq!(binom_mod(3, 5, p(7)), 0);
        for n in 0..30 {
            assert_eq!(binom_mod(n, 0, p(5)), 1);
        }
    }

    #[test]
    fn binom_mod_matches_factorials() {
        for prime in [2, 3, 5, 7, 11, 13, 41, 43] {
            let pc = p(prime);
            for n in 0..=40u64 {
                for k in 0..=n {
                    let exact = binom_by_factorials(n, k) % prime;
                    assert_eq!(
                        BigUint::from(binom_mod(n, k, pc)),
                        exact,
                        "C({n},{k}) mod {prime}"
                    );
                }
            }
        }
    }

    #[test]
    fn binom_mod_prime_power_row() {
        for prime in [2u64, 3, 5, 7] {
            let mut r = prime;
            while r <= 400 {
                for k in 0..r {
                    let expect = if k % 2 == 0 { 1 } else { prime - 1 };
                    assert_eq!(binom_mod(r - 1, k, p(prime)), expect % prime);
                }
                r *= prime;
            }
        }
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i8> = (1..=12).map(mobius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn mobius_matches_sieve() {
        const N: usize = 2000;
        let mut mu = vec![1i8; N + 1];
        let mut composite = vec![false; N + 1];
        for q in 2..=N {
            if composite[q] {
                continue;
            }
            for m in (q..=N).step_by(q) {
                if m > q {
                    composite[m] = true;
                }
                mu[m] = -mu[m];
            }
            for m in (q * q..=N).step_by(q * q) {
                mu[m] = 0;
            }
        }
        for (n, &want) in mu.iter().enumerate().skip(1) {
            assert_eq!(mobius(n as u64), want, "mu({n})");
        }
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_bidegree(1, 0).unwrap(), BigUint::one());
        assert_eq!(witt_bidegree(1, 1).unwrap(), BigUint::one());
        assert_eq!(witt_bidegree(2, 2).unwrap(), BigUint::one());
        assert!(witt_bidegree(0, 0).is_err());
        assert_eq!(witt_weight_count(2, 1).unwrap(), BigUint::one());
        assert_eq!(witt_weight_count(6, 3).unwrap(), BigUint::from(3u32));
        assert_eq!(witt_weight_count(4, 2).unwrap(), BigUint::one());
        assert_eq!(witt_weight_count(1, 0).unwrap(), BigUint::one());
        assert!(witt_weight_count(5, 0).unwrap().is_zero());
        assert!(witt_weight_count(3, 4).is_err());
    }

    #[test]
    fn witt_weight_counts_sum_to_necklace_count() {
        for r in 1..=20u64 {
            let total: BigUint = (0..=r).map(|i| witt_weight_count(r, i).unwrap()).sum();
            assert_eq!(total, lie_power_dim(r, 2).unwrap(), "r = {r}");
        }
    }

    #[test]
    fn witt_counts_match_lyndon_enumeration() {
        for n in 1..=14usize {
            let counts = lyndon_counts(n);
            let total: u64 = counts.iter().sum();
            for (i, &c) in counts.iter().enumerate() {
                assert_eq!(
                    witt_weight_count(n as u64, i as u64).unwrap(),
                    BigUint::from(c)
                );
                let s = (n - i) as u64;
                assert_eq!(witt_bidegree(s, i as u64).unwrap(), BigUint::from(c));
            }
            let bidegree_total: BigUint = (0..=n as u64)
                .map(|t| witt_bidegree(n as u64 - t, t).unwrap())
                .sum();
            assert_eq!(bidegree_total, BigUint::from(total));
        }
    }

    #[test]
    fn large_witt_counts_are_exact() {
        // C(300,150) / 300 territory; only checks the division succeeds and is positive.
        let w = witt_weight_count(300, 150).unwrap();
        assert!(w > BigUint::from(u128::MAX));
        assert!(witt_bidegree(150, 150).unwrap() > BigUint::one());
    }
}
