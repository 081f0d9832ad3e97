//! The symmetric character ring of SL(2).
//!
//! A [`SymCharacter`] stores multiplicities at the non-negative weights
//! only; the value at `-m` is the value at `m`. Multiplicities are signed
//! so that virtual characters can be represented.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::modarith::PrimeChar;

/// Weight multiplicities of an SL(2)-character, symmetric under `m -> -m`.
///
/// Zero multiplicities are never stored; all stored weights share one parity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<u32, i128>", into = "BTreeMap<u32, i128>")]
pub struct SymCharacter {
    mults: BTreeMap<u32, i128>,
}

impl SymCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The character of the trivial module.
    pub fn trivial() -> Self {
        Self::from_pairs([(0, 1)]).unwrap()
    }

    /// Builds a character from `(weight >= 0, multiplicity)` pairs.
    /// Repeated weights accumulate.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, i128)>) -> Result<Self> {
        let mut mults = BTreeMap::new();
        for (w, c) in pairs {
            *mults.entry(w).or_insert(0) += c;
        }
        mults.retain(|_, c| *c != 0);
        let mut parities = mults.keys().map(|w| w % 2);
        if let Some(first) = parities.next() {
            if parities.any(|q| q != first) {
                return Err(Error::ParityMismatch);
            }
        }
        Ok(SymCharacter { mults })
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    /// Parity of the weights in the support, `None` for the zero character.
    pub fn parity(&self) -> Option<u32> {
        self.mults.keys().next().map(|w| w % 2)
    }

    pub fn multiplicity(&self, weight: i64) -> i128 {
        self.mults
            .get(&(weight.unsigned_abs() as u32))
            .copied()
            .unwrap_or(0)
    }

    pub fn top_weight(&self) -> Option<u32> {
        self.mults.keys().next_back().copied()
    }

    /// Non-negative weights with non-zero multiplicity, ascending.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (u32, i128)> + '_ {
        self.mults.iter().map(|(&w, &c)| (w, c))
    }

    /// All weights, negative ones included, ascending.
    pub fn full_support(&self) -> Vec<(i64, i128)> {
        let mut out: Vec<(i64, i128)> = self
            .mults
            .iter()
            .rev()
            .filter(|(&w, _)| w > 0)
            .map(|(&w, &c)| (-(w as i64), c))
            .collect();
        out.extend(self.mults.iter().map(|(&w, &c)| (w as i64, c)));
        out
    }

    /// Evaluation at `q = 1`.
    pub fn dimension(&self) -> i128 {
        self.mults
            .iter()
            .map(|(&w, &c)| if w == 0 { c } else { 2 * c })
            .sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.mults.values().all(|&c| c > 0)
    }

    pub fn add(&self, other: &SymCharacter) -> Result<SymCharacter> {
        if let (Some(a), Some(b)) = (self.parity(), other.parity()) {
            if a != b {
                return Err(Error::ParityMismatch);
            }
        }
        let mut mults = self.mults.clone();
        for (&w, &c) in &other.mults {
            *mults.entry(w).or_insert(0) += c;
        }
        mults.retain(|_, c| *c != 0);
        Ok(SymCharacter { mults })
    }

    pub fn scale(&self, c: i128) -> SymCharacter {
        if c == 0 {
            return SymCharacter::zero();
        }
        SymCharacter {
            mults: self.mults.iter().map(|(&w, &m)| (w, m * c)).collect(),
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, other: &SymCharacter, c: i128) -> Result<()> {
        if c == 0 || other.is_zero() {
            return Ok(());
        }
        if let (Some(a), Some(b)) = (self.parity(), other.parity()) {
            if a != b {
                return Err(Error::ParityMismatch);
            }
        }
        for (&w, &m) in &other.mults {
            let slot = self.mults.entry(w).or_insert(0);
            *slot += c * m;
            if *slot == 0 {
                self.mults.remove(&w);
            }
        }
        Ok(())
    }

    /// Character of a tensor product: convolution of weight multiplicities.
    pub fn mul(&self, other: &SymCharacter) -> SymCharacter {
        if self.is_zero() || other.is_zero() {
            return SymCharacter::zero();
        }
        let lhs = self.full_support();
        let mut mults: BTreeMap<u32, i128> = BTreeMap::new();
        // Only non-negative result weights are needed; symmetry supplies the rest.
        for (b, cb) in other.full_support() {
            for &(a, ca) in &lhs {
                let w = a + b;
                if w >= 0 {
                    *mults.entry(w as u32).or_insert(0) += ca * cb;
                }
            }
        }
        mults.retain(|_, c| *c != 0);
        SymCharacter { mults }
    }

    pub fn pow(&self, n: u32) -> SymCharacter {
        let mut acc = SymCharacter::trivial();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Relabels each weight `m` as `factor * m`.
    pub fn scale_weights(&self, factor: u32) -> SymCharacter {
        SymCharacter {
            mults: self.mults.iter().map(|(&w, &c)| (w * factor, c)).collect(),
        }
    }

    /// Frobenius twist: weight `m` becomes `p * m`.
    pub fn frobenius_twist(&self, p: PrimeChar) -> SymCharacter {
        self.scale_weights(p.get() as u32)
    }
}

impl Add for &SymCharacter {
    type Output = SymCharacter;
    /// Panics on parity mismatch; use [`SymCharacter::add`] to handle it.
    fn add(self, rhs: &SymCharacter) -> SymCharacter {
        SymCharacter::add(self, rhs).expect("adding characters of mixed parity")
    }
}

impl Sub for &SymCharacter {
    type Output = SymCharacter;
    fn sub(self, rhs: &SymCharacter) -> SymCharacter {
        SymCharacter::add(self, &rhs.scale(-1)).expect("subtracting characters of mixed parity")
    }
}

impl Neg for &SymCharacter {
    type Output = SymCharacter;
    fn neg(self) -> SymCharacter {
        self.scale(-1)
    }
}

impl Mul for &SymCharacter {
    type Output = SymCharacter;
    fn mul(self, rhs: &SymCharacter) -> SymCharacter {
        SymCharacter::mul(self, rhs)
    }
}

impl TryFrom<BTreeMap<u32, i128>> for SymCharacter {
    type Error = Error;
    fn try_from(map: BTreeMap<u32, i128>) -> Result<Self> {
        SymCharacter::from_pairs(map)
    }
}

impl From<SymCharacter> for BTreeMap<u32, i128> {
    fn from(c: SymCharacter) -> Self {
        c.mults
    }
}

impl fmt::Display for SymCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .mults
            .iter()
            .rev()
            .map(|(&w, &c)| {
                if w == 0 {
                    format!("0:{c}")
                } else {
                    format!("±{w}:{c}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn char_add(a: &SymCharacter, b: &SymCharacter) -> Result<SymCharacter> {
    a.add(b)
}

pub fn char_scale(a: &SymCharacter, c: i128) -> SymCharacter {
    a.scale(c)
}

pub fn char_mul(a: &SymCharacter, b: &SymCharacter) -> SymCharacter {
    a.mul(b)
}

pub fn frobenius_twist(a: &SymCharacter, p: PrimeChar) -> SymCharacter {
    a.frobenius_twist(p)
}

/// A partition of `r` into at most two parts, `first >= second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition2 {
    first: u32,
    second: u32,
}

impl Partition2 {
    pub fn new(first: u32, second: u32) -> Result<Self> {
        ensure!(
            first >= second,
            "partition parts must be non-increasing, got ({first}, {second})"
        );
        Ok(Partition2 { first, second })
    }

    pub fn first(self) -> u32 {
        self.first
    }

    pub fn second(self) -> u32 {
        self.second
    }

    pub fn degree(self) -> u32 {
        self.first + self.second
    }

    /// SL(2) weight of the restriction.
    pub fn weight(self) -> u32 {
        self.first - self.second
    }

    /// No `p` parts are equal. Only `p = 2` can fail with two parts.
    pub fn is_p_regular(self, p: PrimeChar) -> bool {
        p.get() > 2 || self.first > self.second
    }

    /// All partitions of `r` into at most two parts, largest first part first.
    pub fn all(r: u32) -> impl Iterator<Item = Partition2> {
        (0..=r / 2).map(move |second| Partition2 {
            first: r - second,
            second,
        })
    }

    /// The `p`-regular partitions of `r` into at most two parts.
    pub fn p_regular(r: u32, p: PrimeChar) -> impl Iterator<Item = Partition2> {
        Self::all(r).filter(move |l| l.is_p_regular(p))
    }
}

impl fmt::Display for Partition2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.second == 0 {
            write!(f, "({})", self.first)
        } else {
            write!(f, "({},{})", self.first, self.second)
        }
    }
}

/// The unique partition of `r` restricting to SL(2) weight `m`.
pub fn lambda_of(m: u32, r: u32) -> Result<Partition2> {
    ensure!(r >= 1, "degree must be positive");
    ensure!(m <= r, "weight {m} exceeds degree {r}");
    ensure!(m % 2 == r % 2, "weight {m} and degree {r} differ in parity");
    Ok(Partition2 {
        first: (r + m) / 2,
        second: (r - m) / 2,
    })
}

pub fn weight_of(lambda: Partition2) -> u32 {
    lambda.weight()
}

/// `{ k : 0 < k <= r, k ≡ r mod 2 }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightSet {
    r: u32,
}

impl WeightSet {
    pub fn new(r: u32) -> Result<Self> {
        ensure!(r >= 1, "WeightSet needs r >= 1");
        Ok(WeightSet { r })
    }

    pub fn contains(&self, k: u32) -> bool {
        k > 0 && k <= self.r && k % 2 == self.r % 2
    }

    pub fn len(&self) -> usize {
        self.r.div_ceil(2) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Descending.
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        let r = self.r;
        (0..r.div_ceil(2)).map(move |j| r - 2 * j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ch(pairs: &[(u32, i128)]) -> SymCharacter {
        SymCharacter::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn weyl(m: u32) -> SymCharacter {
        ch(&(0..=m / 2).map(|j| (m - 2 * j, 1)).collect::<Vec<_>>())
    }

    fn assert_symmetric(c: &SymCharacter) {
        for (w, m) in c.full_support() {
            assert_eq!(c.multiplicity(-w), m);
        }
    }

    // Convolution over the explicit signed weight list, independent of `mul`.
    fn brute_mul(a: &SymCharacter, b: &SymCharacter) -> BTreeMap<i64, i128> {
        let mut out = BTreeMap::new();
        for (x, u) in a.full_support() {
            for (y, v) in b.full_support() {
                *out.entry(x + y).or_insert(0) += u * v;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn add_and_scale() {
        let a = weyl(3);
        assert_eq!(char_add(&SymCharacter::zero(), &a).unwrap(), a);
        assert!(char_scale(&a, 0).is_zero());
        assert_eq!(char_add(&weyl(2), &weyl(0)).unwrap(), ch(&[(2, 1), (0, 2)]));
        assert_eq!(char_add(&weyl(2), &weyl(1)), Err(Error::ParityMismatch));
        assert_eq!(
            SymCharacter::from_pairs([(1, 1), (2, 1)]),
            Err(Error::ParityMismatch)
        );
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn products() {
        assert_eq!(char_mul(&weyl(1), &weyl(1)), ch(&[(2, 1), (0, 2)]));
        assert_eq!(char_mul(&weyl(5), &SymCharacter::trivial()), weyl(5));
        let sq = char_mul(&weyl(2), &weyl(2));
        assert_eq!(sq, ch(&[(4, 1), (2, 2), (0, 3)]));
        let brute = brute_mul(&weyl(2), &weyl(2));
        for (w, c) in brute {
            assert_eq!(sq.multiplicity(w), c);
        }
        assert_eq!(weyl(1).pow(3).dimension(), 8);
        assert_eq!(weyl(1).pow(0), SymCharacter::trivial());
        assert_eq!(sq.parity(), Some(0));
        assert_eq!(char_mul(&weyl(1), &weyl(2)).parity(), Some(1));
    }

    #[test]
    fn twist() {
        let p2 = PrimeChar::new(2).unwrap();
        let p3 = PrimeChar::new(3).unwrap();
        assert_eq!(
            frobenius_twist(&SymCharacter::trivial(), p2),
            SymCharacter::trivial()
        );
        assert_eq!(frobenius_twist(&weyl(1), p2), ch(&[(2, 1)]));
        assert_eq!(frobenius_twist(&weyl(1), p3), ch(&[(3, 1)]));
    }

    #[test]
    fn display() {
        assert_eq!(ch(&[(2, 1), (0, 2)]).to_string(), "{±2:1, 0:2}");
        assert_eq!(SymCharacter::zero().to_string(), "0");
    }

    #[test]
    fn partitions_and_weights() {
        assert_eq!(lambda_of(9, 9).unwrap(), Partition2::new(9, 0).unwrap());
        assert_eq!(lambda_of(7, 9).unwrap(), Partition2::new(8, 1).unwrap());
        assert_eq!(lambda_of(0, 10).unwrap(), Partition2::new(5, 5).unwrap());
        assert!(lambda_of(3, 8).is_err());
        assert!(lambda_of(10, 8).is_err());
        assert!(Partition2::new(2, 3).is_err());
        assert_eq!(weight_of(Partition2::new(8, 1).unwrap()), 7);
        assert_eq!(weight_of(Partition2::new(4, 4).unwrap()), 0);
        for r in 1..=50 {
            for m in (r % 2..=r).step_by(2) {
                assert_eq!(weight_of(lambda_of(m, r).unwrap()), m);
            }
            for l in Partition2::all(r) {
                assert_eq!(lambda_of(weight_of(l), r).unwrap(), l);
            }
        }
        let p2 = PrimeChar::new(2).unwrap();
        assert_eq!(Partition2::p_regular(8, p2).count(), 4);
        assert_eq!(
            Partition2::p_regular(8, PrimeChar::new(3).unwrap()).count(),
            5
        );
        assert_eq!(Partition2::new(6, 5).unwrap().to_string(), "(6,5)");
    }

    #[test]
    fn weight_sets() {
        for r in 1..=30 {
            let a = WeightSet::new(r).unwrap();
            let elems: Vec<u32> = a.iter().collect();
            assert_eq!(elems.len(), a.len());
            assert_eq!(a.len(), (r as usize).div_ceil(2));
            for k in 0..=r + 2 {
                assert_eq!(a.contains(k), elems.contains(&k));
            }
        }
        assert_eq!(
            WeightSet::new(4).unwrap().iter().collect::<Vec<_>>(),
            [4, 2]
        );
    }

    fn arb_char(parity: u32) -> impl Strategy<Value = SymCharacter> {
        proptest::collection::btree_map(0u32..20, -5i128..=5, 0..20).prop_map(move |m| {
            SymCharacter::from_pairs(m.into_iter().map(|(w, c)| (2 * w + parity, c))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_char(0), b in arb_char(1), c in arb_char(1)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
            for x in [&a, &b, &c] {
                assert_symmetric(&x.mul(&a));
            }
        }

        #[test]
        fn mul_matches_brute_force(a in arb_char(1), b in arb_char(0)) {
            let prod = a.mul(&b);
            let brute = brute_mul(&a, &b);
            prop_assert_eq!(prod.full_support().len(), brute.len());
            for (w, c) in brute {
                prop_assert_eq!(prod.multiplicity(w), c);
            }
        }

        #[test]
        fn twist_is_a_ring_map(a in arb_char(0), b in arb_char(1), q in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let p = PrimeChar::new(q).unwrap();
            prop_assert_eq!(a.mul(&b).frobenius_twist(p), a.frobenius_twist(p).mul(&b.frobenius_twist(p)));
        }

        #[test]
        fn dimension_is_multiplicative(a in arb_char(0), b in arb_char(1)) {
            prop_assert_eq!(a.mul(&b).dimension(), a.dimension() * b.dimension());
        }
    }
}
