//! Weyl, simple and tilting characters of SL(2) in characteristic `p`, and
//! unitriangular conversion into each of those bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::LazyLock;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};

use crate::charring::{Partition2, SymCharacter};
use crate::error::{ensure, Error, Result};
use crate::modarith::PrimeChar;

/// Largest degree accepted for operations that build the full character of
/// a tensor or Lie power. Multiplicities are `i128`; `C(120, 60)` is about
/// `9.7e34`, comfortably inside range.
pub const MAX_CHAR_DEGREE: u32 = 120;

pub(crate) fn check_degree(r: u32) -> Result<()> {
    if r > MAX_CHAR_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: r,
            max: MAX_CHAR_DEGREE,
        });
    }
    Ok(())
}

/// `q^m + q^{m-2} + ... + q^{-m}`.
pub fn char_weyl(m: u32) -> SymCharacter {
    SymCharacter::from_pairs((0..=m / 2).map(|j| (m - 2 * j, 1)))
        .expect("Weyl weights share a parity")
}

/// Steinberg tensor product over the base-`p` digits of `m`.
pub fn char_simple(m: u32, p: PrimeChar) -> SymCharacter {
    let p = p.get() as u32;
    let mut acc = SymCharacter::trivial();
    let (mut rest, mut place) = (m, 1u32);
    while rest > 0 {
        let digit = rest % p;
        if digit > 0 {
            acc = acc.mul(&char_weyl(digit).scale_weights(place));
        }
        rest /= p;
        if rest > 0 {
            place *= p;
        }
    }
    acc
}

/// Whether `Δ(m) = L(m) = T(m)`: `m = 0` or `m = a p^k - 1` with `2 <= a <= p`.
pub fn is_weyl_simple(m: u32, p: PrimeChar) -> bool {
    if m == 0 {
        return true;
    }
    let n = m as u64 + 1;
    if p.is_power(n) {
        return true;
    }
    let mut a = n;
    while a.is_multiple_of(p.get()) {
        a /= p.get();
    }
    (2..p.get()).contains(&a)
}

static TILTING_MEMO: LazyLock<RwLock<HashMap<(u64, u32), SymCharacter>>> =
    LazyLock::new(Default::default);

/// Character of the indecomposable tilting module `T(m)`.
///
/// * `m <= p - 1`: `Δ(m)`.
/// * `m = p + i`, `0 <= i <= p - 2`: `Δ(p + i) + Δ(p - 2 - i)`.
/// * `m = kp + i`, `k >= 2`, `0 <= i <= p - 2`: `T(k - 1)^F ⊗ T(p + i)`.
/// * `m = kp + p - 1`, `k >= 1`: `T(k)^F ⊗ Δ(p - 1)`.
///
/// Results are memoized per `(p, m)` in a process-wide table.
pub fn char_tilting(m: u32, p: PrimeChar) -> SymCharacter {
    if let Some(hit) = TILTING_MEMO.read().get(&(p.get(), m)) {
        return hit.clone();
    }
    let q = p.get() as u32;
    let ch = if m < q {
        char_weyl(m)
    } else {
        let (k, i) = (m / q, m % q);
        if i == q - 1 {
            char_tilting(k, p).frobenius_twist(p).mul(&char_weyl(q - 1))
        } else if k == 1 {
            &char_weyl(q + i) + &char_weyl(q - 2 - i)
        } else {
            char_tilting(k - 1, p)
                .frobenius_twist(p)
                .mul(&char_tilting(q + i, p))
        }
    };
    TILTING_MEMO.write().insert((p.get(), m), ch.clone());
    ch
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Delta,
    Simple,
    Tilting,
}

impl Basis {
    pub fn character(self, m: u32, p: PrimeChar) -> SymCharacter {
        match self {
            Basis::Delta => char_weyl(m),
            Basis::Simple => char_simple(m, p),
            Basis::Tilting => char_tilting(m, p),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::Delta => "delta",
            Basis::Simple => "simple",
            Basis::Tilting => "tilting",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signed multiplicities of a character in one of the three bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    basis: Basis,
    degree: u32,
    p: PrimeChar,
    entries: BTreeMap<u32, i128>,
}

impl Decomposition {
    pub(crate) fn from_parts(
        basis: Basis,
        degree: u32,
        p: PrimeChar,
        mut entries: BTreeMap<u32, i128>,
    ) -> Self {
        entries.retain(|_, c| *c != 0);
        Decomposition {
            basis,
            degree,
            p,
            entries,
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn prime(&self) -> PrimeChar {
        self.p
    }

    /// Coefficient of the basis character with highest weight `m`.
    pub fn entry(&self, m: u32) -> i128 {
        self.entries.get(&m).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<u32, i128> {
        &self.entries
    }

    /// Highest weight first.
    pub fn iter_desc(&self) -> impl Iterator<Item = (u32, i128)> + '_ {
        self.entries.iter().rev().map(|(&m, &c)| (m, c))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|&c| c >= 0)
    }

    pub fn negative_entries(&self) -> Vec<(u32, i128)> {
        self.iter_desc().filter(|&(_, c)| c < 0).collect()
    }

    /// Weights with a strictly positive coefficient, descending.
    pub fn positive_support(&self) -> Vec<u32> {
        self.iter_desc()
            .filter(|&(_, c)| c > 0)
            .map(|(m, _)| m)
            .collect()
    }

    /// Highest weight `m` relabelled as a partition of the degree.
    pub fn partition_entries(&self) -> Vec<(Partition2, i128)> {
        self.iter_desc()
            .map(|(m, c)| {
                (
                    crate::charring::lambda_of(m, self.degree).expect("weight in range"),
                    c,
                )
            })
            .collect()
    }

    /// Sums the basis characters back up.
    pub fn reconstruct(&self) -> SymCharacter {
        let mut acc = SymCharacter::zero();
        for (&m, &c) in &self.entries {
            acc.add_scaled(&self.basis.character(m, self.p), c)
                .expect("entries share the degree parity");
        }
        acc
    }

    /// Dimension of the represented module, `Σ c_m dim B(m)`.
    pub fn weighted_dimension(&self) -> i128 {
        self.entries
            .iter()
            .map(|(&m, &c)| c * self.basis.character(m, self.p).dimension())
            .sum()
    }
}

/// Writes `chi` in the chosen basis by peeling off the highest weight.
///
/// Each basis character has multiplicity one at its highest weight, so the
/// elimination is exact and coefficients may come out negative.
pub fn decompose(chi: &SymCharacter, basis: Basis, r: u32, p: PrimeChar) -> Result<Decomposition> {
    ensure!(r >= 1, "degree must be positive");
    if let Some(parity) = chi.parity() {
        ensure!(
            parity == r % 2,
            "character parity does not match degree {r}"
        );
    }
    if let Some(top) = chi.top_weight() {
        ensure!(top <= r, "character has weight {top} above degree {r}");
    }
    let mut residual = chi.clone();
    let mut entries = BTreeMap::new();
    let mut bound = r;
    while let Some(top) = residual.top_weight() {
        if top > bound {
            return Err(Error::CorruptResidual { weight: top, bound });
        }
        let c = residual.multiplicity(top as i64);
        entries.insert(top, c);
        residual.add_scaled(&basis.character(top, p), -c)?;
        if residual.top_weight() == Some(top) {
            return Err(Error::CorruptResidual {
                weight: top,
                bound: top,
            });
        }
        bound = top;
    }
    Ok(Decomposition {
        basis,
        degree: r,
        p,
        entries,
    })
}

/// `E^{⊗r}` in the tilting basis; the entry at `m` is `d_{λ(m)}`.
pub fn tensor_power_decomp(r: u32, p: PrimeChar) -> Result<Decomposition> {
    ensure!(r >= 1, "tensor power degree must be positive");
    check_degree(r)?;
    let dec = decompose(&char_weyl(1).pow(r), Basis::Tilting, r, p)?;
    // Summands are exactly the T(λ) with λ p-regular.
    for lambda in Partition2::all(r) {
        let c = dec.entry(lambda.weight());
        if (c > 0) != lambda.is_p_regular(p) || c < 0 {
            return Err(Error::Consistency(format!(
                "tensor power {r} at p = {p}: coefficient {c} at {lambda}"
            )));
        }
    }
    Ok(dec)
}

/// The short exact sequence `Δ(n-1)^F ⊗ L(j) -> Δ(pn+i) -> Δ(n)^F ⊗ L(i)`
/// (with `i + j = p - 2`) checked at the level of characters.
pub fn check_22h(n: u32, i: u32, p: PrimeChar) -> Result<bool> {
    let q = p.get() as u32;
    ensure!(n >= 1, "n must be positive");
    ensure!(i + 2 <= q, "i must lie in [0, p - 2]");
    let j = q - 2 - i;
    let lhs = char_weyl(q * n + i);
    let sub = char_weyl(n - 1).frobenius_twist(p).mul(&char_simple(j, p));
    let quot = char_weyl(n).frobenius_twist(p).mul(&char_simple(i, p));
    Ok(lhs == &sub + &quot)
}
