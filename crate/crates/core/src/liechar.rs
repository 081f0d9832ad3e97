//! Characters of Lie powers of the natural module, the characteristic 2
//! splitting into pieces `Δ(2)^{⊗s} ⊗ Δ(1)^{⊗t}`, and lower bounds derived
//! from it.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::charring::{Partition2, SymCharacter, WeightSet};
use crate::error::{ensure, Error, Result};
use crate::modarith::{divisors, mobius, witt_bidegree, witt_weight_count, PrimeChar};
use crate::tiltchar::{
    char_weyl, check_degree, decompose, tensor_power_decomp, Basis, Decomposition,
};

const TWO: PrimeChar = PrimeChar::TWO;

/// Character of `L^r(E)`: weight `r - 2i` has multiplicity equal to the
/// number of Lyndon words of length `r` with `i` letters `y`.
pub fn char_lie_power(r: u32) -> Result<SymCharacter> {
    ensure!(r >= 1, "Lie power degree must be positive");
    check_degree(r)?;
    let mut pairs = Vec::new();
    for i in 0..=r / 2 {
        let count = witt_weight_count(r as u64, i as u64)?;
        let count = count.to_i128().ok_or(Error::DegreeTooLarge {
            degree: r,
            max: MAX_LIE_DEGREE,
        })?;
        pairs.push((r - 2 * i, count));
    }
    SymCharacter::from_pairs(pairs)
}

const MAX_LIE_DEGREE: u32 = crate::tiltchar::MAX_CHAR_DEGREE;

/// Character of the degree `n` Lie power of a module with character `base`:
/// `(1/n) Σ_{d|n} μ(d) ψ^d(base)^{n/d}`, with `ψ^d` scaling weights by `d`.
pub fn lie_power_of(base: &SymCharacter, n: u32) -> Result<SymCharacter> {
    ensure!(n >= 1, "Lie power degree must be positive");
    let mut sum = SymCharacter::zero();
    for d in divisors(n as u64) {
        let mu = mobius(d) as i128;
        if mu == 0 {
            continue;
        }
        let d = d as u32;
        let term = base.scale_weights(d).pow(n / d);
        sum.add_scaled(&term, mu)?;
    }
    let mut pairs = Vec::new();
    for (w, c) in sum.iter() {
        if c % n as i128 != 0 {
            return Err(Error::Consistency(format!(
                "Lie power character coefficient {c} at weight {w} not divisible by {n}"
            )));
        }
        pairs.push((w, c / n as i128));
    }
    SymCharacter::from_pairs(pairs)
}

/// One direct summand `m_{s,t} D_{s,t}` of `L^{2s+3t}(E)` in characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StohrSummand {
    pub s: u32,
    pub t: u32,
    pub mult: u64,
    pub character: SymCharacter,
}

impl StohrSummand {
    pub fn new(s: u32, t: u32) -> Result<Self> {
        ensure!(s >= 1 && t >= 1, "Stöhr summands need s, t >= 1");
        check_degree(2 * s + 3 * t)?;
        let mult = witt_bidegree(s as u64, t as u64)?
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("m_{{{s},{t}}} overflows u64")))?;
        let character = char_weyl(2).pow(s).mul(&char_weyl(1).pow(t));
        Ok(StohrSummand {
            s,
            t,
            mult,
            character,
        })
    }

    /// GL(2) degree `2s + 3t`.
    pub fn degree(&self) -> u32 {
        2 * self.s + 3 * self.t
    }
}

/// The summands with `2s + 3t = r`, `s, t >= 1`, ordered by increasing `t`.
pub fn stohr_pairs(r: u32) -> Result<Vec<StohrSummand>> {
    ensure!(r >= 4, "the characteristic 2 decomposition needs r >= 4");
    let mut out = Vec::new();
    let mut t = 1;
    while 3 * t + 2 <= r {
        let rest = r - 3 * t;
        if rest.is_multiple_of(2) {
            out.push(StohrSummand::new(rest / 2, t)?);
        }
        t += 1;
    }
    Ok(out)
}

/// Tilting decomposition of `Δ(2)^{⊗s} ⊗ Δ(1)^{⊗t}` at `p = 2`, checked to be
/// non-negative with positive support exactly `A_{2s+t}`.
pub fn stohr_tilting_decomp(x: &StohrSummand) -> Result<Decomposition> {
    let dec = decompose(&x.character, Basis::Tilting, x.degree(), TWO)?;
    if !dec.is_nonnegative() {
        return Err(Error::Consistency(format!(
            "D_{{{},{}}} has negative tilting coefficients {:?}",
            x.s,
            x.t,
            dec.negative_entries()
        )));
    }
    let expected: Vec<u32> = WeightSet::new(2 * x.s + x.t)?.iter().collect();
    if dec.positive_support() != expected {
        return Err(Error::Consistency(format!(
            "D_{{{},{}}} tilting support {:?} differs from A_{}",
            x.s,
            x.t,
            dec.positive_support(),
            2 * x.s + x.t
        )));
    }
    Ok(dec)
}

/// Lower bound for the multiplicity of `T(λ)` in `L^r(E)` at `p = 2`:
/// `Σ m_{s,t} d_{λ}(E^{⊗t})` over the pairs `2s + 3t = r` with
/// `0 < λ1 - λ2 <= t`.
pub fn corollary_36_bound(lambda: Partition2, r: u32) -> Result<u128> {
    ensure!(lambda.degree() == r, "{lambda} is not a partition of {r}");
    ensure!(lambda.is_p_regular(TWO), "{lambda} is not 2-regular");
    let m = lambda.weight();
    let mut bound = 0u128;
    if r < 4 {
        return Ok(0);
    }
    for x in stohr_pairs(r)? {
        if m == 0 || m > x.t {
            continue;
        }
        let coeff = tensor_power_decomp(x.t, TWO)?.entry(m);
        bound += x.mult as u128 * coeff as u128;
    }
    Ok(bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Tilting,
    NotTiltingCertified,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Tilting => "tilting",
            Verdict::NotTiltingCertified => "not-tilting-certified",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDecompReport {
    pub r: u32,
    pub p: PrimeChar,
    pub character: SymCharacter,
    pub decomposition: Decomposition,
    pub verdict: Verdict,
}

/// `L^r(E)` in the tilting basis. For `p ∤ r` the module is a summand of
/// `E^{⊗r}`, so a negative coefficient there is a hard error.
pub fn lie_tilting_decomp(r: u32, p: PrimeChar) -> Result<LieDecompReport> {
    let character = char_lie_power(r)?;
    let decomposition = decompose(&character, Basis::Tilting, r, p)?;
    lie_report_from(character, decomposition)
}

pub(crate) fn lie_report_from(
    character: SymCharacter,
    decomposition: Decomposition,
) -> Result<LieDecompReport> {
    let (r, p) = (decomposition.degree(), decomposition.prime());
    let verdict = if !p.divides(r as u64) {
        if !decomposition.is_nonnegative() {
            return Err(Error::Consistency(format!(
                "L^{r}(E) at p = {p} has negative tilting coefficients {:?}",
                decomposition.negative_entries()
            )));
        }
        Verdict::Tilting
    } else if decomposition.is_nonnegative() {
        Verdict::Inconclusive
    } else {
        Verdict::NotTiltingCertified
    };
    Ok(LieDecompReport {
        r,
        p,
        character,
        decomposition,
        verdict,
    })
}

/// Composition factors of `L^4(Δ(2))` at `p = 2`, checked against
/// `L(6), 2 L(4), 3 L(2), 4 L(0)`.
pub fn l4_delta2_comp_factors() -> Result<Decomposition> {
    let character = lie_power_of(&char_weyl(2), 4)?;
    let dec = decompose(&character, Basis::Simple, 8, TWO)?;
    let expected = [(6, 1), (4, 2), (2, 3), (0, 4)];
    if dec
        .entries()
        .iter()
        .map(|(&m, &c)| (m, c))
        .ne(expected.iter().rev().copied())
    {
        return Err(Error::Consistency(format!(
            "L^4(Δ(2)) composition factors {:?} differ from the expected list",
            dec.entries()
        )));
    }
    Ok(dec)
}
