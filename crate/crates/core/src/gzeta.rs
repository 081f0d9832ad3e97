//! The submodule generated by the left-normed bracket `[y, x, ..., x]` in
//! `L^r(E)` for `p | r`.
//!
//! Expanding `(y)(ad(x + ty))^{r-1}` in the tensor algebra, a monomial with
//! `v` letters `y` in positions `P` has coefficient `t^{v-1} Σ_{q ∈ P} c_q`
//! where `c_k = (-1)^k C(r-1, k)`. The weight `(r - v, v)` space is non-zero
//! exactly when some `v`-subset of positions has a non-zero sum mod `p`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::modarith::{binom_mod, PrimeChar};
use crate::tiltchar::is_weyl_simple;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GZetaProfile {
    pub r: u64,
    pub p: PrimeChar,
    /// `c_0, ..., c_{r-1}` reduced into `[0, p)`.
    pub coeffs: Vec<u64>,
    /// `nonzero[v - 1]` for `v` in `1..=r`.
    pub nonzero: Vec<bool>,
    pub dim: u64,
}

impl GZetaProfile {
    pub fn new(r: u64, p: PrimeChar) -> Result<Self> {
        let coeffs = c_sequence(r, p)?;
        let nonzero: Vec<bool> = (1..=r)
            .map(|v| nonzero_from_coeffs(&coeffs, v, p))
            .collect();
        let dim = nonzero.iter().filter(|&&b| b).count() as u64;
        Ok(GZetaProfile {
            r,
            p,
            coeffs,
            nonzero,
            dim,
        })
    }

    /// Whether the weight `(r - v, v)` space is non-zero.
    pub fn is_nonzero(&self, v: u64) -> bool {
        v >= 1 && v <= self.r && self.nonzero[v as usize - 1]
    }

    pub fn is_p_power(&self) -> bool {
        self.p.is_power(self.r)
    }
}

/// `c_j = (-1)^j C(r - 1, j) mod p` for `j = 0..r`.
pub fn c_sequence(r: u64, p: PrimeChar) -> Result<Vec<u64>> {
    ensure!(
        r >= 1 && p.divides(r),
        "c_sequence needs p | r (r = {r}, p = {p})"
    );
    let q = p.get();
    Ok((0..r)
        .map(|j| {
            let b = binom_mod(r - 1, j, p);
            if j % 2 == 0 || b == 0 {
                b
            } else {
                q - b
            }
        })
        .collect())
}

fn nonzero_from_coeffs(coeffs: &[u64], v: u64, p: PrimeChar) -> bool {
    let q = p.get();
    let r = coeffs.len() as u64;
    if v == r {
        // Only one subset: all positions.
        return coeffs.iter().fold(0, |acc, &c| (acc + c) % q) != 0;
    }
    // For v < r, swapping a position with one carrying a different value
    // changes the sum, so some subset is non-zero unless all c_j agree.
    let c0 = coeffs[0];
    if coeffs.iter().all(|&c| c == c0) {
        !((v % q) * c0).is_multiple_of(q)
    } else {
        true
    }
}

pub fn weight_nonzero(r: u64, p: PrimeChar, v: u64) -> Result<bool> {
    ensure!((1..=r).contains(&v), "v = {v} outside 1..={r}");
    let coeffs = c_sequence(r, p)?;
    Ok(nonzero_from_coeffs(&coeffs, v, p))
}

/// Number of non-zero weight spaces of `Gζ`.
pub fn gzeta_dim(r: u64, p: PrimeChar) -> Result<u64> {
    Ok(GZetaProfile::new(r, p)?.dim)
}

/// Whether `T(r-1, 1)` is a summand of `L^r(E)`, decided through `Gζ`.
pub fn theorem_b_predicate(r: u64, p: PrimeChar) -> Result<bool> {
    ensure!(r >= 2, "theorem B concerns r >= 2");
    if !p.divides(r) {
        return Ok(true);
    }
    Ok(r == p.get() || gzeta_dim(r, p)? == r - 1)
}

/// `r = p` or `r` is not a power of `p`.
pub fn theorem_b_closed_form(r: u64, p: PrimeChar) -> bool {
    r == p.get() || !p.is_power(r)
}

/// Whether `M^r(E) ≅ ∇(r-1, 1)` is a summand of `L^r(E)`.
///
/// For `r` not a power of `p` this is `r = 2` or `r - 2 = a p^k - 1` with
/// `2 <= a <= p`. Among powers of `p` only `r = p` (always a summand) and the
/// computed cases `r = 4` (summand) and `r = 8` (not a summand) at `p = 2`
/// are known; every other power of `p` is rejected.
pub fn metabelian_summand(r: u64, p: PrimeChar) -> Result<bool> {
    ensure!(r > 1, "metabelian_summand needs r > 1");
    if p.is_power(r) {
        return match (r, p.get()) {
            (r, q) if r == q => Ok(true),
            (4, 2) => Ok(true),
            (8, 2) => Ok(false),
            _ => Err(crate::Error::InvalidArgument(format!(
                "r = {r} is a power of {p}; summandhood of M^r(E) is open there"
            ))),
        };
    }
    let m = u32::try_from(r - 2)
        .map_err(|_| crate::Error::InvalidArgument(format!("r = {r} too large")))?;
    Ok(r == 2 || is_weyl_simple(m, p))
}
