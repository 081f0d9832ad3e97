//! Characters, tilting decompositions and Lie powers of the natural module
//! for SL(2) and GL(2) over a field of prime characteristic.

pub mod charring;
pub mod error;
pub mod gzeta;
pub mod liechar;
pub mod modarith;
pub mod report;
pub mod tiltchar;

pub use charring::{Partition2, SymCharacter, WeightSet};
pub use error::{Error, Result};
pub use gzeta::{gzeta_dim, metabelian_summand, theorem_b_predicate, GZetaProfile};
pub use liechar::{char_lie_power, lie_tilting_decomp, LieDecompReport, Verdict};
pub use modarith::{binom_mod, PrimeChar};
pub use tiltchar::{
    char_simple, char_tilting, char_weyl, decompose, tensor_power_decomp, Basis, Decomposition,
};
