use proptest::prelude::*;

use lietilt::charring::{Partition2, SymCharacter};
use lietilt::gzeta::{gzeta_dim, theorem_b_closed_form, theorem_b_predicate};
use lietilt::liechar::char_lie_power;
use lietilt::report::theorem_c_report;
use lietilt::tiltchar::{char_simple, decompose, tensor_power_decomp, Basis};
use lietilt::PrimeChar;

fn prime() -> impl Strategy<Value = PrimeChar> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(|p| PrimeChar::new(p).unwrap())
}

proptest! {
    #[test]
    fn decompose_then_reconstruct(
        p in prime(),
        parity in 0u32..2,
        coeffs in prop::collection::vec(0i128..20, 1..15),
        basis in prop::sample::select(vec![Basis::Delta, Basis::Simple, Basis::Tilting]),
    ) {
        let mut chi = SymCharacter::zero();
        let mut top = parity;
        for (k, &c) in coeffs.iter().enumerate() {
            let m = parity + 2 * k as u32;
            if c > 0 {
                top = m;
            }
            chi.add_scaled(&basis.character(m, p), c).unwrap();
        }
        let r = top.max(1) + (top.max(1) + parity) % 2;
        let dec = decompose(&chi, basis, r, p).unwrap();
        prop_assert_eq!(dec.reconstruct(), chi);
        prop_assert!(dec.is_nonnegative());
        for (k, &c) in coeffs.iter().enumerate() {
            prop_assert_eq!(dec.entry(parity + 2 * k as u32), c);
        }
    }

    #[test]
    fn tensor_power_support(r in 1u32..40, p in prime()) {
        let dec = tensor_power_decomp(r, p).unwrap();
        let regular: Vec<u32> = Partition2::p_regular(r, p).map(|l| l.weight()).collect();
        let mut support = dec.positive_support();
        support.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(support, regular);
        prop_assert!(dec.is_nonnegative());
    }

    #[test]
    fn lie_power_dimension(r in 1u32..60) {
        let chi = char_lie_power(r).unwrap();
        let mut total = 0i128;
        for d in 1..=r {
            if r % d == 0 {
                total += lietilt::modarith::mobius(d as u64) as i128 * (1i128 << (r / d));
            }
        }
        prop_assert_eq!(chi.dimension(), total / r as i128);
    }

    #[test]
    fn theorem_b_agrees(r in 2u64..2000, p in prime()) {
        prop_assert_eq!(theorem_b_predicate(r, p).unwrap(), theorem_b_closed_form(r, p));
    }

    #[test]
    fn p_power_gzeta_is_simple_dimension(p in prime(), m in 1u32..4) {
        let r = p.get().pow(m);
        prop_assume!(r <= 250);
        let dim = gzeta_dim(r, p).unwrap();
        prop_assert_eq!(dim as i128, char_simple(r as u32 - 2, p).dimension());
    }
}

#[test]
fn theorem_c_rows_are_character_consistent() {
    for (r, q) in [(9, 3), (27, 3), (10, 5), (50, 5), (25, 5), (14, 7)] {
        let p = PrimeChar::new(q).unwrap();
        let rows = theorem_c_report(r, p).unwrap();
        assert!(!rows.is_empty());
        for row in rows.iter().filter(|x| x.claimed) {
            assert!(row.char_consistent, "r = {r}, p = {q}, λ = {}", row.lambda);
        }
    }
}
