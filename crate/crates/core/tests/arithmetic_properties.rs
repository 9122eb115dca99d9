//! Randomized properties of the exact integer primitives.

use num_traits::{One, Zero};
use perfnum::bigmath::{self, nat, FactorBudget, Natural};
use proptest::prelude::*;

fn natural_from_bytes(bytes: &[u8]) -> Natural {
    Natural::from_bytes_be(bytes)
}

proptest! {
    #[test]
    fn iroot_brackets_its_input(bytes in proptest::collection::vec(any::<u8>(), 0..48), m in 1u32..=10) {
        let n = natural_from_bytes(&bytes);
        let r = bigmath::iroot(&n, m);
        prop_assert!(r.pow(m) <= n);
        prop_assert!((&r + Natural::one()).pow(m) > n);
    }

    #[test]
    fn iroot_matches_nth_root(bytes in proptest::collection::vec(any::<u8>(), 0..48), m in 1u32..=10) {
        let n = natural_from_bytes(&bytes);
        prop_assert_eq!(bigmath::iroot(&n, m), n.nth_root(m));
    }

    #[test]
    fn perfect_power_round_trips(r in 2u64..=100_000, m in 2u32..=9) {
        let base = nat(r as u128);
        let n = base.pow(m);
        prop_assert_eq!(bigmath::as_perfect_power(&n, m), Some(base));
        // x^m and (x+1)^m differ by more than 1 for x >= 1, so n + 1
        // is never an m-th power
        let shifted: Natural = &n + Natural::one();
        prop_assert_eq!(bigmath::as_perfect_power(&shifted, m), None);
    }

    #[test]
    fn v2_reads_back_planted_valuation(odd in 1u64..=1_000_000, k in 0u64..=40) {
        let n: Natural = nat((2 * odd + 1) as u128) << k;
        prop_assert_eq!(bigmath::v2(&n).unwrap(), k);
    }

    #[test]
    fn radical_divides_and_is_squarefree(n in 2u64..=1_000_000_000) {
        let budget = FactorBudget::default();
        let value = nat(n as u128);
        let rad = bigmath::radical(&value, &budget).unwrap();
        prop_assert!((&value % &rad).is_zero());
        let rad_factors = bigmath::factor(&rad, &budget);
        prop_assert!(rad_factors.complete);
        prop_assert!(rad_factors.factors.iter().all(|(_, e)| *e == 1));
        let square: Natural = &value * &value;
        prop_assert_eq!(bigmath::radical(&square, &budget).unwrap(), rad);
    }

    #[test]
    fn factor_is_deterministic_and_recomposes(n in 1u64..=1_000_000_000, seed in any::<u64>()) {
        let budget = FactorBudget::with_seed(seed);
        let value = nat(n as u128);
        let first = bigmath::factor(&value, &budget);
        let second = bigmath::factor(&value, &budget);
        prop_assert_eq!(&first, &second);
        prop_assert!(first.complete);
        prop_assert_eq!(first.product(), value);
    }
}

#[test]
fn factor_determinism_survives_rho_territory() {
    // Composites of two primes past the trial bound exercise the rho path;
    // the same seed must reproduce the same split.
    let budget = FactorBudget::with_seed(7);
    let n: Natural = nat(1_000_003) * nat(1_000_033) * nat(1_009);
    let first = bigmath::factor(&n, &budget);
    let second = bigmath::factor(&n, &budget);
    assert_eq!(first, second);
    assert!(first.complete);
    assert_eq!(first.product(), n);
    assert_eq!(first.factors.len(), 3);
}
