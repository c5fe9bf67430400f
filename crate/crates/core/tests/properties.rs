use hkcalc::properties::*;
use proptest::prelude::*;

#[test]
fn exterior_powers_match_roots() {
    for r in 1..=4 {
        for k in 0..=r {
            assert!(lambda_matches_roots(r, k, false).unwrap(), "wedge^{k} of rank {r}");
        }
    }
}

#[test]
fn symmetric_powers_match_roots() {
    for r in 1..=4 {
        for k in 0..=3 {
            assert!(lambda_matches_roots(r, k, true).unwrap(), "Sym^{k} of rank {r}");
        }
    }
}

#[test]
fn schubert_duality_small_grassmannians() {
    for (k, n) in [(2, 4), (2, 5), (3, 6)] {
        assert!(schubert_duality(k, n).unwrap(), "Gr({k},{n})");
    }
}

#[test]
fn chi_normalization() {
    assert!(chi_on_towers().unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lattice_invariants_under_base_change(n in 2usize..6, seed in any::<u64>()) {
        prop_assert!(lattice_invariants_stable(n, seed).unwrap());
    }

    #[test]
    fn ch_inverts(r in 1usize..5, seed in any::<u64>()) {
        prop_assert!(ch_round_trip(r, seed).unwrap());
    }

    #[test]
    fn binomial_square(seed in any::<u64>()) {
        prop_assert!(ring_binomial(seed).unwrap());
    }

    #[test]
    fn fujiki_symmetry_and_round_trip(seed in any::<u64>()) {
        prop_assert!(fujiki_symmetric(seed).unwrap());
    }

    #[test]
    fn trivector_alternates(seed in any::<u64>()) {
        prop_assert!(trivector_antisymmetric(seed).unwrap());
    }
}
