//! Property-based invariants, cross-checked against independent oracles:
//! reduced rationals from `num-rational` for slope ordering, and the
//! brute-force multiset search for monoid membership.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::collection::vec;
use proptest::prelude::*;

use nonfg_core::{
    construct_witness_from_generators, factorizations, in_subalgebra, member, member_bruteforce,
    verify_certificate, Certificate, DeepCheck, ExponentPair, GeneratorSet, Integers,
    LambdaFamily, Monomial, Slope, SparsePoly,
};

fn slope(n: impl Into<BigUint>, d: impl Into<BigUint>) -> Slope {
    Slope::new(n, d).unwrap()
}

fn rational(n: u128, d: u128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pair(a: u64, b: u64) -> ExponentPair {
    ExponentPair::new(a, b).unwrap()
}

proptest! {
    /// Cross-multiplication ordering on unreduced slopes must agree with
    /// the total order on reduced fractions, across the full u128 range.
    #[test]
    fn slope_ordering_matches_reduced_rationals(
        n1 in any::<u128>(),
        d1 in 1u128..,
        n2 in any::<u128>(),
        d2 in 1u128..,
    ) {
        let ours = slope(n1, d1).cmp(&slope(n2, d2));
        let oracle = rational(n1, d1).cmp(&rational(n2, d2));
        prop_assert_eq!(ours, oracle);
    }

    /// Equal slopes hash-independently of representation: comparisons see
    /// through non-reduced forms.
    #[test]
    fn slope_equality_is_representation_independent(
        n in 0u64..=1_000_000,
        d in 1u64..=1_000_000,
        scale in 1u64..=1_000,
    ) {
        let plain = slope(n, d);
        let scaled = slope(
            BigUint::from(n) * BigUint::from(scale),
            BigUint::from(d) * BigUint::from(scale),
        );
        prop_assert_eq!(&plain, &scaled);
        prop_assert_eq!(plain.cmp(&scaled), std::cmp::Ordering::Equal);
    }

    /// Exponent addition is commutative and associative.
    #[test]
    fn pair_addition_is_commutative_and_associative(
        a in vec((1u64..=1_000_000, 0u64..=1_000_000), 3),
    ) {
        let p = pair(a[0].0, a[0].1);
        let q = pair(a[1].0, a[1].1);
        let r = pair(a[2].0, a[2].1);
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
    }

    /// The slope of a sum of exponent pairs is squeezed between the least
    /// and greatest factor slopes.
    #[test]
    fn sum_slope_lies_between_factor_extremes(
        factors in vec((1u64..=1_000_000, 0u64..=1_000_000), 1..=8),
    ) {
        let mut total_a = BigUint::ZERO;
        let mut total_b = BigUint::ZERO;
        let mut slopes = Vec::new();
        for (a, b) in &factors {
            total_a += BigUint::from(*a);
            total_b += BigUint::from(*b);
            slopes.push(slope(*b, *a));
        }
        let combined = slope(total_b, total_a);
        let max = slopes.iter().max().unwrap();
        let min = slopes.iter().min().unwrap();
        prop_assert!(combined <= *max, "{combined} > {max}");
        prop_assert!(combined >= *min, "{combined} < {min}");
    }

    /// The reachability search and the exhaustive multiset search agree on
    /// every small instance.
    #[test]
    fn membership_search_agrees_with_bruteforce(
        raw_gens in vec((1u64..=6, 0u64..=6), 1..=4),
        target_a in 0u64..=12,
        target_b in 0u64..=12,
    ) {
        let gens = GeneratorSet::new(raw_gens.iter().map(|&(a, b)| pair(a, b))).unwrap();
        let target = Monomial::new(target_a, target_b);
        let fast = member(&gens, &target);
        let slow = member_bruteforce(&gens, &target).unwrap();
        prop_assert_eq!(fast.is_some(), slow);
        if let Some(f) = fast {
            prop_assert_eq!(f.weighted_sum(&gens), target);
        }
    }

    /// Every enumerated factorization reconstructs the target; the list is
    /// duplicate-free; the canonical factorization is its first entry.
    #[test]
    fn factorization_enumeration_is_sound_and_canonical(
        raw_gens in vec((1u64..=5, 0u64..=5), 1..=4),
        target_a in 0u64..=14,
        target_b in 0u64..=14,
    ) {
        let gens = GeneratorSet::new(raw_gens.iter().map(|&(a, b)| pair(a, b))).unwrap();
        let target = Monomial::new(target_a, target_b);
        let all = factorizations(&gens, &target, 64);
        for f in &all {
            prop_assert_eq!(f.weighted_sum(&gens), target.clone());
        }
        for (i, f) in all.iter().enumerate() {
            prop_assert!(!all[i + 1..].contains(f), "duplicate factorization");
        }
        match member(&gens, &target) {
            Some(first) => prop_assert_eq!(Some(&first), all.first()),
            None => prop_assert!(all.is_empty()),
        }
    }

    /// Any product of family monomials (times constants, plus another such
    /// product) lies back in the subalgebra.
    #[test]
    fn products_of_family_monomials_stay_inside(
        pick_fibonacci in any::<bool>(),
        first in vec(0usize..=6, 1..=4),
        second in vec(0usize..=6, 1..=4),
        scale in 1i64..=9,
    ) {
        let fam = if pick_fibonacci {
            LambdaFamily::fibonacci()
        } else {
            LambdaFamily::vertical()
        };
        let elements = fam.enumerate(7);
        let product = |indices: &[usize]| {
            indices.iter().fold(
                SparsePoly::constant(Integers, BigInt::from(scale)),
                |acc, &i| {
                    let g = &elements[i];
                    acc.mul(&SparsePoly::term(
                        Integers,
                        BigInt::from(1),
                        Monomial::from(g),
                    ))
                },
            )
        };
        let f = product(&first).add(&product(&second));
        let result = in_subalgebra(&f, &fam);
        prop_assert!(result.inside, "failing terms: {:?}", result.failing_terms);
        for g in &result.generating_monomials {
            prop_assert!(fam.contains(g));
        }
    }

    /// Over the integers with strictly positive coefficients no term can
    /// cancel, so the support of a product is exactly the Minkowski sum of
    /// the supports.
    #[test]
    fn product_support_is_minkowski_sum_of_supports(
        f_terms in vec((0u64..=8, 0u64..=8, 1i64..=9), 1..=5),
        g_terms in vec((0u64..=8, 0u64..=8, 1i64..=9), 1..=5),
    ) {
        let build = |terms: &[(u64, u64, i64)]| {
            SparsePoly::from_terms(
                Integers,
                terms
                    .iter()
                    .map(|&(a, b, c)| (Monomial::new(a, b), BigInt::from(c))),
            )
        };
        let f = build(&f_terms);
        let g = build(&g_terms);
        let mut expected = std::collections::BTreeSet::new();
        for s in f.monomials_of() {
            for t in g.monomials_of() {
                expected.insert(Monomial::new(s.a() + t.a(), s.b() + t.b()));
            }
        }
        let actual: std::collections::BTreeSet<_> =
            f.mul(&g).monomials_of().into_iter().collect();
        prop_assert_eq!(actual, expected);
    }

    /// Certificates built against arbitrary finite sets of vertical-family
    /// elements verify, pick the least witness index, and survive a JSON
    /// round trip byte-for-byte.
    #[test]
    fn vertical_certificates_verify_and_round_trip(
        heights in vec(0u64..=20, 1..=6),
    ) {
        let fam = LambdaFamily::vertical();
        let gens = GeneratorSet::new(heights.iter().map(|&b| pair(1, b))).unwrap();
        let cert = construct_witness_from_generators(&fam, &gens).unwrap();
        let max_b = heights.iter().max().copied().unwrap();
        prop_assert_eq!(cert.beta(), &slope(max_b, 1u32));
        prop_assert_eq!(cert.witness(), &pair(1, max_b + 1));
        prop_assert_eq!(cert.witness_in_family_index(), &BigUint::from(max_b + 1));
        prop_assert!(verify_certificate(&cert, DeepCheck::Run).pass);

        let json = cert.to_json();
        let back = Certificate::from_json(&json).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.to_json(), json);
    }

    /// The membership verdict for a single monomial is invariant under the
    /// coefficient ring: integer and mod-m rings agree everywhere.
    #[test]
    fn subalgebra_verdict_ignores_coefficient_ring(
        a in 0u64..=10,
        b in 0u64..=10,
        modulus in 2u64..=11,
        pick_fibonacci in any::<bool>(),
    ) {
        let fam = if pick_fibonacci {
            LambdaFamily::fibonacci()
        } else {
            LambdaFamily::vertical()
        };
        let over_z = SparsePoly::term(Integers, BigInt::from(1), Monomial::new(a, b));
        let over_mod = SparsePoly::term(
            nonfg_core::Modular::new(modulus).unwrap(),
            BigUint::from(1u32),
            Monomial::new(a, b),
        );
        prop_assert_eq!(
            in_subalgebra(&over_z, &fam).inside,
            in_subalgebra(&over_mod, &fam).inside
        );
    }
}

/// Ten thousand random slope comparisons with entries up to 2^64, checked
/// against reduced rationals — large enough to force multi-limb integer
/// paths on every comparison.
#[test]
fn slope_order_matches_oracle_on_large_sample() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x736c_6f70_6573);
    for round in 0..10_000 {
        let (n1, n2) = (rng.random::<u64>(), rng.random::<u64>());
        let (d1, d2) = (rng.random_range(1..=u64::MAX), rng.random_range(1..=u64::MAX));
        let ours = slope(n1, d1).cmp(&slope(n2, d2));
        let oracle = BigRational::new(BigInt::from(n1), BigInt::from(d1))
            .cmp(&BigRational::new(BigInt::from(n2), BigInt::from(d2)));
        assert_eq!(ours, oracle, "round {round}: {n1}/{d1} vs {n2}/{d2}");
    }
}

/// For a single monomial, the polynomial-level membership test must agree
/// with the brute-force oracle run over the family slice inside the
/// monomial's exponent box.
#[test]
fn single_monomial_subalgebra_agrees_with_bruteforce_over_truncations() {
    for fam in [LambdaFamily::vertical(), LambdaFamily::fibonacci()] {
        for a in 0u64..=12 {
            for b in 0u64..=12 {
                let f = SparsePoly::term(Integers, BigInt::from(1), Monomial::new(a, b));
                let inside = in_subalgebra(&f, &fam).inside;
                let expected = if (a, b) == (0, 0) {
                    true // a constant needs no generators
                } else {
                    let slice = fam.elements_within(&BigUint::from(a), &BigUint::from(b));
                    match GeneratorSet::new(slice) {
                        Ok(gens) => member_bruteforce(&gens, &Monomial::new(a, b)).unwrap(),
                        Err(_) => false, // no family element fits the box
                    }
                };
                assert_eq!(inside, expected, "{fam}: ({a},{b})");
            }
        }
    }
}

/// The Fibonacci helper satisfies its defining recurrence far beyond the
/// frozen prefix table.
#[test]
fn fibonacci_recurrence_holds_for_large_indices() {
    let fib = nonfg_core::fibonacci;
    for n in 1..=300i64 {
        assert_eq!(fib(n), fib(n - 1) + fib(n - 2), "recurrence breaks at {n}");
    }
    // sanity anchor: f(300) has 63 digits
    assert_eq!(fib(300).to_string().len(), 63);
}

/// Escalation certificates for both infinite families stay verifiable when
/// serialized and parsed back.
#[test]
fn escalation_chain_round_trips_through_json() {
    for fam in [LambdaFamily::vertical(), LambdaFamily::fibonacci()] {
        for cert in nonfg_core::escalation_chain(&fam, 8).unwrap() {
            let back = Certificate::from_json(&cert.to_json()).unwrap();
            assert_eq!(back, cert);
            assert!(verify_certificate(&back, DeepCheck::Skip).pass);
        }
    }
}
