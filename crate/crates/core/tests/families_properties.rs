use monogen::dedekind::{dedekind_test, index_free_at_all_disc_primes, Aggregate, IndexVerdict};
use monogen::families::{
    build_composed, build_f1, build_f2, disc_closed, disc_of_composition, irreducibility_certificate,
    monogenicity_check, prime_check, squarefree_criterion_check, CaseId, CaseOutcome, Family, FamilyParams, Mode,
    PrimeStatus,
};
use monogen::intarith::{factor_bounded, FactorBudget};
use monogen::zx::discriminant;
use monogen::IntPoly;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::F1), Just(Family::F2)]
}

fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    (-bound..=bound).prop_filter("nonzero", |v| *v != 0)
}

fn params(n: std::ops::RangeInclusive<u32>, k: std::ops::RangeInclusive<u32>, bound: i64) -> impl Strategy<Value = FamilyParams> {
    (family(), n, k, nonzero(bound), -bound..=bound, nonzero(bound))
        .prop_map(|(fam, n, k, a, b, c)| FamilyParams::relaxed(fam, n, k, a, b, c).unwrap())
}

/// `(p, v_p)` for word-sized primes with `v_p >= 2`.
fn square_primes(d: &BigInt) -> Vec<(u64, u32)> {
    let fz = factor_bounded(d, &FactorBudget::default()).unwrap();
    fz.primes.iter().filter(|(_, e)| *e >= 2).filter_map(|(p, e)| p.to_u64().map(|w| (w, *e))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn three_discriminants_agree(q in params(3..=6, 1..=4, 10)) {
        let f = build_composed(&q);
        let by_resultant = discriminant(&f).unwrap();
        let inner = IntPoly::binomial(q.k() as usize, BigInt::from(q.b()));
        prop_assert_eq!(disc_of_composition(&q.outer(), &inner).unwrap(), by_resultant.clone());
        if let Ok(closed) = disc_closed(&q) {
            prop_assert_eq!(closed, by_resultant);
        }
    }

    #[test]
    fn decided_cases_agree_with_oracle(q in params(2..=5, 1..=4, 8)) {
        let f = build_composed(&q);
        let d = discriminant(&f).unwrap();
        prop_assume!(!d.is_zero());
        prop_assume!(irreducibility_certificate(&f).unwrap().is_certified());
        for (p, _) in square_primes(&d) {
            let case = prime_check(&q, p).unwrap();
            let oracle = dedekind_test(&f, p).unwrap().verdict;
            match case.verdict {
                CaseOutcome::Ambiguous => {
                    // The coprimality reading of the power-split cases is exact.
                    if matches!(case.case_id, CaseId::F1DividesK | CaseId::F2DividesK) {
                        prop_assert_eq!(case.tentative, Some(oracle), "{} at {}", q, p);
                    }
                }
                v => prop_assert_eq!(v, CaseOutcome::from(oracle), "{} at {}: {:?}", q, p, case),
            }
        }
    }

    #[test]
    fn pipeline_modes_agree(q in params(2..=4, 1..=3, 6)) {
        let both = monogenicity_check(&q, Mode::FastWithOracleFallback);
        let oracle = monogenicity_check(&q, Mode::OracleOnly);
        prop_assert_eq!(&both.aggregate, &oracle.aggregate);
        let fast = monogenicity_check(&q, Mode::FastOnly);
        // Fast-only may leave primes open but never contradicts the oracle.
        for (f, o) in fast.per_prime.iter().zip(&oracle.per_prime) {
            prop_assert_eq!(f.prime, o.prime);
            if f.verdict != PrimeStatus::Unknown {
                prop_assert_eq!(f.verdict, o.verdict);
            }
        }
    }

    #[test]
    fn trivial_composition_recovers_outer(fam in family(), n in 2u32..=6, a in nonzero(12), c in nonzero(12)) {
        let q = FamilyParams::relaxed(fam, n, 1, a, 0, c).unwrap();
        let outer = match fam {
            Family::F1 => build_f1(n, a, c).unwrap(),
            Family::F2 => build_f2(n, a, c).unwrap(),
        };
        prop_assert_eq!(build_composed(&q), outer.clone());
        let d = discriminant(&outer).unwrap();
        prop_assume!(!d.is_zero());
        let primes: Vec<u64> = square_primes(&d).into_iter().map(|(p, _)| p).collect();
        let report = monogenicity_check(&q, Mode::FastWithOracleFallback);
        for p in primes {
            let pr = report.per_prime.iter().find(|r| r.prime == p).unwrap();
            let direct = dedekind_test(&outer, p).unwrap().verdict;
            prop_assert_eq!(pr.verdict, PrimeStatus::from(direct));
        }
    }
}

/// Every instance the criterion accepts on a small grid is monogenic, for
/// both the composed polynomial and its `k = 1, b = 0` reduction.
#[test]
fn criterion_is_sound_on_grid() {
    let mut satisfied = 0;
    for n in 2..=4u32 {
        for k in [1u32, 2, 3, 4, 6] {
            for a in [-3i64, -2, -1, 1, 2, 3, 6] {
                for c in 1..=30i64 {
                    for b in (-12..=12i64).filter(|b| *b != 0 && num_integer::gcd(*b, c) > 1) {
                        let q = FamilyParams::relaxed(Family::F1, n, k, a, b, c).unwrap();
                        if !squarefree_criterion_check(&q, None).unwrap().is_satisfied() {
                            continue;
                        }
                        satisfied += 1;
                        for target in [q, q.base()] {
                            let r = monogenicity_check(&target, Mode::OracleOnly);
                            assert_eq!(r.aggregate, Aggregate::Monogenic, "{target}");
                        }
                    }
                }
            }
        }
    }
    assert!(satisfied > 50, "grid too thin: {satisfied}");
}

#[test]
fn oracle_report_matches_pipeline_on_examples() {
    for (fam, n, k, a, b, c) in [(Family::F1, 3, 2, 1, 2, 2), (Family::F2, 3, 2, 1, 1, 2)] {
        let q = FamilyParams::new(fam, n, k, a, b, c).unwrap();
        let f = build_composed(&q);
        let r = index_free_at_all_disc_primes(&f, &[2, 7, 11]).unwrap();
        assert_eq!(r.aggregate, Aggregate::Monogenic);
        assert!(r.per_prime.iter().all(|p| p.verdict == IndexVerdict::IndexFree));
    }
}
