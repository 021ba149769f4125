use monogen::intarith::{
    factor_bounded, radical, squarefree_status, valuation, FactorBudget, SquarefreeVerdict,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use rayon::prelude::*;

/// Smallest prime factor for every m <= bound.
fn spf_sieve(bound: usize) -> Vec<u32> {
    let mut spf = vec![0u32; bound + 1];
    for i in 2..=bound {
        if spf[i] == 0 {
            for j in (i..=bound).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

#[test]
fn squarefree_status_matches_sieve_up_to_a_million() {
    const BOUND: usize = 1_000_000;
    let spf = spf_sieve(BOUND);
    let budget = FactorBudget::default();
    let mismatches: Vec<usize> = (1..=BOUND)
        .into_par_iter()
        .filter(|&m| {
            let mut x = m;
            let mut smallest_square = None;
            while x > 1 {
                let p = spf[x] as usize;
                x /= p;
                if x % p == 0 && smallest_square.is_none() {
                    smallest_square = Some(p);
                }
                while x % p == 0 {
                    x /= p;
                }
            }
            let expected = match smallest_square {
                None => SquarefreeVerdict::Squarefree,
                Some(p) => SquarefreeVerdict::NotSquarefree { witness: BigUint::from(p) },
            };
            let n = if m % 3 == 0 { -BigInt::from(m) } else { BigInt::from(m) };
            squarefree_status(&n, &budget).unwrap().verdict != expected
        })
        .collect();
    assert!(mismatches.is_empty(), "first mismatches: {:?}", &mismatches[..mismatches.len().min(10)]);
}

fn nonzero_big() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        (1i64..1_000_000_000).prop_map(BigInt::from),
        (1i64..1_000_000_000).prop_map(|x| -BigInt::from(x)),
        (1u64.., 1u64..100_000).prop_map(|(x, y)| BigInt::from(x) * BigInt::from(y) * BigInt::from(y)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factorization_reconstructs(n in nonzero_big()) {
        let f = factor_bounded(&n, &FactorBudget::default()).unwrap();
        let product: BigUint = f.primes.iter().map(|(p, e)| p.pow(*e)).product::<BigUint>() * f.cofactor();
        prop_assert_eq!(&product, n.magnitude());
        for (p, _) in &f.primes {
            prop_assert!(monogen::intarith::is_probable_prime(p));
        }
    }

    #[test]
    fn radical_is_idempotent_divisor(n in nonzero_big()) {
        let b = FactorBudget::default();
        let r = radical(&n, &b).unwrap();
        prop_assert!((n.magnitude() % &r).is_zero());
        prop_assert_eq!(radical(&BigInt::from(r.clone()), &b).unwrap(), r);
    }

    #[test]
    fn valuation_is_exact(n in nonzero_big(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97])) {
        let e = valuation(&n, p).unwrap();
        let pe = BigUint::from(p).pow(e);
        prop_assert!((n.magnitude() % &pe).is_zero());
        prop_assert!(!(n.magnitude() % (pe * p)).is_zero());
    }

    #[test]
    fn not_squarefree_witness_divides_twice(n in nonzero_big()) {
        let s = squarefree_status(&n, &FactorBudget::default()).unwrap();
        if let SquarefreeVerdict::NotSquarefree { witness } = &s.verdict {
            prop_assert!(!witness.is_one());
            prop_assert!((n.magnitude() % (witness * witness)).is_zero());
            prop_assert!(witness.to_u64().is_some());
        }
    }
}
