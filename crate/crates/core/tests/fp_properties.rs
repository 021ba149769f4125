use monogen::fp::{factor_mod_p, is_irreducible_mod_p, reduce_mod_p, ModPoly};
use monogen::IntPoly;
use proptest::prelude::*;

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 43, 89, 97];

fn mod_poly(max_deg: usize) -> impl Strategy<Value = ModPoly> {
    (prop::sample::select(PRIMES.to_vec()), prop::collection::vec(any::<u64>(), 2..=max_deg + 1))
        .prop_map(|(p, mut c)| {
            // Force a nonzero leading coefficient so the degree is as drawn.
            let last = c.len() - 1;
            c[last] = 1 + c[last] % (p - 1);
            ModPoly::new(p, c).unwrap()
        })
}

/// Every monic polynomial of the given degree over `F_p`.
fn monics(p: u64, degree: usize) -> Vec<ModPoly> {
    let count = p.pow(degree as u32);
    (0..count)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                c.push(idx % p);
                idx /= p;
            }
            c.push(1);
            ModPoly::new(p, c).unwrap()
        })
        .collect()
}

fn brute_force_irreducible(f: &ModPoly) -> bool {
    let n = f.degree().unwrap();
    (1..=n / 2).all(|d| monics(f.modulus(), d).iter().all(|g| !f.rem(g).unwrap().is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factorization_invariants(f in mod_poly(12)) {
        let fac = factor_mod_p(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        let degree_sum: usize = fac.factors.iter().map(|(g, e)| g.degree().unwrap() * *e as usize).sum();
        prop_assert_eq!(degree_sum, f.degree().unwrap());
        for (i, (g, _)) in fac.factors.iter().enumerate() {
            prop_assert!(g.is_monic());
            prop_assert!(is_irreducible_mod_p(g).unwrap());
            prop_assert!(fac.factors[..i].iter().all(|(h, _)| h != g));
        }
    }

    #[test]
    fn rabin_matches_trial_division(
        p in prop::sample::select(vec![2u64, 3, 5]),
        c in prop::collection::vec(any::<u64>(), 2..=6),
    ) {
        let mut c = c;
        let last = c.len() - 1;
        c[last] = 1;
        let f = ModPoly::new(p, c).unwrap();
        prop_assert_eq!(is_irreducible_mod_p(&f).unwrap(), brute_force_irreducible(&f));
    }

    #[test]
    fn frobenius_identity(c in prop::collection::vec(-50i64..50, 1..8), p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let f = reduce_mod_p(&IntPoly::from_i64s(&c), p).unwrap();
        prop_assert_eq!(f.pow(p), f.inflate(p as usize));
    }
}
