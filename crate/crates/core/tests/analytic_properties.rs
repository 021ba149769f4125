use monogen::analytic::{auxiliary_polynomial, empirical_census, square_root_count, CensusOptions, DensityConfig};
use monogen::intarith::radical_u64;
use monogen::zx::discriminant;
use monogen::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn config() -> impl Strategy<Value = DensityConfig> {
    (2u32..=7, 1u32..=6, (-12i64..=12).prop_filter("nonzero", |a| *a != 0), prop::sample::select(vec![2u64, 3, 5, 7, 11]))
        .prop_map(|(n, k, a, ell)| DensityConfig::relaxed(n, k, a, ell, 10, 10, 100).unwrap())
}

/// `a1^n (n+1)^(n+1) kappa x + n1^n (1 - a^n kappa x)^(n+1)`, expanded by
/// repeated multiplication.
fn right_side(cfg: &DensityConfig) -> IntPoly {
    let n = cfg.n();
    let kappa = BigInt::from(cfg.kappa());
    let lin = IntPoly::new(vec![BigInt::one(), -(BigInt::from(cfg.a()).pow(n) * &kappa)]);
    let mut power = IntPoly::one();
    for _ in 0..=n {
        power = &power * &lin;
    }
    let slope = BigInt::from(cfg.a1()).pow(n) * BigInt::from(n + 1).pow(n + 1) * kappa;
    &power.scale(&BigInt::from(cfg.n1()).pow(n)) + &IntPoly::new(vec![BigInt::zero(), slope])
}

/// Roots of `f` modulo `p^2` in `1..=p^(2+extra)`, evaluated with big integers.
fn naive_count(f: &IntPoly, p: u64, extra: u32) -> u64 {
    let m = BigInt::from(p * p);
    (1..=p.pow(2 + extra)).filter(|&x| f.eval(&BigInt::from(x)).mod_floor(&m).is_zero()).count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn auxiliary_identity(cfg in config()) {
        let g = auxiliary_polynomial(&cfg).unwrap();
        let n = cfg.n();
        let square = IntPoly::new(vec![BigInt::one(), BigInt::from(cfg.a()).pow(n) * cfg.kappa() * n]);
        prop_assert_eq!(&(&square * &square) * &g, right_side(&cfg));
        prop_assert_eq!(g.coeff(0), BigInt::from(cfg.n1()).pow(n));
        prop_assert_eq!(g.degree(), Some(n as usize - 1));
    }

    #[test]
    fn fixed_divisor_divides_kappa(cfg in config()) {
        let g = auxiliary_polynomial(&cfg).unwrap();
        let d = (1..=200).fold(BigInt::zero(), |acc, m| acc.gcd(&g.eval(&BigInt::from(m))));
        let kappa = cfg.kappa();
        prop_assert_eq!(radical_u64(kappa), kappa);
        prop_assert!((BigInt::from(kappa) % &d).is_zero(), "gcd {} vs kappa {}", d, kappa);
        if cfg.n() >= 3 {
            prop_assert!(!discriminant(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn root_count_matches_naive(coeffs in prop::collection::vec(-50i64..=50, 1..=5),
                                p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
                                extra in 0u32..=1) {
        let f = IntPoly::from_i64s(&coeffs);
        let fast = square_root_count(&f, p, extra).unwrap();
        prop_assert_eq!(fast, naive_count(&f, p, extra));
        if let Some(d) = f.degree().filter(|d| *d >= 1) {
            prop_assert!(fast <= (d as u64 * p.pow(extra + 1)).min(p.pow(2 + extra)));
        }
    }

    #[test]
    fn simple_roots_bound(cfg in config(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17])) {
        let g = auxiliary_polynomial(&cfg).unwrap();
        prop_assume!(cfg.n() >= 3);
        let d = discriminant(&g).unwrap();
        prop_assume!(!(d % p).is_zero());
        prop_assert!(square_root_count(&g, p, 0).unwrap() <= (cfg.n() as u64).min(p * p - 1));
    }
}

#[test]
fn worked_root_count() {
    assert_eq!(square_root_count(&IntPoly::from_i64s(&[4, -10]), 3, 0).unwrap(), 1);
}

#[test]
fn census_is_monotone() {
    let base = DensityConfig::relaxed(2, 2, 1, 5, 0, 0, 100).unwrap();
    let opts = CensusOptions::default();
    let mut prev: Option<(u64, u64, u64, u64)> = None;
    for (bm, cm) in [(10, 10), (10, 20), (20, 20), (30, 30), (40, 30)] {
        let r = empirical_census(&base.with_bounds(bm, cm), &opts).unwrap();
        assert!(r.criterion_satisfied <= r.monogenic_both);
        let now = (bm, cm, r.criterion_satisfied, r.monogenic_both);
        if let Some(p) = prev {
            assert!(now.2 >= p.2 && now.3 >= p.3, "{p:?} -> {now:?}");
        }
        prev = Some(now);
    }
}
