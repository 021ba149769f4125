use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::prime::{is_probable_prime, mul_mod, perfect_power, primes_up_to};
use crate::error::{Error, Result};

/// Effort limits for [`factor_bounded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial division runs over all primes up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-rho iterations allowed across all cofactors.
    pub rho_budget: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { trial_bound: 100_000, rho_budget: 1_000_000 }
    }
}

/// `|n| = prod primes^e * prod unfactored^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// Primes ascending. Values above 2^64 are strong probable primes.
    #[serde(serialize_with = "crate::decimal::powers")]
    pub primes: Vec<(BigUint, u32)>,
    /// Composites that exhausted the rho budget. None is a perfect power,
    /// and none shares a factor with `primes`.
    #[serde(serialize_with = "crate::decimal::powers")]
    pub unfactored: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_empty()
    }

    /// Product of the unfactored part; 1 on full success.
    pub fn cofactor(&self) -> BigUint {
        self.unfactored.iter().map(|(u, e)| u.pow(*e)).product()
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.primes.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    /// The primes as machine words, or `None` if any exceeds `u64`.
    pub fn word_primes(&self) -> Option<Vec<u64>> {
        self.primes.iter().map(|(p, _)| p.to_u64()).collect()
    }

    /// Factorization of the `e`-th power.
    pub fn pow(&self, e: u32) -> Factorization {
        let scale = |v: &[(BigUint, u32)]| -> Vec<(BigUint, u32)> {
            if e == 0 {
                Vec::new()
            } else {
                v.iter().map(|(p, x)| (p.clone(), x * e)).collect()
            }
        };
        Factorization { primes: scale(&self.primes), unfactored: scale(&self.unfactored) }
    }

    /// Factorization of the product.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut primes: BTreeMap<BigUint, u32> = BTreeMap::new();
        for (p, e) in self.primes.iter().chain(&other.primes) {
            *primes.entry(p.clone()).or_default() += e;
        }
        let mut pieces: BTreeMap<BigUint, u32> = BTreeMap::new();
        for (u, e) in self.unfactored.iter().chain(&other.unfactored) {
            *pieces.entry(u.clone()).or_default() += e;
        }
        let mut state = State { primes, unfactored: BTreeMap::new(), rho_left: 0 };
        let stack = pieces.into_iter().collect();
        state.run(stack);
        state.finish()
    }
}

fn default_trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(FactorBudget::default().trial_bound))
}

struct State {
    primes: BTreeMap<BigUint, u32>,
    unfactored: BTreeMap<BigUint, u32>,
    rho_left: u64,
}

impl State {
    fn strip_known(&mut self, mut x: BigUint, e: u32) -> BigUint {
        for (p, pe) in self.primes.iter_mut() {
            while !x.is_one() && (&x % p).is_zero() {
                x /= p;
                *pe += e;
            }
        }
        x
    }

    fn run(&mut self, mut stack: Vec<(BigUint, u32)>) {
        loop {
            while let Some((x, e)) = stack.pop() {
                let x = self.strip_known(x, e);
                if x.is_one() {
                    continue;
                }
                if is_probable_prime(&x) {
                    *self.primes.entry(x).or_default() += e;
                } else if let Some((root, k)) = perfect_power(&x) {
                    stack.push((root, e * k));
                } else if let Some(d) = rho(&x, &mut self.rho_left) {
                    let other = &x / &d;
                    stack.push((d, e));
                    stack.push((other, e));
                } else {
                    *self.unfactored.entry(x).or_default() += e;
                }
            }
            // A prime found late may divide an earlier unfactored piece.
            let stale: Vec<_> = self
                .unfactored
                .keys()
                .filter(|u| self.primes.keys().any(|p| (*u % p).is_zero()))
                .cloned()
                .collect();
            if stale.is_empty() {
                break;
            }
            for u in stale {
                let e = self.unfactored.remove(&u).expect("present");
                stack.push((u, e));
            }
        }
    }

    fn finish(self) -> Factorization {
        Factorization {
            primes: self.primes.into_iter().collect(),
            unfactored: self.unfactored.into_iter().collect(),
        }
    }
}

/// Trial division, then strong probable-prime tests, perfect-power
/// detection and Brent's variant of Pollard rho on what remains.
pub fn factor_bounded(n: &BigInt, budget: &FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInteger);
    }
    let mut m = n.magnitude().clone();
    let mut primes: BTreeMap<BigUint, u32> = BTreeMap::new();
    let owned;
    let trial: &[u64] = if budget.trial_bound == FactorBudget::default().trial_bound {
        default_trial_primes()
    } else {
        owned = primes_up_to(budget.trial_bound);
        &owned
    };
    let mut may_be_composite = true;
    for &p in trial {
        if m.is_one() {
            break;
        }
        if BigUint::from(p) * p > m {
            may_be_composite = false;
            break;
        }
        let mut e = 0;
        // Word-sized remainders avoid allocating on every test.
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.insert(BigUint::from(p), e);
        }
    }
    let mut state = State { primes, unfactored: BTreeMap::new(), rho_left: budget.rho_budget };
    if !m.is_one() {
        if may_be_composite {
            state.run(vec![(m, 1)]);
        } else {
            // Every prime below sqrt(m) was tried.
            *state.primes.entry(m).or_default() += 1;
        }
    }
    Ok(state.finish())
}

fn rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    match n.to_u64() {
        Some(w) => rho_word(w, budget).map(BigUint::from),
        None => rho_big(n, budget),
    }
}

const BATCH: u64 = 128;

fn rho_word(n: u64, budget: &mut u64) -> Option<u64> {
    let step = |y: u64, c: u64| ((mul_mod(y, y, n) as u128 + c as u128) % n as u128) as u64;
    for c in 1..n {
        let (mut x, mut y, mut ys) = (0u64, 2u64, 2u64);
        let (mut g, mut q, mut r) = (1u64, 1u64, 1u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let len = BATCH.min(r - k);
                if *budget < len {
                    *budget = 0;
                    return None;
                }
                *budget -= len;
                for _ in 0..len {
                    y = step(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += len;
            }
            r *= 2;
        }
        if g == n {
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = step(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    for c in 1u32.. {
        let c = BigUint::from(c);
        let step = |y: &BigUint| (y * y + &c) % n;
        let (mut x, mut y, mut ys) = (BigUint::zero(), BigUint::from(2u32), BigUint::from(2u32));
        let (mut g, mut q, mut r) = (one.clone(), one.clone(), 1u64);
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let len = BATCH.min(r - k);
                if *budget < len {
                    *budget = 0;
                    return None;
                }
                *budget -= len;
                for _ in 0..len {
                    y = step(&y);
                    q = (q * abs_diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += len;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Largest `e` with `p^e | n`.
pub fn valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroInteger);
    }
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut m = n.magnitude().clone();
    let mut e = 0;
    while (&m % p).is_zero() {
        m /= p;
        e += 1;
    }
    Ok(e)
}

/// Product of the distinct primes dividing `n`; `radical(±1) = 1`.
pub fn radical(n: &BigInt, budget: &FactorBudget) -> Result<BigUint> {
    let f = factor_bounded(n, budget)?;
    if !f.is_complete() {
        return Err(Error::BudgetExhausted(f.cofactor().to_string()));
    }
    Ok(f.primes.iter().map(|(p, _)| p.clone()).product())
}

/// Radical of a machine word, by trial division (always completes).
pub fn radical_u64(n: u64) -> u64 {
    super::prime::small_prime_divisors(n).into_iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes_of(n: i64) -> Vec<(u64, u32)> {
        let f = factor_bounded(&BigInt::from(n), &FactorBudget::default()).unwrap();
        assert!(f.is_complete());
        f.primes.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect()
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(primes_of(61952), vec![(2, 9), (11, 2)]);
        assert_eq!(primes_of(19712), vec![(2, 8), (7, 1), (11, 1)]);
        // 48373 = 13 * 61^2.
        assert_eq!(primes_of(-96746), vec![(2, 1), (13, 1), (61, 2)]);
        assert_eq!(primes_of(1), vec![]);
        assert_eq!(factor_bounded(&BigInt::zero(), &FactorBudget::default()), Err(Error::ZeroInteger));
    }

    #[test]
    fn rho_splits_past_trial_bound() {
        let budget = FactorBudget { trial_bound: 100, rho_budget: 1_000_000 };
        // 1000003 * 1000033 * 999983^2
        let n = BigInt::from(1_000_003u64 * 1_000_033) * BigInt::from(999_983u64).pow(2);
        let f = factor_bounded(&n, &budget).unwrap();
        assert!(f.is_complete());
        let got: Vec<_> = f.primes.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(got, vec![(999_983, 2), (1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn big_semiprime_with_rho() {
        let p = BigUint::from(4_294_967_291u64); // 2^32 - 5
        let q = BigUint::from(4_294_967_279u64); // 2^32 - 17
        let r = (BigUint::one() << 61u32) - 1u32;
        let n = BigInt::from(&p * &q * &r);
        let f = factor_bounded(&n, &FactorBudget::default()).unwrap();
        assert!(f.is_complete());
        assert_eq!(f.primes, vec![(q, 1), (p, 1), (r, 1)]);
    }

    #[test]
    fn exhausted_budget_leaves_cofactor() {
        let budget = FactorBudget { trial_bound: 10, rho_budget: 0 };
        let n = BigInt::from(4u64 * 1_000_003 * 1_000_033);
        let f = factor_bounded(&n, &budget).unwrap();
        assert_eq!(f.primes, vec![(BigUint::from(2u32), 2)]);
        assert_eq!(f.cofactor(), BigUint::from(1_000_003u64 * 1_000_033));
        assert!(radical(&n, &budget).is_err());
    }

    #[test]
    fn perfect_power_cofactor_is_resolved() {
        let budget = FactorBudget { trial_bound: 10, rho_budget: 0 };
        let n = BigInt::from(1_000_003u64).pow(3);
        let f = factor_bounded(&n, &budget).unwrap();
        assert_eq!(f.primes, vec![(BigUint::from(1_000_003u64), 3)]);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&61952.into(), 2).unwrap(), 9);
        assert_eq!(valuation(&61952.into(), 11).unwrap(), 2);
        assert_eq!(valuation(&539.into(), 7).unwrap(), 2);
        assert_eq!(valuation(&(-5).into(), 3).unwrap(), 0);
        assert_eq!(valuation(&BigInt::zero(), 3), Err(Error::ZeroInteger));
    }

    #[test]
    fn radicals() {
        let b = FactorBudget::default();
        assert_eq!(radical(&12.into(), &b).unwrap(), BigUint::from(6u32));
        assert_eq!(radical(&30.into(), &b).unwrap(), BigUint::from(30u32));
        assert_eq!(radical(&(-1).into(), &b).unwrap(), BigUint::one());
        assert_eq!(radical_u64(72), 6);
        assert_eq!(radical_u64(1), 1);
    }
}
