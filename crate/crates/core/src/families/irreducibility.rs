//! Irreducibility certificates over the integers.
//!
//! Two certificates are tried: Eisenstein at a prime dividing every
//! non-leading coefficient, then the degree patterns of factorizations modulo
//! several primes of good reduction. A proper factor over the integers would
//! have a degree that is a subset sum of every pattern, so an empty
//! intersection of proper subset sums proves irreducibility. Failure of both
//! yields `Unknown`, never a claim of reducibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{factor_mod_p, gcd_mod_p, reduce_mod_p};
use crate::intarith::{factor_bounded, primes_up_to, small_prime_divisors, FactorBudget};
use crate::zx::IntPoly;

/// Primes of good reduction consulted for degree patterns.
const PATTERN_PRIMES: usize = 20;
/// Search bound for those primes.
const PATTERN_SEARCH: u64 = 2_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum IrreducibilityReason {
    Eisenstein { prime: u64 },
    ModPDegreePattern { primes: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Irreducibility {
    Certified { reason: IrreducibilityReason },
    Unknown,
}

impl Irreducibility {
    pub fn is_certified(&self) -> bool {
        matches!(self, Irreducibility::Certified { .. })
    }
}

fn eisenstein_prime(f: &IntPoly) -> Result<Option<u64>> {
    let coeffs = f.coeffs();
    let deg = coeffs.len() - 1;
    let g = coeffs[..deg].iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        // f = lc x^deg.
        return Ok(None);
    }
    let candidates: Vec<u64> = match g.abs().to_u64() {
        Some(w) => small_prime_divisors(w),
        None => factor_bounded(&g, &FactorBudget::default())?.word_primes().unwrap_or_default(),
    };
    let lc = &coeffs[deg];
    for l in candidates {
        let lb = BigInt::from(l);
        if (lc % &lb).is_zero() {
            continue;
        }
        if !(&coeffs[0] % (&lb * &lb)).is_zero() {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Bitmask over `0..=deg` of the degrees reachable as sums of factor degrees.
fn subset_sums(pattern: &[usize], deg: usize) -> Vec<bool> {
    let mut reach = vec![false; deg + 1];
    reach[0] = true;
    for &d in pattern {
        for s in (d..=deg).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn degree_pattern_primes(f: &IntPoly) -> Result<Option<Vec<u64>>> {
    let deg = f.degree().unwrap_or(0);
    let lc = f.leading_coeff().cloned().unwrap_or_default();
    let mut reach = vec![true; deg + 1];
    let mut used = Vec::new();
    for p in primes_up_to(PATTERN_SEARCH) {
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p)?;
        if !gcd_mod_p(&fp, &fp.derivative())?.is_one() {
            continue;
        }
        let pattern = factor_mod_p(&fp)?.degree_pattern();
        let sums = subset_sums(&pattern, deg);
        for (r, s) in reach.iter_mut().zip(sums) {
            *r &= s;
        }
        used.push(p);
        if reach[1..deg].iter().all(|r| !r) {
            return Ok(Some(used));
        }
        if used.len() == PATTERN_PRIMES {
            break;
        }
    }
    Ok(None)
}

/// Tries to prove `f` irreducible over the rationals.
pub fn irreducibility_certificate(f: &IntPoly) -> Result<Irreducibility> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(1) => {
            return Ok(Irreducibility::Certified {
                reason: IrreducibilityReason::ModPDegreePattern { primes: Vec::new() },
            })
        }
        _ => {}
    }
    if let Some(prime) = eisenstein_prime(f)? {
        return Ok(Irreducibility::Certified { reason: IrreducibilityReason::Eisenstein { prime } });
    }
    Ok(match degree_pattern_primes(f)? {
        Some(primes) => Irreducibility::Certified { reason: IrreducibilityReason::ModPDegreePattern { primes } },
        None => Irreducibility::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn eisenstein_examples() {
        let want = |l| Irreducibility::Certified { reason: IrreducibilityReason::Eisenstein { prime: l } };
        assert_eq!(irreducibility_certificate(&p(&[30, 30, 1])).unwrap(), want(2));
        assert_eq!(irreducibility_certificate(&p(&[22, 0, 22, 0, 8, 0, 1])).unwrap(), want(2));
    }

    #[test]
    fn degree_patterns() {
        // x^3 + x + 1 has no Eisenstein prime.
        let r = irreducibility_certificate(&p(&[1, 1, 0, 1])).unwrap();
        assert!(matches!(r, Irreducibility::Certified { reason: IrreducibilityReason::ModPDegreePattern { .. } }));
        // x^4 + 1 splits into quadratics or linears modulo every prime.
        assert_eq!(irreducibility_certificate(&p(&[1, 0, 0, 0, 1])).unwrap(), Irreducibility::Unknown);
        // Reducible polynomials are never certified.
        assert_eq!(irreducibility_certificate(&p(&[-1, 0, 0, 0, 1])).unwrap(), Irreducibility::Unknown);
        assert_eq!(irreducibility_certificate(&p(&[6, 5, 1])).unwrap(), Irreducibility::Unknown);
    }

    #[test]
    fn subset_sum_mask() {
        assert_eq!(subset_sums(&[1, 2], 3), vec![true, true, true, true]);
        assert_eq!(subset_sums(&[3], 3), vec![true, false, false, true]);
    }
}
