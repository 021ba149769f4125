use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intarith::{is_prime_u64, mul_mod};
use crate::zx::IntPoly;

/// Largest residue range `square_root_count` will enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 50_000_000;

/// Number of `x` in `1..=p^(2 + extra)` with `f(x) = 0 mod p^2`, by direct
/// enumeration.
pub fn square_root_count(f: &IntPoly, p: u64, extra: u32) -> Result<u64> {
    square_root_count_with_budget(f, p, extra, DEFAULT_ENUMERATION_BUDGET)
}

pub fn square_root_count_with_budget(f: &IntPoly, p: u64, extra: u32, budget: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let range = p
        .checked_pow(2 + extra)
        .filter(|r| *r <= budget)
        .ok_or_else(|| Error::BudgetExhausted(format!("{p}^{} residues exceed {budget}", 2 + extra)))?;
    let m = p * p;
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&BigInt::from(m)).to_u64().expect("reduced below p^2"))
        .collect();
    let count = (1..=range)
        .filter(|&x| {
            let x = x % m;
            coeffs.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, m) + c) % m) == 0
        })
        .count();
    Ok(count as u64)
}
