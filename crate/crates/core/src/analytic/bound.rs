//! Evaluation of the conditional lower bound
//!
//! ```text
//! prod_{p <= sqrt n} (1/p^2)(1 - w(p)/p^2) * prod_{p > sqrt n} (1 - n/p^2)^2
//!     * prod_{p | l k} (1 - 1/p) * B C / (zeta(2) kappa varrho^2)
//! ```
//!
//! where `w(p)` counts roots of `G` modulo `p^2`. Finite factors are exact
//! rationals. The tail product is truncated at the prime cut `P` and
//! evaluated in fixed point, rounding down at every step. Since
//! `sum_{p > P} n/p^2 < n/(P ln P)`, the untruncated value lies in
//! `[value * (1 - n/(P ln P))^2, value]`.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{auxiliary_polynomial, square_root_count, DensityConfig};
use crate::error::{Error, Result};
use crate::intarith::{primes_up_to, small_prime_divisors};

/// Fractional digits carried in fixed point beyond the reported ones.
const GUARD_DIGITS: u32 = 20;
/// Default reported precision, also the precision of `zeta(2)`.
pub const DEFAULT_DIGITS: u32 = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityBound {
    pub config: DensityConfig,
    pub digits: u32,
    /// `prod_{p <= sqrt n} (1/p^2)(1 - w(p)/p^2)`, exact.
    pub small_prime_factor: String,
    /// `prod_{p | l k} (1 - 1/p)`, exact.
    pub divisor_factor: String,
    /// `B C / (kappa varrho^2)`, exact.
    pub grid_factor: String,
    /// `prod_{sqrt n < p <= P} (1 - n/p^2)^2`, rounded down.
    pub tail_product: String,
    pub tail_primes: usize,
    pub zeta2: String,
    /// The bound with the tail truncated at `P`.
    pub value: String,
    /// Lower end of the interval that contains the untruncated value.
    pub value_lower: String,
    /// The value with `1/kappa` replaced by `phi(kappa)/kappa^2`.
    pub proof_variant_value: String,
    pub value_f64: f64,
}

struct Fixed {
    scale: BigInt,
    frac_digits: u32,
}

impl Fixed {
    fn new(frac_digits: u32) -> Self {
        Fixed { scale: BigInt::from(10u32).pow(frac_digits), frac_digits }
    }

    fn from_ratio(&self, r: &BigRational) -> BigInt {
        (r.numer() * &self.scale).div_floor(r.denom())
    }

    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        (x * y).div_floor(&self.scale)
    }

    fn div(&self, x: &BigInt, y: &BigInt) -> BigInt {
        (x * &self.scale).div_floor(y)
    }

    /// `atan(1/x)` by its alternating series.
    fn atan_inv(&self, x: u64) -> BigInt {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = self.scale.clone() / &x;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !power.is_zero() {
            let term = &power / (2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        sum
    }

    /// `pi^2 / 6` from Machin's formula.
    fn zeta2(&self) -> BigInt {
        let pi = self.atan_inv(5) * 16 - self.atan_inv(239) * 4;
        self.mul(&pi, &pi) / 6
    }

    /// Decimal rendering truncated to `digits` fractional digits.
    fn render(&self, x: &BigInt, digits: u32) -> String {
        let drop = BigInt::from(10u32).pow(self.frac_digits - digits);
        let v = x / drop;
        let unit = BigInt::from(10u32).pow(digits);
        let (int, frac) = v.abs().div_rem(&unit);
        let sign = if v.is_negative() { "-" } else { "" };
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Evaluates the bound at `DEFAULT_DIGITS` digits.
pub fn density_lower_bound(cfg: &DensityConfig) -> Result<DensityBound> {
    density_lower_bound_with_digits(cfg, DEFAULT_DIGITS)
}

pub fn density_lower_bound_with_digits(cfg: &DensityConfig, digits: u32) -> Result<DensityBound> {
    let n = cfg.n() as u64;
    let root_n = n.sqrt();
    if cfg.prime_cut() < root_n.max(2) {
        return Err(Error::InvalidParams(format!("prime cut {} below sqrt(n)", cfg.prime_cut())));
    }
    let fx = Fixed::new(digits + GUARD_DIGITS);

    let g = auxiliary_polynomial(cfg)?;
    let mut small = BigRational::one();
    for p in primes_up_to(root_n) {
        let p2 = p * p;
        let w = square_root_count(&g, p, 0)?;
        small *= ratio(1, p2) * (BigRational::one() - ratio(w, p2));
    }
    let mut divisor = BigRational::one();
    for p in small_prime_divisors(cfg.ell() * cfg.k() as u64) {
        divisor *= ratio(p - 1, p);
    }
    let (kappa, varrho) = (cfg.kappa(), cfg.varrho());
    let grid = ratio(BigInt::from(cfg.b_max()) * cfg.c_max(), BigInt::from(kappa) * varrho * varrho);

    let mut tail = fx.scale.clone();
    let mut tail_primes = 0;
    for p in primes_up_to(cfg.prime_cut()).into_iter().filter(|&p| p > root_n) {
        let p2 = BigInt::from(p) * p;
        let factor = ratio(&p2 - n, p2);
        let f = fx.from_ratio(&(&factor * &factor));
        tail = fx.mul(&tail, &f);
        tail_primes += 1;
    }
    let zeta2 = fx.zeta2();

    let finite = &small * &divisor * &grid;
    let value = fx.div(&fx.mul(&fx.from_ratio(&finite), &tail), &zeta2);

    // n / (P ln P) with ln P rounded down, so the interval stays valid.
    let cut = cfg.prime_cut() as f64;
    let ln_low = BigRational::from_float(cut.ln() * (1.0 - 1e-12)).expect("finite logarithm");
    let tau = ratio(n, cfg.prime_cut()) / ln_low;
    let keep = (BigRational::one() - tau).max(BigRational::zero());
    let value_lower = fx.mul(&value, &fx.from_ratio(&(&keep * &keep)));

    let phi_over_kappa = ratio(phi_of_radical(kappa), kappa);
    let proof_variant = fx.mul(&value, &fx.from_ratio(&phi_over_kappa));

    let value_f64 = value.to_f64().unwrap_or(f64::INFINITY) / 10f64.powi((digits + GUARD_DIGITS) as i32);
    Ok(DensityBound {
        config: *cfg,
        digits,
        small_prime_factor: small.to_string(),
        divisor_factor: divisor.to_string(),
        grid_factor: grid.to_string(),
        tail_product: fx.render(&tail, digits),
        tail_primes,
        zeta2: fx.render(&zeta2, digits),
        value: fx.render(&value, digits),
        value_lower: fx.render(&value_lower, digits),
        proof_variant_value: fx.render(&proof_variant, digits),
        value_f64,
    })
}

/// Euler's totient of a squarefree number.
fn phi_of_radical(r: u64) -> u64 {
    small_prime_divisors(r).iter().map(|p| p - 1).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_digits() {
        let fx = Fixed::new(70);
        assert_eq!(
            fx.render(&fx.zeta2(), 50),
            "1.64493406684822643647241516664602518921894990120679"
        );
    }

    #[test]
    fn exact_factors() {
        let cfg = DensityConfig::relaxed(2, 2, 1, 5, 1000, 1000, 10_000).unwrap();
        let b = density_lower_bound(&cfg).unwrap();
        assert_eq!(b.divisor_factor, "2/5");
        // No prime is at most sqrt(2).
        assert_eq!(b.small_prime_factor, "1");
        assert_eq!(b.grid_factor, "100000");
        assert_eq!(b.tail_primes, 1229);
        assert!(b.value_f64 > 0.0);
        assert!(b.value_lower <= b.value);
    }

    #[test]
    fn empty_grid_gives_zero() {
        let cfg = DensityConfig::relaxed(3, 2, 4, 3, 0, 50, 100).unwrap();
        let b = density_lower_bound(&cfg).unwrap();
        assert_eq!(b.value_f64, 0.0);
        assert!(b.value.chars().all(|ch| ch == '0' || ch == '.'));
    }

    #[test]
    fn cut_below_root() {
        let cfg = DensityConfig::relaxed(100, 1, 1, 2, 1, 1, 5).unwrap();
        assert!(density_lower_bound(&cfg).is_err());
    }
}
