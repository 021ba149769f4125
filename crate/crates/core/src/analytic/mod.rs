//! Counting machinery for the density of monogenic pairs `(f1, F)`.
//!
//! With `kappa = rad(l k)`, the auxiliary polynomial `G` satisfies
//!
//! ```text
//! (1 + n a^n kappa x)^2 G(x) = a1^n (n+1)^(n+1) kappa x + n1^n (1 - a^n kappa x)^(n+1)
//! ```
//!
//! so that, for `c = kappa x`, `G(x)` is the reduced bracket of the
//! squarefree criterion. The module builds `G`, counts its roots modulo
//! prime squares, evaluates the conditional lower bound for the number of
//! monogenic pairs, and runs an unconditional census over a `(b, c)` grid.

mod bound;
mod census;
mod roots;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intarith::{is_prime_u64, radical_u64};
use crate::zx::IntPoly;

pub use bound::{density_lower_bound, density_lower_bound_with_digits, DensityBound, DEFAULT_DIGITS};
pub use census::{empirical_census, CensusOptions, CensusReport, CensusRow, Verdict as CensusVerdict};
pub use roots::{square_root_count, square_root_count_with_budget, DEFAULT_ENUMERATION_BUDGET};

/// Parameters of a density question: the family member `f1` with fixed
/// `(n, k, a)`, Eisenstein prime `l` dividing `b` and `c`, grid bounds
/// `b <= b_max`, `c <= c_max`, and a truncation point for infinite products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DensityConfig {
    n: u32,
    k: u32,
    a: i64,
    ell: u64,
    b_max: u64,
    c_max: u64,
    prime_cut: u64,
}

impl DensityConfig {
    /// Requires `rad(n + 1) | a`, the hypothesis of the lower bound.
    pub fn new(n: u32, k: u32, a: i64, ell: u64, b_max: u64, c_max: u64, prime_cut: u64) -> Result<Self> {
        let cfg = Self::relaxed(n, k, a, ell, b_max, c_max, prime_cut)?;
        let r = radical_u64(n as u64 + 1);
        if a % r as i64 != 0 {
            return Err(Error::InvalidParams(format!("rad(n+1) = {r} does not divide a = {a}")));
        }
        Ok(cfg)
    }

    /// Drops the `rad(n + 1) | a` hypothesis, for grids such as `a = 1`,
    /// `n = 2` where the criterion still applies through `rad(n + 1) | c`.
    pub fn relaxed(n: u32, k: u32, a: i64, ell: u64, b_max: u64, c_max: u64, prime_cut: u64) -> Result<Self> {
        if !(2..=crate::families::MAX_DEGREE_PARAM).contains(&n) || !(1..=crate::families::MAX_DEGREE_PARAM).contains(&k) {
            return Err(Error::InvalidParams(format!("n = {n}, k = {k} out of range")));
        }
        if a == 0 {
            return Err(Error::InvalidParams("a must be nonzero".into()));
        }
        if !is_prime_u64(ell) {
            return Err(Error::NotPrime(ell));
        }
        Ok(DensityConfig { n, k, a, ell, b_max, c_max, prime_cut })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn b_max(&self) -> u64 {
        self.b_max
    }
    pub fn c_max(&self) -> u64 {
        self.c_max
    }
    pub fn prime_cut(&self) -> u64 {
        self.prime_cut
    }

    /// Same configuration on a different grid.
    pub fn with_bounds(&self, b_max: u64, c_max: u64) -> Self {
        DensityConfig { b_max, c_max, ..*self }
    }

    /// `rad(l k)`.
    pub fn kappa(&self) -> u64 {
        radical_u64(self.ell * self.k as u64)
    }

    /// `gcd(a, n)`.
    pub fn t(&self) -> u64 {
        self.a.unsigned_abs().gcd(&(self.n as u64))
    }

    /// `rad(gcd(a, n))`.
    pub fn varrho(&self) -> u64 {
        radical_u64(self.t())
    }

    pub fn n1(&self) -> i64 {
        self.n as i64 / self.t() as i64
    }

    pub fn a1(&self) -> i64 {
        self.a / self.t() as i64
    }
}

/// The polynomial `G`, computed by exact division.
pub fn auxiliary_polynomial(cfg: &DensityConfig) -> Result<IntPoly> {
    let n = cfg.n();
    let kappa = BigInt::from(cfg.kappa());
    let an_kappa = BigInt::from(cfg.a()).pow(n) * &kappa;
    let linear = IntPoly::new(vec![BigInt::one(), -&an_kappa]);
    let rhs = &linear.pow(n + 1).scale(&BigInt::from(cfg.n1()).pow(n))
        + &IntPoly::monomial(BigInt::from(cfg.a1()).pow(n) * BigInt::from(n + 1).pow(n + 1) * &kappa, 1);
    let square = IntPoly::new(vec![BigInt::one(), an_kappa * n]).pow(2);
    rhs.div_exact(&square)
}
