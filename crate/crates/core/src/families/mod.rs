//! The composed families `F(x) = f1(x^k + b)` and `G(x) = f2(x^k + b)` with
//!
//! ```text
//! f1(x) = x^n + c * sum_{i=1..n} (a x)^(n-i)
//! f2(x) = x^n + c * sum_{i=1..n} a^(i-1) x^(n-i)
//! ```
//!
//! together with their discriminants, per-prime index tests, irreducibility
//! certificates, the squarefree sufficient criterion and the combined
//! monogenicity pipeline.

mod cases;
mod corollary;
mod disc;
mod irreducibility;
mod pipeline;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zx::IntPoly;

pub use cases::{f1_prime_check, f2_prime_check, prime_check, CaseId, CaseOutcome, CaseVerdict};
pub use corollary::{
    squarefree_criterion_check, squarefree_criterion_check_with_budget, CriterionClause,
    CriterionOutcome, CriterionWitness,
};
pub use disc::{disc_closed, disc_closed_f1, disc_closed_f2, disc_of_composition, factor_disc_closed};
pub use irreducibility::{irreducibility_certificate, Irreducibility, IrreducibilityReason};
pub use pipeline::{
    monogenicity_check, monogenicity_check_with, CheckOptions, DecidedBy, Mode, MonogenicityReport,
    PrimeReport, PrimeStatus,
};

/// Upper limit on `n` and `k`, keeping `deg F = n k` at desk scale.
pub const MAX_DEGREE_PARAM: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F1,
    F2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::F1 => "f1",
            Family::F2 => "f2",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Family::F1),
            "f2" => Ok(Family::F2),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// `(family, n, k, a, b, c)` with `n >= 3` (or `n >= 2` when relaxed),
/// `k >= 1`, `a != 0`, `c != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyParams {
    family: Family,
    n: u32,
    k: u32,
    a: i64,
    b: i64,
    c: i64,
}

impl FamilyParams {
    pub fn new(family: Family, n: u32, k: u32, a: i64, b: i64, c: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n = {n}, need n >= 3")));
        }
        Self::relaxed(family, n, k, a, b, c)
    }

    /// Also admits `n = 2`.
    pub fn relaxed(family: Family, n: u32, k: u32, a: i64, b: i64, c: i64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if n < 2 {
            return bad(format!("n = {n}, need n >= 2"));
        }
        if k < 1 {
            return bad("k must be at least 1".into());
        }
        if n > MAX_DEGREE_PARAM || k > MAX_DEGREE_PARAM {
            return bad(format!("n and k are limited to {MAX_DEGREE_PARAM}"));
        }
        if a == 0 {
            return bad("a must be nonzero".into());
        }
        if c == 0 {
            return bad("c must be nonzero".into());
        }
        Ok(FamilyParams { family, n, k, a, b, c })
    }

    pub fn family(&self) -> Family {
        self.family
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
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }

    /// `gcd(a, n)`.
    pub fn t(&self) -> i64 {
        self.a.gcd(&(self.n as i64))
    }
    /// `n / gcd(a, n)`.
    pub fn n1(&self) -> i64 {
        self.n as i64 / self.t()
    }
    /// `a / gcd(a, n)`.
    pub fn a1(&self) -> i64 {
        self.a / self.t()
    }

    /// The same family and `(n, a, c)` with `k = 1`, `b = 0`.
    pub fn base(&self) -> Self {
        FamilyParams { k: 1, b: 0, ..*self }
    }

    /// The outer polynomial `f1` or `f2`.
    pub fn outer(&self) -> IntPoly {
        match self.family {
            Family::F1 => f1_poly(self.n, self.a, self.c),
            Family::F2 => f2_poly(self.n, self.a, self.c),
        }
    }

    /// `f(b)`, the constant term of the composed polynomial.
    pub fn outer_at_b(&self) -> BigInt {
        self.outer().eval(&BigInt::from(self.b))
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, k={}, a={}, b={}, c={})", self.family, self.n, self.k, self.a, self.b, self.c)
    }
}

fn f1_poly(n: u32, a: i64, c: i64) -> IntPoly {
    // Coefficient of x^j (j < n) is c a^j.
    let a = BigInt::from(a);
    let c = BigInt::from(c);
    let mut coeffs: Vec<BigInt> = (0..n).map(|j| &c * a.pow(j)).collect();
    coeffs.push(BigInt::from(1));
    IntPoly::new(coeffs)
}

fn f2_poly(n: u32, a: i64, c: i64) -> IntPoly {
    // Coefficient of x^j (j < n) is c a^(n-1-j).
    let a = BigInt::from(a);
    let c = BigInt::from(c);
    let mut coeffs: Vec<BigInt> = (0..n).map(|j| &c * a.pow(n - 1 - j)).collect();
    coeffs.push(BigInt::from(1));
    IntPoly::new(coeffs)
}

fn check_outer(n: u32, a: i64, c: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n}, need n >= 2")));
    }
    if a == 0 || c == 0 {
        return Err(Error::InvalidParams("a and c must be nonzero".into()));
    }
    Ok(())
}

/// `x^n + c * sum_{i=1..n} (a x)^(n-i)`; `n >= 2`.
pub fn build_f1(n: u32, a: i64, c: i64) -> Result<IntPoly> {
    check_outer(n, a, c)?;
    Ok(f1_poly(n, a, c))
}

/// `x^n + c * sum_{i=1..n} a^(i-1) x^(n-i)`; `n >= 2`.
pub fn build_f2(n: u32, a: i64, c: i64) -> Result<IntPoly> {
    check_outer(n, a, c)?;
    Ok(f2_poly(n, a, c))
}

/// `f(x^k + b)`, of degree `n k`.
pub fn build_composed(params: &FamilyParams) -> IntPoly {
    params.outer().compose(&IntPoly::binomial(params.k as usize, BigInt::from(params.b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn outer_polynomials() {
        assert_eq!(build_f1(3, 1, 2).unwrap(), p(&[2, 2, 2, 1]));
        assert_eq!(build_f1(2, 1, 30).unwrap(), p(&[30, 30, 1]));
        assert_eq!(build_f2(3, 1, 2).unwrap(), p(&[2, 2, 2, 1]));
        // x^3 + (x^2 + 2x + 4)
        assert_eq!(build_f2(3, 2, 1).unwrap(), p(&[4, 2, 1, 1]));
        // x^3 + 3(x^2 + 2x + 4) for f2 and x^3 + 3(4x^2 + 2x + 1) for f1
        assert_eq!(build_f2(3, 2, 3).unwrap(), p(&[12, 6, 3, 1]));
        assert_eq!(build_f1(3, 2, 3).unwrap(), p(&[3, 6, 12, 1]));
        assert!(build_f1(3, 0, 2).is_err());
        assert!(build_f2(3, 1, 0).is_err());
        assert!(build_f1(1, 1, 1).is_err());
    }

    #[test]
    fn composed_polynomials() {
        let f = FamilyParams::new(Family::F1, 3, 2, 1, 2, 2).unwrap();
        assert_eq!(build_composed(&f), p(&[22, 0, 22, 0, 8, 0, 1]));
        let g = FamilyParams::new(Family::F2, 3, 2, 1, 1, 2).unwrap();
        assert_eq!(build_composed(&g), p(&[7, 0, 9, 0, 5, 0, 1]));
        for fam in [Family::F1, Family::F2] {
            let q = FamilyParams::new(fam, 4, 1, -3, 0, 5).unwrap();
            assert_eq!(build_composed(&q), q.outer());
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilyParams::new(Family::F1, 2, 2, 1, 30, 30).is_err());
        assert!(FamilyParams::relaxed(Family::F1, 2, 2, 1, 30, 30).is_ok());
        assert!(FamilyParams::new(Family::F1, 3, 0, 1, 0, 1).is_err());
        assert!(FamilyParams::new(Family::F1, 3, 2, 1, 2, 0).is_err());
        assert!(FamilyParams::new(Family::F2, 3, 2, 0, 2, 1).is_err());
        assert!(FamilyParams::new(Family::F2, 300, 2, 1, 2, 1).is_err());
    }

    #[test]
    fn derived_quantities() {
        let q = FamilyParams::new(Family::F1, 6, 1, -4, 0, 1).unwrap();
        assert_eq!((q.t(), q.n1(), q.a1()), (2, 3, -2));
        assert_eq!(q.base(), q);
        assert_eq!("F2".parse::<Family>().unwrap(), Family::F2);
    }
}
