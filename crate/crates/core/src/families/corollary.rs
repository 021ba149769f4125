//! A sufficient criterion, in terms of squarefree values, for both `f1` and
//! `F = f1(x^k + b)` to be irreducible and monogenic.
//!
//! Hypotheses: `rad(k) | c`, `rad(n + 1) | a c`, `gcd(b, c) > 1`, a
//! congruence on `c` modulo `p^2` for each `p | gcd(a, n)`, and squarefreeness
//! of `c`, `f1(b)` and the reduced bracket.
//!
//! The bracket `n1^n (1 - a^n c)^(n+1) + a1^n c (n+1)^(n+1)` always carries
//! the square `(1 + n a^n c)^2`: as a polynomial in `u = a^n c` it has a
//! double root at `u = -1/n`. Squarefreeness of the bracket itself would hold
//! only when `|1 + n a^n c| = 1`, so the clause is applied to the quotient by
//! that square, the cofactor that actually reaches the discriminant.
//! Squarefreeness is decided under a factoring budget, so the outcome is
//! three-valued.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::intarith::{
    is_prime_u64, radical_u64, small_prime_divisors, squarefree_status, FactorBudget, SquarefreeStatus,
    SquarefreeVerdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionClause {
    RadKDividesC,
    RadNPlusOneDividesAc,
    GcdBcExceedsOne,
    PowerCongruence,
    CSquarefree,
    FbSquarefree,
    BracketSquarefree,
}

/// The values the criterion certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionWitness {
    /// A prime dividing `gcd(b, c)`; both polynomials are Eisenstein there.
    pub eisenstein_prime: u64,
    #[serde(serialize_with = "crate::decimal::string")]
    pub c: BigInt,
    #[serde(serialize_with = "crate::decimal::string")]
    pub f_at_b: BigInt,
    #[serde(serialize_with = "crate::decimal::string")]
    pub bracket: BigInt,
    /// `bracket / (1 + n a^n c)^2`.
    #[serde(serialize_with = "crate::decimal::string")]
    pub reduced_bracket: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CriterionOutcome {
    Satisfied { witness: CriterionWitness },
    NotSatisfied { clause: CriterionClause, detail: String },
    /// A squarefree check ran out of budget.
    Unknown { clause: CriterionClause, status: SquarefreeStatus },
}

impl CriterionOutcome {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, CriterionOutcome::Satisfied { .. })
    }
}

/// `n1^n (1 - a^n c)^(n+1) + a1^n c (n+1)^(n+1)` with `n1 = n/t`, `a1 = a/t`.
pub(crate) fn bracket(params: &FamilyParams) -> BigInt {
    let n = params.n();
    let an_c = BigInt::from(params.a()).pow(n) * params.c();
    BigInt::from(params.n1()).pow(n) * (BigInt::one() - &an_c).pow(n + 1)
        + BigInt::from(params.a1()).pow(n) * params.c() * BigInt::from(n + 1).pow(n + 1)
}

/// `bracket / (1 + n a^n c)^2`; the division is exact because the square
/// factor is coprime to `t`.
pub(crate) fn reduced_bracket(params: &FamilyParams) -> Result<BigInt> {
    let n = params.n();
    let a_sq = (BigInt::one() + BigInt::from(params.a()).pow(n) * params.c() * n).pow(2);
    let (q, r) = bracket(params).div_rem(&a_sq);
    if !r.is_zero() {
        return Err(Error::Internal(format!("(1 + n a^n c)^2 does not divide the bracket for {params}")));
    }
    Ok(q)
}

/// Evaluates the criterion with the default factoring budget.
pub fn squarefree_criterion_check(params: &FamilyParams, ell_hint: Option<u64>) -> Result<CriterionOutcome> {
    squarefree_criterion_check_with_budget(params, ell_hint, &FactorBudget::default())
}

/// Evaluates every clause exactly; clauses are reported in a fixed order.
/// A hint is used when it is a prime dividing `gcd(b, c)`, otherwise the
/// smallest such prime is reported.
pub fn squarefree_criterion_check_with_budget(
    params: &FamilyParams,
    ell_hint: Option<u64>,
    budget: &FactorBudget,
) -> Result<CriterionOutcome> {
    if params.family() != Family::F1 {
        return Err(Error::InvalidParams("the criterion concerns family f1".into()));
    }
    let not = |clause, detail: String| Ok(CriterionOutcome::NotSatisfied { clause, detail });
    let (n, k, a, b, c) = (params.n() as u64, params.k() as u64, params.a(), params.b(), params.c());

    let rad_k = radical_u64(k);
    if c % rad_k as i64 != 0 {
        return not(CriterionClause::RadKDividesC, format!("rad(k) = {rad_k} does not divide c = {c}"));
    }
    let rad_n1 = radical_u64(n + 1);
    let ac = BigInt::from(a) * c;
    if !(&ac % rad_n1).is_zero() {
        return not(CriterionClause::RadNPlusOneDividesAc, format!("rad(n+1) = {rad_n1} does not divide ac = {ac}"));
    }
    let g = b.unsigned_abs().gcd(&c.unsigned_abs());
    if g <= 1 {
        return not(CriterionClause::GcdBcExceedsOne, format!("gcd(b, c) = {g}"));
    }
    let ell = match ell_hint {
        Some(l) if is_prime_u64(l) && g % l == 0 => l,
        _ => small_prime_divisors(g)[0],
    };

    let cb = BigInt::from(c);
    for p in small_prime_divisors(params.t() as u64) {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        let lhs = (-&cb).modpow(&pb, &p2);
        let rhs = (-&cb).mod_floor(&p2);
        let square_divides_a = a % (p * p) as i64 == 0;
        // p^2 | a wants the congruence to fail, p || a wants it to hold.
        if (lhs == rhs) == square_divides_a {
            let rel = if square_divides_a { "p^2 | a but" } else { "p || a but not" };
            return not(CriterionClause::PowerCongruence, format!("{rel} (-c)^p = -c mod p^2 at p = {p}"));
        }
    }

    let fb = params.outer_at_b();
    let br = bracket(params);
    let reduced = reduced_bracket(params)?;
    let checks = [
        (CriterionClause::CSquarefree, &cb),
        (CriterionClause::FbSquarefree, &fb),
        (CriterionClause::BracketSquarefree, &reduced),
    ];
    let mut unknown = None;
    for (clause, value) in checks {
        if value.is_zero() {
            return not(clause, "value is zero".into());
        }
        let status = squarefree_status(value, budget)?;
        match &status.verdict {
            SquarefreeVerdict::Squarefree => {}
            SquarefreeVerdict::NotSquarefree { witness } => {
                return not(clause, format!("{witness}^2 divides {value}"));
            }
            SquarefreeVerdict::Unknown { .. } => {
                unknown.get_or_insert(CriterionOutcome::Unknown { clause, status });
            }
        }
    }
    if let Some(u) = unknown {
        return Ok(u);
    }
    Ok(CriterionOutcome::Satisfied {
        witness: CriterionWitness { eisenstein_prime: ell, c: cb, f_at_b: fb, bracket: br, reduced_bracket: reduced },
    })
}
