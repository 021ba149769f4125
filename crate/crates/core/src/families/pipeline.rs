//! End-to-end monogenicity decision for one family member.
//!
//! Build `F`, certify irreducibility, compute the discriminant twice (closed
//! form and resultant), factor it, and settle every prime dividing it. A
//! prime dividing the discriminant once never divides the index. Higher
//! powers go to the fast case analysis, the Dedekind oracle, or both,
//! depending on the mode.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::cases::{prime_check_with_disc, CaseOutcome, CaseVerdict};
use super::disc::{disc_closed, same_magnitude};
use super::irreducibility::{irreducibility_certificate, Irreducibility};
use super::{build_composed, FamilyParams};
use crate::dedekind::{dedekind_test, Aggregate, DedekindTrace, IndexVerdict};
use crate::error::{Error, Result};
use crate::intarith::{factor_bounded, FactorBudget, Factorization};
use crate::zx::discriminant;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    /// Case analysis, with the oracle for ambiguous primes.
    #[default]
    #[serde(rename = "both")]
    FastWithOracleFallback,
    #[serde(rename = "oracle")]
    OracleOnly,
    /// Case analysis only; ambiguous primes stay unknown.
    #[serde(rename = "fast")]
    FastOnly,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(Mode::FastWithOracleFallback),
            "oracle" => Ok(Mode::OracleOnly),
            "fast" => Ok(Mode::FastOnly),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckOptions {
    pub mode: Mode,
    pub budget: FactorBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeStatus {
    IndexFree,
    Divides,
    Unknown,
}

impl From<IndexVerdict> for PrimeStatus {
    fn from(v: IndexVerdict) -> Self {
        match v {
            IndexVerdict::IndexFree => PrimeStatus::IndexFree,
            IndexVerdict::Divides => PrimeStatus::Divides,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecidedBy {
    /// `v_p(disc) = 1`.
    DiscValuation,
    Case,
    Oracle,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub prime: u64,
    pub disc_valuation: u32,
    pub case: Option<CaseVerdict>,
    pub oracle: Option<DedekindTrace>,
    pub verdict: PrimeStatus,
    pub decided_by: DecidedBy,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonogenicityReport {
    pub params: FamilyParams,
    pub mode: Mode,
    pub polynomial: String,
    #[serde(serialize_with = "crate::decimal::opt_string")]
    pub disc_closed: Option<BigInt>,
    #[serde(serialize_with = "crate::decimal::opt_string")]
    pub disc_resultant: Option<BigInt>,
    pub disc_factors: Option<Factorization>,
    pub irreducibility: Option<Irreducibility>,
    pub per_prime: Vec<PrimeReport>,
    pub aggregate: Aggregate,
    pub errors: Vec<String>,
}

pub fn monogenicity_check(params: &FamilyParams, mode: Mode) -> MonogenicityReport {
    monogenicity_check_with(params, &CheckOptions { mode, ..CheckOptions::default() })
}

fn settle_prime(params: &FamilyParams, p: u64, v: u32, disc: &BigInt, mode: Mode) -> PrimeReport {
    let mut rep = PrimeReport {
        prime: p,
        disc_valuation: v,
        case: None,
        oracle: None,
        verdict: PrimeStatus::Unknown,
        decided_by: DecidedBy::Undecided,
        error: None,
    };
    if v == 1 && mode == Mode::OracleOnly {
        rep.verdict = PrimeStatus::IndexFree;
        rep.decided_by = DecidedBy::DiscValuation;
        return rep;
    }
    let mut need_oracle = mode == Mode::OracleOnly;
    if mode != Mode::OracleOnly {
        match prime_check_with_disc(params, p, disc) {
            Ok(cv) => {
                match cv.verdict {
                    CaseOutcome::IndexFree => rep.verdict = PrimeStatus::IndexFree,
                    CaseOutcome::Divides => rep.verdict = PrimeStatus::Divides,
                    CaseOutcome::Ambiguous => need_oracle = mode == Mode::FastWithOracleFallback,
                }
                if cv.verdict != CaseOutcome::Ambiguous {
                    rep.decided_by = DecidedBy::Case;
                }
                rep.case = Some(cv);
            }
            Err(e) => {
                rep.error = Some(format!("case analysis at {p}: {e}"));
                need_oracle = mode == Mode::FastWithOracleFallback;
            }
        }
    }
    if need_oracle {
        match dedekind_test(&build_composed(params), p) {
            Ok(trace) => {
                rep.verdict = trace.verdict.into();
                rep.decided_by = DecidedBy::Oracle;
                rep.oracle = Some(trace);
            }
            Err(e) => rep.error = Some(format!("oracle at {p}: {e}")),
        }
    }
    rep
}

/// Runs the pipeline; failures are recorded in the report, never raised.
pub fn monogenicity_check_with(params: &FamilyParams, opts: &CheckOptions) -> MonogenicityReport {
    let f = build_composed(params);
    let mut rep = MonogenicityReport {
        params: *params,
        mode: opts.mode,
        polynomial: f.to_string(),
        disc_closed: None,
        disc_resultant: None,
        disc_factors: None,
        irreducibility: None,
        per_prime: Vec::new(),
        aggregate: Aggregate::Unknown { reason: "not evaluated".into() },
        errors: Vec::new(),
    };
    let unknown = |reason: &str| Aggregate::Unknown { reason: reason.to_string() };

    match irreducibility_certificate(&f) {
        Ok(c) => rep.irreducibility = Some(c),
        Err(e) => rep.errors.push(format!("irreducibility: {e}")),
    }
    let disc = match discriminant(&f) {
        Ok(d) if !d.is_zero() => d,
        Ok(_) => {
            rep.disc_resultant = Some(BigInt::zero());
            rep.errors.push("discriminant is zero".into());
            rep.aggregate = unknown("polynomial has a repeated root");
            return rep;
        }
        Err(e) => {
            rep.errors.push(format!("discriminant: {e}"));
            rep.aggregate = unknown("discriminant unavailable");
            return rep;
        }
    };
    rep.disc_resultant = Some(disc.clone());
    match disc_closed(params) {
        Ok(d) => {
            if !same_magnitude(&d, &disc) {
                rep.errors.push(format!("closed-form discriminant {d} disagrees with resultant {disc}"));
            }
            rep.disc_closed = Some(d);
        }
        Err(Error::ClosedForm(_)) => {}
        Err(e) => rep.errors.push(format!("closed-form discriminant: {e}")),
    }

    let factors = match factor_bounded(&disc, &opts.budget) {
        Ok(fz) => fz,
        Err(e) => {
            rep.errors.push(format!("factoring: {e}"));
            rep.aggregate = unknown("discriminant factorization failed");
            return rep;
        }
    };
    let mut words = Vec::new();
    for (p, e) in &factors.primes {
        match p.to_u64() {
            Some(w) => words.push((w, *e)),
            None if *e == 1 => {}
            None => rep.errors.push(format!("prime {p} with exponent {e} exceeds word size")),
        }
    }
    rep.per_prime = words.par_iter().map(|&(p, v)| settle_prime(params, p, v, &disc, opts.mode)).collect();
    for pr in &rep.per_prime {
        if let Some(e) = &pr.error {
            // Case errors recovered by the oracle are kept for triage only.
            if pr.verdict == PrimeStatus::Unknown {
                rep.errors.push(e.clone());
            }
        }
    }
    let complete = factors.is_complete();
    rep.disc_factors = Some(factors);

    rep.aggregate = if !rep.errors.is_empty() {
        unknown("errors during evaluation")
    } else if let Some(pr) = rep.per_prime.iter().find(|r| r.verdict == PrimeStatus::Divides) {
        Aggregate::NotMonogenic { prime: pr.prime }
    } else if !complete {
        unknown("discriminant not completely factored")
    } else if let Some(pr) = rep.per_prime.iter().find(|r| r.verdict == PrimeStatus::Unknown) {
        Aggregate::Unknown { reason: format!("prime {} undecided", pr.prime) }
    } else if !rep.irreducibility.as_ref().is_some_and(Irreducibility::is_certified) {
        unknown("irreducibility not certified")
    } else {
        Aggregate::Monogenic
    };
    rep
}

impl MonogenicityReport {
    /// `|disc|`, for callers that only need the magnitude.
    pub fn disc_magnitude(&self) -> Option<BigInt> {
        self.disc_resultant.as_ref().map(|d| d.abs())
    }
}
