//! The Dedekind criterion: for monic irreducible `f` and a prime `p`, decides
//! whether `p` divides the index `[Z_K : Z[theta]]` from the factorization
//! of `f mod p`.
//!
//! Write `f = prod g_i^e_i mod p` with monic irreducible `g_i`, lift each
//! factor to `Z[x]` and set `M = (f - prod g_i^e_i) / p`. Then `p` divides
//! the index iff some `g_i` with `e_i >= 2` divides `M mod p`. The verdict
//! does not depend on the choice of lifts.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::ser::Serializer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fp::{factor_mod_p, reduce_mod_p, ModFactorization, ModPoly};
use crate::intarith::{is_prime_u64, squarefree_status, valuation, FactorBudget, SquarefreeVerdict};
use crate::zx::{discriminant, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexVerdict {
    IndexFree,
    Divides,
}

/// Whole-polynomial verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Aggregate {
    Monogenic,
    NotMonogenic { prime: u64 },
    Unknown { reason: String },
}

/// Choice of integer representatives for the factors mod `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Lift {
    /// Coefficients in `(-p/2, p/2]`.
    #[default]
    Symmetric,
    /// Coefficients in `[0, p)`.
    Nonnegative,
}

fn ascii_list<S: Serializer>(v: &[ModPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|g| g.lift_nonnegative().to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindTrace {
    pub prime: u64,
    pub factorization: ModFactorization,
    /// `prod g_i^e_i` over the chosen lifts.
    #[serde(serialize_with = "crate::decimal::string")]
    pub lifted_product: IntPoly,
    /// `(f - lifted_product) / p`.
    #[serde(rename = "m", serialize_with = "crate::decimal::string")]
    pub quotient: IntPoly,
    /// Repeated factors dividing `quotient mod p`; empty iff index-free.
    #[serde(serialize_with = "ascii_list")]
    pub offending_factors: Vec<ModPoly>,
    pub verdict: IndexVerdict,
}

impl DedekindTrace {
    /// Checks `p * M + prod g_i^e_i == f`.
    pub fn reconstructs(&self, f: &IntPoly) -> bool {
        &self.quotient.scale(&BigInt::from(self.prime)) + &self.lifted_product == *f
    }
}

pub fn dedekind_test(f: &IntPoly, p: u64) -> Result<DedekindTrace> {
    dedekind_test_with_lift(f, p, Lift::Symmetric)
}

pub fn dedekind_test_with_lift(f: &IntPoly, p: u64, lift: Lift) -> Result<DedekindTrace> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let factorization = factor_mod_p(&reduce_mod_p(f, p)?)?;
    let lifted_product = factorization.factors.iter().fold(IntPoly::one(), |acc, (g, e)| {
        let g = match lift {
            Lift::Symmetric => g.lift_symmetric(),
            Lift::Nonnegative => g.lift_nonnegative(),
        };
        &acc * &g.pow(*e)
    });
    let quotient = (f - &lifted_product)
        .div_exact_scalar(&BigInt::from(p))
        .map_err(|_| Error::Internal(format!("f minus its lifted factorization is not divisible by {p}")))?;
    let m_bar = reduce_mod_p(&quotient, p)?;
    let mut offending = Vec::new();
    for (g, e) in &factorization.factors {
        if *e >= 2 && m_bar.rem(g)?.is_zero() {
            offending.push(g.clone());
        }
    }
    let verdict = if offending.is_empty() { IndexVerdict::IndexFree } else { IndexVerdict::Divides };
    Ok(DedekindTrace { prime: p, factorization, lifted_product, quotient, offending_factors: offending, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIndexResult {
    pub prime: u64,
    /// `v_p` of the discriminant; the oracle runs only when this is at least 2.
    pub disc_valuation: u32,
    pub verdict: IndexVerdict,
    pub trace: Option<DedekindTrace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexFreeReport {
    #[serde(serialize_with = "crate::decimal::string")]
    pub discriminant: BigInt,
    pub per_prime: Vec<PrimeIndexResult>,
    pub aggregate: Aggregate,
}

/// Runs the criterion at each listed prime. Primes with `v_p(disc) <= 1`
/// are index-free without computation, since the index squared divides the
/// discriminant. The aggregate is `Monogenic` only if every listed prime is
/// index-free and the part of the discriminant outside the list is
/// squarefree; if that part has a square factor the list is rejected.
pub fn index_free_at_all_disc_primes(f: &IntPoly, disc_primes: &[u64]) -> Result<IndexFreeReport> {
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::InvalidParams("polynomial has a repeated root".into()));
    }
    let mut primes = disc_primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let mut per_prime = Vec::with_capacity(primes.len());
    let mut rest = disc.abs();
    for &p in &primes {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        let v = valuation(&disc, p)?;
        rest /= BigInt::from(p).pow(v);
        if v <= 1 {
            per_prime.push(PrimeIndexResult { prime: p, disc_valuation: v, verdict: IndexVerdict::IndexFree, trace: None });
        } else {
            let trace = dedekind_test(f, p)?;
            per_prime.push(PrimeIndexResult { prime: p, disc_valuation: v, verdict: trace.verdict, trace: Some(trace) });
        }
    }
    let aggregate = if let Some(r) = per_prime.iter().find(|r| r.verdict == IndexVerdict::Divides) {
        Aggregate::NotMonogenic { prime: r.prime }
    } else {
        match squarefree_status(&rest, &FactorBudget::default())?.verdict {
            SquarefreeVerdict::Squarefree => Aggregate::Monogenic,
            SquarefreeVerdict::NotSquarefree { witness } => {
                return Err(Error::InvalidParams(format!(
                    "prime list misses {witness}, whose square divides the discriminant"
                )))
            }
            SquarefreeVerdict::Unknown { cofactor } => Aggregate::Unknown {
                reason: format!("cannot certify squarefree discriminant cofactor {cofactor}"),
            },
        }
    };
    Ok(IndexFreeReport { discriminant: disc, per_prime, aggregate })
}
