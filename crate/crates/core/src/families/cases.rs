//! Per-prime index tests for the two composed families.
//!
//! For a prime `p | disc`, the hypotheses on `(p | c, p | k, p | a, p | n,
//! p | n + 1)` select exactly one case, tried in a fixed order. Each case
//! reduces the question "does `p` divide the index" to a few divisibility
//! conditions on small integers.
//!
//! Not every condition is an exact characterization. Each clause is tagged:
//! a *necessary* clause that fails decides `Divides`, while a failed
//! *sufficient-only* clause leaves the prime `Ambiguous` with a tentative
//! verdict, and the pipeline then asks the Dedekind oracle. The power-split
//! cases (`p | k`) always report `Ambiguous`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{build_composed, disc, Family, FamilyParams};
use crate::dedekind::IndexVerdict;
use crate::error::{Error, Result};
use crate::fp::{gcd_mod_p, reduce_mod_p};
use crate::intarith::is_prime_u64;
use crate::zx::{discriminant, IntPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    /// f1, `p | c`.
    #[serde(rename = "T1_i")]
    F1DividesC,
    /// f1, `p | k`.
    #[serde(rename = "T1_ii")]
    F1DividesK,
    /// f1, `p | a` and `p | n`.
    #[serde(rename = "T1_iii")]
    F1DividesAAndN,
    /// f1, exactly one of `p | a`, `p | n`.
    #[serde(rename = "T1_iv")]
    F1DividesAOrN,
    /// f1, `p | n + 1`.
    #[serde(rename = "T1_v")]
    F1DividesNPlusOne,
    /// f1, none of the above.
    #[serde(rename = "T1_vi")]
    F1Generic,
    /// f2, `p | c`.
    #[serde(rename = "T2_i")]
    F2DividesC,
    /// f2, `p | k`.
    #[serde(rename = "T2_ii")]
    F2DividesK,
    /// f2, `p | n`.
    #[serde(rename = "T2_iii")]
    F2DividesN,
    /// f2, `p | n + 1`.
    #[serde(rename = "T2_iv")]
    F2DividesNPlusOne,
    /// f2, none of the above.
    #[serde(rename = "T2_v")]
    F2Generic,
    /// f2, `p | a`, `p` coprime to `c`, `n >= 3`: never index-free.
    PropNonMonogenic,
    /// `p` divides the discriminant exactly once.
    FirstPower,
    /// No fast test applies; the oracle decides.
    OracleFallback,
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = serde_json::to_value(self).map_err(|_| std::fmt::Error)?;
        f.write_str(v.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseOutcome {
    IndexFree,
    Divides,
    Ambiguous,
}

impl From<IndexVerdict> for CaseOutcome {
    fn from(v: IndexVerdict) -> Self {
        match v {
            IndexVerdict::IndexFree => CaseOutcome::IndexFree,
            IndexVerdict::Divides => CaseOutcome::Divides,
        }
    }
}

fn subvalue_map<S: Serializer>(v: &[(String, BigInt)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(v.len()))?;
    for (name, value) in v {
        m.serialize_entry(name, &value.to_string())?;
    }
    m.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseVerdict {
    pub prime: u64,
    pub case_id: CaseId,
    /// The integers the case actually tested, in evaluation order.
    #[serde(serialize_with = "subvalue_map")]
    pub subvalues: Vec<(String, BigInt)>,
    pub verdict: CaseOutcome,
    /// Best available reading when `verdict` is `Ambiguous`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tentative: Option<IndexVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

struct Builder {
    prime: u64,
    pb: BigInt,
    subvalues: Vec<(String, BigInt)>,
}

impl Builder {
    fn record(&mut self, name: &str, value: impl Into<BigInt>) {
        self.subvalues.push((name.to_string(), value.into()));
    }

    /// `v_p(x)`, recorded; `None` for zero.
    fn valuation(&mut self, name: &str, x: &BigInt) -> Option<u32> {
        if x.is_zero() {
            self.record(name, -1);
            return None;
        }
        let mut e = 0u32;
        let mut m = x.abs();
        while (&m % &self.pb).is_zero() {
            m /= &self.pb;
            e += 1;
        }
        self.record(name, e);
        Some(e)
    }

    fn finish(
        self,
        case_id: CaseId,
        verdict: CaseOutcome,
        tentative: Option<IndexVerdict>,
        note: Option<String>,
    ) -> CaseVerdict {
        CaseVerdict { prime: self.prime, case_id, subvalues: self.subvalues, verdict, tentative, note }
    }

    fn decided(self, case_id: CaseId, index_free: bool) -> CaseVerdict {
        let v = if index_free { CaseOutcome::IndexFree } else { CaseOutcome::Divides };
        self.finish(case_id, v, None, None)
    }

    fn ambiguous(self, case_id: CaseId, tentative: Option<bool>, note: &str) -> CaseVerdict {
        let t = tentative.map(|ok| if ok { IndexVerdict::IndexFree } else { IndexVerdict::Divides });
        self.finish(case_id, CaseOutcome::Ambiguous, t, Some(note.to_string()))
    }
}

/// `v_p(x) < 2`, treating zero as divisible by everything.
fn below_square(v: Option<u32>) -> bool {
    v.is_some_and(|e| e < 2)
}

/// Splits `m = p^e * rest` with `p` coprime to `rest`.
fn split_power(m: u64, p: u64) -> (u32, u64) {
    let (mut e, mut rest) = (0, m);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (e, rest)
}

/// `((c + (-c)^(p^e)) / p) mod p`.
fn c2_mod_p(c: &BigInt, p: u64, e: u32) -> BigInt {
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    let x = (c + (-c).modpow(&pb.pow(e), &p2)).mod_floor(&p2);
    debug_assert!((&x % &pb).is_zero());
    (x / &pb).mod_floor(&pb)
}

/// Discriminant of the composed polynomial: closed form when it applies,
/// otherwise the resultant.
pub(crate) fn disc_value(params: &FamilyParams) -> Result<BigInt> {
    let d = match disc::disc_closed(params) {
        Ok(d) => d,
        Err(Error::ClosedForm(_)) => discriminant(&build_composed(params))?,
        Err(e) => return Err(e),
    };
    if d.is_zero() {
        return Err(Error::ClosedForm("discriminant is zero".into()));
    }
    Ok(d)
}

/// With `k = p^j s'`, `h = f(x^s' + b)` satisfies `F = h^(p^j) mod p`.
/// Tests whether `(F - h^(p^j)) / p` and `h` are coprime mod `p`.
fn power_split_coprime(params: &FamilyParams, p: u64, j: u32, s_prime: u64) -> Result<bool> {
    let inner = IntPoly::binomial(s_prime as usize, BigInt::from(params.b()));
    let h = params.outer().compose(&inner);
    let pj = (p as u32)
        .checked_pow(j)
        .ok_or_else(|| Error::InvalidParams("p^j out of range".into()))?;
    let diff = &build_composed(params) - &h.pow(pj);
    let m = diff
        .div_exact_scalar(&BigInt::from(p))
        .map_err(|_| Error::Internal("F - h^(p^j) is not divisible by p".into()))?;
    let g = gcd_mod_p(&reduce_mod_p(&m, p)?, &reduce_mod_p(&h, p)?)?;
    Ok(g.is_one())
}

/// Index test at `p` for family f1.
pub fn f1_prime_check(params: &FamilyParams, p: u64) -> Result<CaseVerdict> {
    if params.family() != Family::F1 {
        return Err(Error::InvalidParams("expected family f1".into()));
    }
    prime_check(params, p)
}

/// Index test at `p` for family f2.
pub fn f2_prime_check(params: &FamilyParams, p: u64) -> Result<CaseVerdict> {
    if params.family() != Family::F2 {
        return Err(Error::InvalidParams("expected family f2".into()));
    }
    prime_check(params, p)
}

/// Index test at a prime `p` dividing the discriminant of the composed
/// polynomial, which the caller certifies irreducible.
pub fn prime_check(params: &FamilyParams, p: u64) -> Result<CaseVerdict> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let d = disc_value(params)?;
    prime_check_with_disc(params, p, &d)
}

pub(crate) fn prime_check_with_disc(params: &FamilyParams, p: u64, d: &BigInt) -> Result<CaseVerdict> {
    let mut bld = Builder { prime: p, pb: BigInt::from(p), subvalues: Vec::new() };
    match bld.valuation("v_p(disc)", d) {
        Some(0) => return Err(Error::PrimeNotInDiscriminant { prime: p }),
        Some(1) => return Ok(bld.decided(CaseId::FirstPower, true)),
        _ => {}
    }
    match params.family() {
        Family::F1 => f1_cases(params, p, bld),
        Family::F2 => f2_cases(params, p, bld),
    }
}

fn f1_cases(params: &FamilyParams, p: u64, mut bld: Builder) -> Result<CaseVerdict> {
    let pb = BigInt::from(p);
    let n = params.n();
    let k = params.k() as u64;
    let a = BigInt::from(params.a());
    let c = BigInt::from(params.c());
    let divides = |x: &BigInt| (x % &pb).is_zero();
    let (p_a, p_n) = (divides(&a), (n as u64) % p == 0);

    if divides(&c) {
        let v = bld.valuation("v_p(c)", &c);
        return Ok(bld.decided(CaseId::F1DividesC, below_square(v)));
    }
    if k % p == 0 {
        let (j, s_prime) = split_power(k, p);
        bld.record("j", j);
        bld.record("s'", s_prime);
        if p_a && p_n {
            let (i, s) = split_power(n as u64, p);
            let a1 = &a / &pb;
            let c2 = c2_mod_p(&c, p, i + j);
            let value = (c.pow(n + 1) * a1.pow(n) + (-&c2).pow(n)).mod_floor(&pb);
            bld.record("i", i);
            bld.record("s", s);
            bld.record("a1", a1);
            bld.record("c2 mod p", c2);
            bld.record("c^(n+1) a1^n + (-c2)^n mod p", value);
        }
        let coprime = power_split_coprime(params, p, j, s_prime)?;
        return Ok(bld.ambiguous(CaseId::F1DividesK, Some(coprime), "power-split case: coprimality reading"));
    }
    if p_a && p_n {
        let (j, s) = split_power(n as u64, p);
        let a1 = &a / &pb;
        let c2 = c2_mod_p(&c, p, j);
        let s_big = BigInt::from(s);
        let value = ((-&c2).modpow(&s_big, &pb) + &c * (&c * &a1).modpow(&s_big, &pb)).mod_floor(&pb);
        bld.record("j", j);
        bld.record("s", s);
        bld.record("a1", a1);
        bld.record("c2 mod p", c2);
        bld.record("(-c2)^s + c (c a1)^s mod p", value.clone());
        return Ok(bld.decided(CaseId::F1DividesAAndN, !value.is_zero()));
    }

    let fb = params.outer_at_b();
    bld.record("f(b)", fb.clone());
    let vfb = bld.valuation("v_p(f(b))", &fb);
    let fb_ok = k == 1 || below_square(vfb);

    if p_a || p_n {
        return Ok(bld.decided(CaseId::F1DividesAOrN, fb_ok));
    }
    let an_c = a.pow(n) * &c;
    let big_a = BigInt::one() + &an_c * BigInt::from(n);
    if (n as u64 + 1) % p == 0 {
        let v1 = bld.valuation("v_p(1 - a^n c)", &(BigInt::one() - &an_c));
        let v2 = bld.valuation("v_p(1 + a^n c n)", &big_a);
        if !fb_ok {
            return Ok(bld.decided(CaseId::F1DividesNPlusOne, false));
        }
        if below_square(v1) && below_square(v2) {
            return Ok(bld.decided(CaseId::F1DividesNPlusOne, true));
        }
        return Ok(bld.ambiguous(
            CaseId::F1DividesNPlusOne,
            Some(false),
            "square divides 1 - a^n c or 1 + a^n c n; condition is sufficient only",
        ));
    }
    let nb = BigInt::from(n);
    let bracket = nb.pow(n) * (BigInt::one() - &an_c).pow(n + 1) + &an_c * (&nb + 1u32).pow(n + 1);
    let t = bld.valuation("t = v_p(1 + a^n c n)", &big_a);
    let vb = bld.valuation("v_p(bracket)", &bracket);
    generic_case(bld, CaseId::F1Generic, fb_ok, t, vb)
}

/// Shared logic of the generic cases: with `t = v_p(A)` for the base
/// denominator `A`, the bracket clause is decisive only when `t = 0`.
fn generic_case(bld: Builder, id: CaseId, fb_ok: bool, t: Option<u32>, vb: Option<u32>) -> Result<CaseVerdict> {
    if !fb_ok {
        return Ok(bld.decided(id, false));
    }
    match t {
        Some(0) => Ok(bld.decided(id, below_square(vb))),
        Some(t) => {
            let tentative = vb.map(|e| e < 2 * t + 1);
            Ok(bld.ambiguous(id, tentative, "p divides the base denominator; reading p^(2t+1) does not divide the bracket"))
        }
        None => Ok(bld.ambiguous(id, None, "base denominator vanishes")),
    }
}

fn f2_cases(params: &FamilyParams, p: u64, mut bld: Builder) -> Result<CaseVerdict> {
    let pb = BigInt::from(p);
    let n = params.n();
    let k = params.k() as u64;
    let a = BigInt::from(params.a());
    let c = BigInt::from(params.c());
    let divides = |x: &BigInt| (x % &pb).is_zero();

    if divides(&c) {
        let v = bld.valuation("v_p(a^(n-1) c)", &(a.pow(n - 1) * &c));
        return Ok(bld.decided(CaseId::F2DividesC, below_square(v)));
    }
    if divides(&a) {
        if n >= 3 {
            return Ok(bld.decided(CaseId::PropNonMonogenic, false));
        }
        return Ok(bld.ambiguous(CaseId::OracleFallback, None, "p | a with n = 2 has no fast test"));
    }
    if k % p == 0 {
        let (j, s_prime) = split_power(k, p);
        bld.record("j", j);
        bld.record("s'", s_prime);
        let coprime = power_split_coprime(params, p, j, s_prime)?;
        return Ok(bld.ambiguous(CaseId::F2DividesK, Some(coprime), "power-split case: coprimality reading"));
    }

    let fb = params.outer_at_b();
    bld.record("f(b)", fb.clone());
    let vfb = bld.valuation("v_p(f(b))", &fb);
    let fb_ok = k == 1 || below_square(vfb);

    if (n as u64) % p == 0 {
        return Ok(bld.decided(CaseId::F2DividesN, fb_ok));
    }
    let nb = BigInt::from(n);
    let big_a = &nb * &c + &a;
    if (n as u64 + 1) % p == 0 {
        let v1 = bld.valuation("v_p(a + n c)", &big_a);
        let v2 = bld.valuation("v_p(c - a)", &(&c - &a));
        if !fb_ok {
            return Ok(bld.decided(CaseId::F2DividesNPlusOne, false));
        }
        if below_square(v1) && below_square(v2) {
            return Ok(bld.decided(CaseId::F2DividesNPlusOne, true));
        }
        return Ok(bld.ambiguous(
            CaseId::F2DividesNPlusOne,
            Some(false),
            "square divides a + n c or c - a; condition is sufficient only",
        ));
    }
    let bracket = (-&nb).pow(n) * (&c - &a).pow(n + 1) - a.pow(n) * &c * (&nb + 1u32).pow(n + 1);
    let t = bld.valuation("t = v_p(n c + a)", &big_a);
    let vb = bld.valuation("v_p(bracket)", &bracket);
    generic_case(bld, CaseId::F2Generic, fb_ok, t, vb)
}

/// The selection predicates `p | c, p | k, p | a, p | n, p | n + 1`.
#[cfg(test)]
fn hypotheses(params: &FamilyParams, p: u64) -> [bool; 5] {
    let pi = p as i64;
    let n = params.n() as u64;
    [
        params.c() % pi == 0,
        params.k() as u64 % p == 0,
        params.a() % pi == 0,
        n % p == 0,
        (n + 1) % p == 0,
    ]
}
