use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Family, FamilyParams};
use crate::error::{Error, Result};
use crate::intarith::{factor_bounded, FactorBudget, Factorization};
use crate::zx::{discriminant, resultant, IntPoly};

fn minus_one_pow(e: u64) -> BigInt {
    if e % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `disc(F) = D * prod base^exp` with `base` signed integers.
struct Components {
    sign: BigInt,
    parts: Vec<(BigInt, u32)>,
}

impl Components {
    fn value(&self) -> BigInt {
        self.parts.iter().fold(self.sign.clone(), |acc, (b, e)| acc * b.pow(*e))
    }
}

/// `Q = B / A^2` for the base family, where `disc(f) = s * [lead] * c^(n-1) * Q`.
fn base_quotient(params: &FamilyParams) -> Result<BigInt> {
    let n = params.n();
    let nb = BigInt::from(n);
    let a = BigInt::from(params.a());
    let c = BigInt::from(params.c());
    let an = a.pow(n);
    let (bracket, denom) = match params.family() {
        Family::F1 => (
            nb.pow(n) * (BigInt::one() - &an * &c).pow(n + 1) + &an * &c * (&nb + 1u32).pow(n + 1),
            BigInt::one() + &an * &c * &nb,
        ),
        Family::F2 => (
            (-&nb).pow(n) * (&c - &a).pow(n + 1) - &an * &c * (&nb + 1u32).pow(n + 1),
            &nb * &c + &a,
        ),
    };
    if denom.is_zero() {
        return Err(Error::ClosedForm("denominator of the base discriminant vanishes".into()));
    }
    let (q, r) = bracket.div_rem(&(&denom * &denom));
    if !r.is_zero() {
        return Err(Error::ClosedForm(format!("{bracket} is not divisible by ({denom})^2")));
    }
    Ok(q)
}

fn components(params: &FamilyParams) -> Result<Components> {
    let n = params.n();
    let k = params.k();
    let nk = n as u64 * k as u64;
    let half = n as u64 * (n as u64 - 1) / 2;
    // Sign of the base closed form, then of the composition formula with g = x^k + b.
    let base_sign = match params.family() {
        Family::F1 => minus_one_pow(half),
        Family::F2 => -minus_one_pow(half),
    };
    let comp_sign = minus_one_pow(nk * (3 * nk + n as u64 - 2 * k as u64 - 2) / 2);
    let sign = comp_sign * base_sign.pow(k);
    let mut parts = vec![(BigInt::from(k), n * k)];
    if params.family() == Family::F2 {
        parts.push((BigInt::from(params.a()), (n - 1) * (n - 2) * k));
    }
    parts.push((BigInt::from(params.c()), (n - 1) * k));
    parts.push((base_quotient(params)?, k));
    parts.push((params.outer_at_b(), k - 1));
    Ok(Components { sign, parts })
}

/// Discriminant of `build_composed(params)` from the closed form
/// `+- k^(nk) disc(f)^k f(b)^(k-1)`, with the sign made exact.
pub fn disc_closed(params: &FamilyParams) -> Result<BigInt> {
    Ok(components(params)?.value())
}

pub fn disc_closed_f1(params: &FamilyParams) -> Result<BigInt> {
    if params.family() != Family::F1 {
        return Err(Error::InvalidParams("expected family f1".into()));
    }
    disc_closed(params)
}

pub fn disc_closed_f2(params: &FamilyParams) -> Result<BigInt> {
    if params.family() != Family::F2 {
        return Err(Error::InvalidParams("expected family f2".into()));
    }
    disc_closed(params)
}

/// Factors the closed-form discriminant piece by piece, which keeps every
/// number handed to the factoring routines small.
pub fn factor_disc_closed(params: &FamilyParams, budget: &FactorBudget) -> Result<Factorization> {
    let comps = components(params)?;
    let mut out = Factorization { primes: Vec::new(), unfactored: Vec::new() };
    for (base, e) in comps.parts.iter().filter(|(_, e)| *e > 0) {
        if base.is_zero() {
            return Err(Error::ClosedForm("discriminant is zero".into()));
        }
        out = out.merge(&factor_bounded(base, budget)?.pow(*e));
    }
    Ok(out)
}

/// Discriminant of `f(g(x))` from `disc(f)` and `Res(f(g), g')`:
///
/// ```text
/// (-1)^(nm(3nm+n-2m-2)/2) lc(f)^(m-1) lc(g)^(n(nm-m-1)) disc(f)^m Res(f(g), g')
/// ```
///
/// with `n = deg f`, `m = deg g`.
pub fn disc_of_composition(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let (Some(n), Some(m)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if n == 0 || m == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let disc_f = discriminant(f)?;
    if disc_f.is_zero() {
        return Err(Error::ClosedForm("outer polynomial has a repeated root".into()));
    }
    let (n, m) = (n as u64, m as u64);
    let res = resultant(&f.compose(g), &g.derivative())?;
    let lc_f = f.leading_coeff().expect("nonzero");
    let lc_g = g.leading_coeff().expect("nonzero");
    let mut value = minus_one_pow(n * m * (3 * n * m + n - 2 * m - 2) / 2)
        * lc_f.pow((m - 1) as u32)
        * disc_f.pow(m as u32)
        * res;
    // Negative only when n = 1.
    let lc_exp = n as i64 * (n as i64 * m as i64 - m as i64 - 1);
    if lc_exp >= 0 {
        value *= lc_g.pow(lc_exp as u32);
    } else {
        let d = lc_g.pow((-lc_exp) as u32);
        let (q, r) = value.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Internal("composition discriminant is not integral".into()));
        }
        value = q;
    }
    Ok(value)
}

/// Absolute values agree; used by report invariants.
pub(crate) fn same_magnitude(x: &BigInt, y: &BigInt) -> bool {
    x.abs() == y.abs()
}
