use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::division::pseudo_remainder;
use super::IntPoly;
use crate::error::{Error, Result};

fn exact_quotient(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "subresultant division must be exact");
    q
}

/// Resultant via the subresultant polynomial remainder sequence.
///
/// Sign convention: `Res(p, q) = lc(p)^deg q * lc(q)^deg p * prod (a_i - b_j)`
/// over the roots `a_i` of `p` and `b_j` of `q`.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if dp == 0 {
        return Ok(p.coeffs[0].pow(dq as u32));
    }
    if dq == 0 {
        return Ok(q.coeffs[0].pow(dp as u32));
    }

    let (ca, mut a) = p.content_and_primitive()?;
    let (cb, mut b) = q.content_and_primitive()?;
    let t = ca.pow(dq as u32) * cb.pow(dp as u32);
    let mut sign = BigInt::one();
    if dp < dq {
        std::mem::swap(&mut a, &mut b);
        if dp % 2 == 1 && dq % 2 == 1 {
            sign = -sign;
        }
    }

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_remainder(&a, &b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &g * h.pow(delta);
        a = b;
        b = IntPoly::new(r.coeffs.iter().map(|c| exact_quotient(c, &divisor)).collect());
        g = a.leading_coeff().expect("nonzero").clone();
        // h <- g^delta / h^(delta - 1)
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact_quotient(&g.pow(delta), &h.pow(delta - 1)),
        };
        if b.degree() == Some(0) {
            break;
        }
    }

    let da = a.degree().expect("nonzero") as u32;
    let lb = &b.coeffs[0];
    let last = match da {
        0 => unreachable!("a keeps positive degree while b is nonconstant"),
        1 => lb.clone(),
        _ => exact_quotient(&lb.pow(da), &h.pow(da - 1)),
    };
    Ok(sign * t * last)
}

/// Discriminant `(-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPoly) -> Result<BigInt> {
    let n = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    let res = resultant(p, &p.derivative())?;
    let lc = p.leading_coeff().expect("nonzero");
    let (q, r) = res.div_rem(lc);
    if !r.is_zero() {
        return Err(Error::Internal("Res(p, p') not divisible by lc(p)".into()));
    }
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}
