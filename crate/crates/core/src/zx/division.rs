use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Result of `multiplier * num = quotient * den + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: IntPoly,
    pub remainder: IntPoly,
    pub multiplier: BigInt,
}

impl IntPoly {
    /// Pseudo-division by `den`. The multiplier is `lc(den)^(deg num - deg den + 1)`
    /// (or 1 when `deg num < deg den`), and `deg remainder < deg den`.
    pub fn pseudo_divide(&self, den: &IntPoly) -> Result<PseudoDivision> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let Some(dn) = self.degree() else {
            return Ok(PseudoDivision {
                quotient: IntPoly::zero(),
                remainder: IntPoly::zero(),
                multiplier: BigInt::one(),
            });
        };
        if dn < dd {
            return Ok(PseudoDivision {
                quotient: IntPoly::zero(),
                remainder: self.clone(),
                multiplier: BigInt::one(),
            });
        }
        let lc = den.leading_coeff().expect("nonzero");
        let steps = dn - dd + 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); steps];
        // Each step multiplies the running remainder and quotient by lc,
        // then cancels the top coefficient.
        for step in 0..steps {
            let top = dn - step;
            let t = rem[top].clone();
            for q in quot.iter_mut() {
                *q *= lc;
            }
            for r in rem.iter_mut().take(top + 1) {
                *r *= lc;
            }
            let shift = top - dd;
            quot[shift] += &t;
            if !t.is_zero() {
                for (i, d) in den.coeffs.iter().enumerate() {
                    rem[shift + i] -= &t * d;
                }
            }
            debug_assert!(rem[top].is_zero());
        }
        rem.truncate(dd);
        Ok(PseudoDivision {
            quotient: IntPoly::new(quot),
            remainder: IntPoly::new(rem),
            multiplier: lc.pow(steps as u32),
        })
    }

    /// Exact division over `Z`: succeeds only when `den` divides `self` with
    /// an integral quotient, returning remainder 0 and multiplier 1.
    pub fn exact_divide(&self, den: &IntPoly) -> Result<PseudoDivision> {
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let Some(dn) = self.degree() else {
            return Ok(PseudoDivision {
                quotient: IntPoly::zero(),
                remainder: IntPoly::zero(),
                multiplier: BigInt::one(),
            });
        };
        if dn < dd {
            return Err(Error::InexactDivision);
        }
        let lc = den.leading_coeff().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for top in (dd..=dn).rev() {
            let (t, r) = rem[top].div_rem(lc);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            if !t.is_zero() {
                for (i, d) in den.coeffs.iter().enumerate() {
                    rem[top - dd + i] -= &t * d;
                }
            }
            quot[top - dd] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(PseudoDivision {
            quotient: IntPoly::new(quot),
            remainder: IntPoly::zero(),
            multiplier: BigInt::one(),
        })
    }

    /// Shorthand for the quotient of [`IntPoly::exact_divide`].
    pub fn div_exact(&self, den: &IntPoly) -> Result<IntPoly> {
        Ok(self.exact_divide(den)?.quotient)
    }
}

/// `prem(a, b)`; `b` must be nonzero.
pub(crate) fn pseudo_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a.pseudo_divide(b).expect("nonzero divisor").remainder
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn exact_division_recovers_linear_cofactor() {
        // (1 + 20x)^2 (4 - 10x) expanded by hand-independent multiplication.
        let den = p(&[1, 40, 400]);
        let expected_q = p(&[4, -10]);
        let num = &den * &expected_q;
        assert_eq!(num, p(&[4, 150, 1200, -4000]));
        let d = num.exact_divide(&den).unwrap();
        assert_eq!(d.quotient, expected_q);
        assert!(d.remainder.is_zero());
        assert_eq!(d.multiplier, BigInt::one());
    }

    #[test]
    fn trivial_divisions() {
        let d = p(&[-1, 0, 1]).pseudo_divide(&p(&[-1, 1])).unwrap();
        assert_eq!((d.quotient, d.remainder), (p(&[1, 1]), IntPoly::zero()));
        let d = p(&[0, 1]).pseudo_divide(&p(&[0, 0, 1])).unwrap();
        assert_eq!((d.quotient, d.remainder), (IntPoly::zero(), p(&[0, 1])));
    }

    #[test]
    fn errors() {
        assert_eq!(p(&[1, 1]).pseudo_divide(&IntPoly::zero()), Err(Error::DivisionByZero));
        assert_eq!(p(&[1, 0, 1]).exact_divide(&p(&[1, 1])), Err(Error::InexactDivision));
        assert_eq!(p(&[1, 2]).exact_divide(&p(&[0, 2])), Err(Error::InexactDivision));
    }

    #[test]
    fn pseudo_division_reconstructs() {
        let num = p(&[3, -1, 4, 1, -5, 9]);
        let den = p(&[2, 6, -5]);
        let d = num.pseudo_divide(&den).unwrap();
        assert_eq!(num.scale(&d.multiplier), &(&d.quotient * &den) + &d.remainder);
        assert!(d.remainder.degree() < den.degree());
        assert_eq!(d.multiplier, BigInt::from(-5).pow(4));
    }
}
