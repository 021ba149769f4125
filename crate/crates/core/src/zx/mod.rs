//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Coefficients are stored constant term first. The zero polynomial is the
//! empty vector, and every other value keeps a nonzero leading coefficient,
//! so derived `PartialEq` is equality of polynomials.

mod division;
mod resultant;
mod text;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use division::PseudoDivision;
pub use resultant::{discriminant, resultant};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: BigInt, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPoly { coeffs }
    }

    /// `x^k + b`, the inner map of the composed families.
    pub fn binomial(k: usize, b: BigInt) -> Self {
        Self::monomial(BigInt::one(), k) + Self::constant(b)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`, expanded by Horner's rule.
    pub fn compose(&self, inner: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc = acc + Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x0: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x0 + c)
    }

    /// Positive gcd of the coefficients and the primitive part, so that
    /// `content * primitive == self`. The primitive part keeps the sign of
    /// the input.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.content();
        let primitive = IntPoly { coeffs: self.coeffs.iter().map(|c| c / &content).collect() };
        Ok((content, primitive))
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`, failing unless all divisions are exact.
    pub fn div_exact_scalar(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Greatest common divisor in `Z[x]`, normalized to a positive leading
    /// coefficient. Uses the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let g_content = self.content().gcd(&other.content());
        let (_, mut a) = self.content_and_primitive().expect("nonzero");
        let (_, mut b) = other.content_and_primitive().expect("nonzero");
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = division::pseudo_remainder(&a, &b);
            a = b;
            b = if r.is_zero() { r } else { r.content_and_primitive().expect("nonzero").1 };
        }
        a.normalize_sign().scale(&g_content)
    }

    fn normalize_sign(&self) -> IntPoly {
        match self.leading_coeff() {
            Some(lc) if lc.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs)
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> IntPoly {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    IntPoly::new(out)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    /// Schoolbook multiplication.
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn canonical_form_strips_leading_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn ring_identities() {
        assert_eq!(p(&[1, 1]) * p(&[-1, 1]), p(&[-1, 0, 1]));
        let q = p(&[30, 30, 1]);
        assert_eq!(&q + &IntPoly::zero(), q);
        assert_eq!(&q * &IntPoly::one(), q);
        assert_eq!((&q - &q), IntPoly::zero());
        assert_eq!((p(&[1, 2, 3]) * p(&[4, 5])).degree(), Some(3));
    }

    #[test]
    fn compose_examples() {
        let f = p(&[2, 2, 2, 1]);
        assert_eq!(f.compose(&p(&[2, 0, 1])), p(&[22, 0, 22, 0, 8, 0, 1]));
        assert_eq!(f.compose(&p(&[1, 0, 1])), p(&[7, 0, 9, 0, 5, 0, 1]));
        assert_eq!(f.compose(&IntPoly::x()), f);
        assert_eq!(IntPoly::x().compose(&f), f);
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[22, 0, 22, 0, 8, 0, 1]).derivative(), p(&[0, 44, 0, 32, 0, 6]));
        assert_eq!(p(&[7]).derivative(), IntPoly::zero());
        assert_eq!(p(&[30, 30, 1]).derivative(), p(&[30, 2]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[30, 30, 1]).eval(&30.into()), BigInt::from(1830));
        assert_eq!(p(&[2, 2, 2, 1]).eval(&2.into()), BigInt::from(22));
        assert_eq!(p(&[-9, 4, 4]).eval(&0.into()), BigInt::from(-9));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p(&[30, 2]).content_and_primitive().unwrap(), (2.into(), p(&[15, 1])));
        assert_eq!(p(&[1, 0, 1]).content_and_primitive().unwrap(), (1.into(), p(&[1, 0, 1])));
        assert_eq!(p(&[-8, 0, -4]).content_and_primitive().unwrap(), (4.into(), p(&[-2, 0, -1])));
        assert_eq!(IntPoly::zero().content_and_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn gcd_in_zx() {
        let a = p(&[1, 1]) * p(&[2, 0, 1]);
        let b = p(&[1, 1]) * p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[2, 4]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), IntPoly::one());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let q = p(&[1, -2, 3]);
        assert_eq!(q.pow(3), &(&q * &q) * &q);
        assert_eq!(q.pow(0), IntPoly::one());
    }
}
