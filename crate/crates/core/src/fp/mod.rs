//! Polynomials over prime fields `F_p` with word-sized `p`, and their
//! complete factorization into monic irreducibles.

mod factor;
mod irreducible;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intarith::{is_prime_u64, mul_mod, pow_mod};
use crate::zx::IntPoly;

pub use factor::{factor_mod_p, factor_mod_p_with_rng, ModFactorization};
pub use irreducible::is_irreducible_mod_p;

/// A polynomial over `F_p`, coefficients constant term first, each in `[0, p)`,
/// with a nonzero leading coefficient unless zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= p - b {
        a - (p - b)
    } else {
        a + b
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

/// Inverse of a nonzero residue modulo the prime `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

impl ModPoly {
    /// Reduces `coeffs` into `[0, modulus)`; fails unless `modulus` is prime.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        Ok(Self::from_reduced(modulus, coeffs.into_iter().map(|c| c % modulus).collect()))
    }

    /// Trusts that `modulus` is prime and every coefficient is reduced.
    fn from_reduced(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(modulus, Vec::new())
    }

    fn zero_like(&self) -> Self {
        ModPoly { modulus: self.modulus, coeffs: Vec::new() }
    }

    fn constant_like(&self, c: u64) -> Self {
        Self::from_reduced(self.modulus, vec![c % self.modulus])
    }

    /// `x^degree` with the same modulus.
    fn monomial_like(&self, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        ModPoly { modulus: self.modulus, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    /// The monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => self.scale(inv_mod(lc, self.modulus)),
        }
    }

    pub fn scale(&self, s: u64) -> Self {
        let p = self.modulus;
        let s = s % p;
        Self::from_reduced(p, self.coeffs.iter().map(|&c| mul_mod(c, s, p)).collect())
    }

    pub fn eval(&self, x0: u64) -> u64 {
        let p = self.modulus;
        let x0 = x0 % p;
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x0, p), c, p))
    }

    pub fn derivative(&self) -> Self {
        let p = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64) % p, p))
            .collect();
        Self::from_reduced(p, coeffs)
    }

    fn check_same(&self, other: &ModPoly) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    /// Euclidean division; `den` must be nonzero.
    pub fn div_rem(&self, den: &ModPoly) -> Result<(ModPoly, ModPoly)> {
        self.check_same(den)?;
        let dd = den.degree().ok_or(Error::DivisionByZero)?;
        let p = self.modulus;
        let Some(dn) = self.degree().filter(|&dn| dn >= dd) else {
            return Ok((self.zero_like(), self.clone()));
        };
        let inv = inv_mod(den.leading_coeff().expect("nonzero"), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; dn - dd + 1];
        for top in (dd..=dn).rev() {
            let t = mul_mod(rem[top], inv, p);
            if t == 0 {
                continue;
            }
            quot[top - dd] = t;
            for (i, &d) in den.coeffs.iter().enumerate() {
                rem[top - dd + i] = sub_mod(rem[top - dd + i], mul_mod(t, d, p), p);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(p, quot), Self::from_reduced(p, rem)))
    }

    pub fn rem(&self, den: &ModPoly) -> Result<ModPoly> {
        Ok(self.div_rem(den)?.1)
    }

    /// Quotient when `den` divides `self`; errors otherwise.
    pub fn div_exact(&self, den: &ModPoly) -> Result<ModPoly> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn pow(&self, mut exp: u64) -> ModPoly {
        let mut base = self.clone();
        let mut acc = self.constant_like(1);
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

    /// `self(x^e)`.
    pub fn inflate(&self, e: usize) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * e + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c;
        }
        ModPoly { modulus: self.modulus, coeffs }
    }

    /// Representatives in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self) -> IntPoly {
        let p = self.modulus;
        let half = p / 2;
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|&c| if c > half { BigInt::from(c) - BigInt::from(p) } else { BigInt::from(c) })
                .collect(),
        )
    }

    /// Representatives in `[0, p)`.
    pub fn lift_nonnegative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Coefficientwise reduction of an integer polynomial.
pub fn reduce_mod_p(f: &IntPoly, prime: u64) -> Result<ModPoly> {
    if !is_prime_u64(prime) {
        return Err(Error::NotPrime(prime));
    }
    let m = BigInt::from(prime);
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = ((c % &m) + &m) % &m;
            r.to_u64().expect("residue fits a word")
        })
        .collect();
    Ok(ModPoly::from_reduced(prime, coeffs))
}

/// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
pub fn gcd_mod_p(a: &ModPoly, b: &ModPoly) -> Result<ModPoly> {
    a.check_same(b)?;
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// `base^exponent mod modulus` by square-and-multiply.
pub fn powmod(base: &ModPoly, exponent: &BigUint, modulus: &ModPoly) -> Result<ModPoly> {
    base.check_same(modulus)?;
    if modulus.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut acc = modulus.constant_like(1);
    let base = base.rem(modulus)?;
    for i in (0..exponent.bits()).rev() {
        acc = (&acc * &acc).rem(modulus)?;
        if exponent.bit(i) {
            acc = (&acc * &base).rem(modulus)?;
        }
    }
    Ok(acc)
}

/// Word-exponent form of [`powmod`] for callers with validated inputs.
fn powmod_word(base: &ModPoly, mut exp: u64, modulus: &ModPoly) -> ModPoly {
    let mut acc = modulus.constant_like(1);
    let mut base = base.rem(modulus).expect("checked modulus");
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (&acc * &base).rem(modulus).expect("checked modulus");
        }
        exp >>= 1;
        if exp > 0 {
            base = (&base * &base).rem(modulus).expect("checked modulus");
        }
    }
    acc
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Residues print as nonnegative integers.
        let lifted = self.lift_nonnegative();
        write!(f, "{lifted} mod {}", self.modulus)
    }
}

// Arithmetic operators panic on mismatched moduli; the public functions
// above report the mismatch as an error instead.
impl Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        let p = self.modulus;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                add_mod(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    rhs.coeffs.get(i).copied().unwrap_or(0),
                    p,
                )
            })
            .collect();
        ModPoly::from_reduced(p, coeffs)
    }
}

impl Neg for &ModPoly {
    type Output = ModPoly;
    fn neg(self) -> ModPoly {
        let p = self.modulus;
        ModPoly::from_reduced(p, self.coeffs.iter().map(|&c| sub_mod(0, c, p)).collect())
    }
}

impl Sub for &ModPoly {
    type Output = ModPoly;
    fn sub(self, rhs: &ModPoly) -> ModPoly {
        self + &(-rhs)
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        if self.is_zero() || rhs.is_zero() {
            return self.zero_like();
        }
        let p = self.modulus;
        // Accumulate in u128 and reduce once per output coefficient when the
        // sums cannot overflow.
        let terms = self.coeffs.len().min(rhs.coeffs.len()) as u128;
        let max = (p as u128 - 1) * (p as u128 - 1);
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        if max.checked_mul(terms).is_some() {
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    out[i + j] += a as u128 * b as u128;
                }
            }
            let coeffs = out.into_iter().map(|c| (c % p as u128) as u64).collect();
            ModPoly::from_reduced(p, coeffs)
        } else {
            let mut acc = vec![0u64; out.len()];
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    acc[i + j] = add_mod(acc[i + j], mul_mod(a, b, p), p);
                }
            }
            ModPoly::from_reduced(p, acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = IntPoly::from_i64s(&[30, 30, 1]);
        assert_eq!(reduce_mod_p(&f, 2).unwrap(), mp(2, &[0, 0, 1]));
        let g = IntPoly::from_i64s(&[22, 0, 22, 0, 8, 0, 1]);
        assert_eq!(reduce_mod_p(&g, 11).unwrap(), mp(11, &[0, 0, 0, 0, 8, 0, 1]));
        assert_eq!(reduce_mod_p(&IntPoly::from_i64s(&[-5, 0, 1]), 2).unwrap(), mp(2, &[1, 0, 1]));
        assert_eq!(reduce_mod_p(&f, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn gcd_examples() {
        let one = mp(2, &[1]);
        assert_eq!(gcd_mod_p(&mp(2, &[1, 1]), &mp(2, &[0, 1])).unwrap(), one);
        assert_eq!(gcd_mod_p(&mp(2, &[1, 0, 1]), &mp(2, &[1, 1])).unwrap(), mp(2, &[1, 1]));
        assert_eq!(gcd_mod_p(&mp(7, &[3, 6]), &ModPoly::zero(7).unwrap()).unwrap(), mp(7, &[4, 1]));
        assert_eq!(
            gcd_mod_p(&mp(2, &[1]), &mp(3, &[1])),
            Err(Error::ModulusMismatch(2, 3))
        );
    }

    #[test]
    fn powmod_examples() {
        let m = mp(5, &[1, 0, 1]);
        let x = mp(5, &[0, 1]);
        assert_eq!(powmod(&x, &2u32.into(), &m).unwrap(), mp(5, &[4]));
        assert_eq!(powmod(&x, &0u32.into(), &m).unwrap(), mp(5, &[1]));
        // x^4 = 1, so x^5 = x.
        assert_eq!(powmod(&x, &5u32.into(), &m).unwrap(), x);
        assert_eq!(powmod(&x, &5u32.into(), &mp(5, &[3])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn division_reconstructs() {
        let a = mp(13, &[5, 0, 7, 12, 1, 9]);
        let b = mp(13, &[2, 11, 3]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn lifts_and_display() {
        let f = mp(7, &[6, 3, 4, 1]);
        assert_eq!(f.lift_symmetric(), IntPoly::from_i64s(&[-1, 3, -3, 1]));
        assert_eq!(f.lift_nonnegative(), IntPoly::from_i64s(&[6, 3, 4, 1]));
        assert_eq!(f.to_string(), "x^3 + 4*x^2 + 3*x + 6 mod 7");
    }

    #[test]
    fn large_modulus_arithmetic() {
        let p = 18_446_744_073_709_551_557u64;
        let f = mp(p, &[p - 1, p - 2, p - 3]);
        let g = &f * &f;
        let (q, r) = g.div_rem(&f).unwrap();
        assert_eq!((q, r.is_zero()), (f.clone(), true));
        assert_eq!(f.monic().leading_coeff(), Some(1));
    }
}
