use super::{gcd_mod_p, powmod_word, ModPoly};
use crate::error::{Error, Result};
use crate::intarith::small_prime_divisors;

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) = x mod f`
/// and `gcd(f, x^(p^(n/q)) - x) = 1` for every prime `q | n`.
pub fn is_irreducible_mod_p(f: &ModPoly) -> Result<bool> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let g = f.monic();
    let x = g.monomial_like(1);
    let checkpoints: Vec<usize> = small_prime_divisors(n as u64).into_iter().map(|q| n / q as usize).collect();
    let mut h = x.clone();
    for k in 1..=n {
        h = powmod_word(&h, g.modulus, &g);
        if checkpoints.contains(&k) && !gcd_mod_p(&g, &(&h - &x))?.is_one() {
            return Ok(false);
        }
    }
    Ok(h == x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(is_irreducible_mod_p(&mp(3, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible_mod_p(&mp(5, &[1, 0, 1])).unwrap());
        assert!(is_irreducible_mod_p(&mp(11, &[7, 1])).unwrap());
        assert_eq!(is_irreducible_mod_p(&mp(11, &[7])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn squares_and_products_are_reducible() {
        // x^4 + x + 1 is irreducible over F_2; its square and (x^2+x+1)^2 are not.
        assert!(is_irreducible_mod_p(&mp(2, &[1, 1, 0, 0, 1])).unwrap());
        assert!(!is_irreducible_mod_p(&mp(2, &[1, 0, 1, 0, 1])).unwrap());
        // x^6 + x + 1 over F_2 is irreducible (a primitive polynomial).
        assert!(is_irreducible_mod_p(&mp(2, &[1, 1, 0, 0, 0, 0, 1])).unwrap());
    }
}
