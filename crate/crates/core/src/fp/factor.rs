use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::{gcd_mod_p, powmod, powmod_word, ModPoly};
use crate::error::{Error, Result};

/// Primes at or below this bound split equal-degree parts deterministically.
const BERLEKAMP_MAX_PRIME: u64 = 13;

const DEFAULT_SEED: u64 = 0x6d6f_6e6f_6765_6e00;

/// `leading_unit * prod factor^multiplicity`, factors monic, irreducible,
/// pairwise distinct, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    pub modulus: u64,
    pub leading_unit: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl ModFactorization {
    pub fn expand(&self) -> ModPoly {
        let unit = ModPoly::from_reduced(self.modulus, vec![self.leading_unit]);
        self.factors.iter().fold(unit, |acc, (g, e)| &acc * &g.pow(*e as u64))
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat(g.degree().unwrap_or(0)).take(*e as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

impl Serialize for ModFactorization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let factors: Vec<(String, u32)> =
            self.factors.iter().map(|(g, e)| (g.lift_nonnegative().to_string(), *e)).collect();
        let mut st = s.serialize_struct("ModFactorization", 3)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("leading_unit", &self.leading_unit)?;
        st.serialize_field("factors", &factors)?;
        st.end()
    }
}

/// Complete factorization with a fixed internal seed. The result does not
/// depend on the seed, only the running time does.
pub fn factor_mod_p(f: &ModPoly) -> Result<ModFactorization> {
    factor_mod_p_with_rng(f, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// Squarefree decomposition, distinct-degree splitting, then equal-degree
/// splitting: Berlekamp for `p <= 13`, Cantor-Zassenhaus with `rng` above.
pub fn factor_mod_p_with_rng<R: Rng + ?Sized>(f: &ModPoly, rng: &mut R) -> Result<ModFactorization> {
    let leading_unit = f.leading_coeff().ok_or(Error::ZeroPolynomial)?;
    let monic = f.monic();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic)? {
        for (chunk, d) in distinct_degree(&part)? {
            for g in equal_degree(&chunk, d, rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs.cmp(&b.coeffs)));
    let out = ModFactorization { modulus: f.modulus, leading_unit, factors };
    if &out.expand() != f {
        return Err(Error::Internal(format!("factorization of {f} does not reproduce it")));
    }
    Ok(out)
}

/// `g` with `g(x)^p = f(x)`; `f` must have support on multiples of `p`.
fn pth_root(f: &ModPoly) -> ModPoly {
    let p = f.modulus as usize;
    let coeffs = f.coeffs.iter().step_by(p).copied().collect();
    ModPoly::from_reduced(f.modulus, coeffs)
}

/// Pairs `(part, i)` with `f = prod part^i`, parts squarefree and coprime.
fn squarefree_decomposition(f: &ModPoly) -> Result<Vec<(ModPoly, u32)>> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = f.modulus as u32;
    let d = f.derivative();
    if d.is_zero() {
        for (g, e) in squarefree_decomposition(&pth_root(f))? {
            out.push((g, e * p));
        }
        return Ok(out);
    }
    let mut c = gcd_mod_p(f, &d)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = gcd_mod_p(&w, &c)?;
        let part = w.div_exact(&y)?;
        if !part.is_one() {
            out.push((part, i));
        }
        c = c.div_exact(&y)?;
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree_decomposition(&pth_root(&c))? {
            out.push((g, e * p));
        }
    }
    Ok(out)
}

/// Pairs `(chunk, d)` where each chunk is the product of all irreducible
/// factors of degree `d` of the squarefree monic `f`.
fn distinct_degree(f: &ModPoly) -> Result<Vec<(ModPoly, usize)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = f.monomial_like(1);
    let mut h = x.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = powmod_word(&h, f.modulus, &rest);
        let g = gcd_mod_p(&rest, &(&h - &x))?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

fn equal_degree<R: Rng + ?Sized>(f: &ModPoly, d: usize, rng: &mut R) -> Result<Vec<ModPoly>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    if f.modulus <= BERLEKAMP_MAX_PRIME {
        return berlekamp(f);
    }
    cantor_zassenhaus(f, d, rng)
}

fn cantor_zassenhaus<R: Rng + ?Sized>(f: &ModPoly, d: usize, rng: &mut R) -> Result<Vec<ModPoly>> {
    let n = f.degree().unwrap_or(0);
    if n <= d {
        return Ok(vec![f.clone()]);
    }
    let p = f.modulus;
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) >> 1u32;
    let one = f.constant_like(1);
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = ModPoly::from_reduced(p, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = &powmod(&a, &exponent, f)? - &one;
        let g = gcd_mod_p(f, &b)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = cantor_zassenhaus(&g, d, rng)?;
            out.extend(cantor_zassenhaus(&f.div_exact(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

/// Basis of `{v : v^p = v mod f}` for squarefree monic `f`.
fn berlekamp_basis(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.modulus;
    let n = f.degree().unwrap_or(0);
    let xp = powmod_word(&f.monomial_like(1), p, f);
    // Column i of `a` holds x^(i p) mod f minus x^i.
    let mut a = vec![vec![0u64; n]; n];
    let mut row = f.constant_like(1);
    for i in 0..n {
        for (j, &c) in row.coeffs.iter().enumerate() {
            a[j][i] = c;
        }
        a[i][i] = (a[i][i] + p - 1) % p;
        row = (&row * &xp).rem(f).expect("nonconstant modulus");
    }
    nullspace(a, p)
        .into_iter()
        .map(|v| ModPoly::from_reduced(p, v))
        .collect()
}

/// Null space of the square matrix `a` over `F_p`, via reduced row echelon form.
fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = super::inv_mod(a[r][col], p);
        for x in a[r].iter_mut() {
            *x = crate::intarith::mul_mod(*x, inv, p);
        }
        for i in 0..n {
            if i != r && a[i][col] != 0 {
                let t = a[i][col];
                for j in 0..n {
                    let sub = crate::intarith::mul_mod(t, a[r][j], p);
                    a[i][j] = super::sub_mod(a[i][j], sub, p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = super::sub_mod(0, a[row][free], p);
        }
        basis.push(v);
    }
    basis
}

/// Deterministic splitting of a squarefree monic `f` into irreducibles.
fn berlekamp(f: &ModPoly) -> Result<Vec<ModPoly>> {
    let basis = berlekamp_basis(f);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in basis.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
        if factors.len() == r {
            break;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            // u = prod_s gcd(u, v - s) since v^p - v vanishes mod f.
            let mut rest = u;
            for s in 0..f.modulus {
                if rest.is_one() {
                    break;
                }
                let g = gcd_mod_p(&rest, &(v - &f.constant_like(s)))?;
                if !g.is_one() && g != rest {
                    rest = rest.div_exact(&g)?;
                    next.push(g);
                }
            }
            next.push(rest);
        }
        factors = next.into_iter().filter(|g| !g.is_one()).collect();
    }
    if factors.len() != r {
        return Err(Error::Internal(format!("Berlekamp split {f} into {} of {r} parts", factors.len())));
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec()).unwrap()
    }

    fn factors(f: &ModPoly) -> Vec<(Vec<u64>, u32)> {
        factor_mod_p(f).unwrap().factors.into_iter().map(|(g, e)| (g.coeffs, e)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(factors(&mp(2, &[1, 0, 1])), vec![(vec![1, 1], 2)]);
        assert_eq!(factors(&mp(5, &[1, 0, 1])), vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        assert_eq!(factors(&mp(2, &[22, 0, 22, 0, 8, 0, 1])), vec![(vec![0, 1], 6)]);
        assert_eq!(factor_mod_p(&ModPoly::zero(3).unwrap()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn constants_and_units() {
        let f = factor_mod_p(&mp(7, &[3])).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.leading_unit, 3);
        let g = factor_mod_p(&mp(7, &[1, 2, 3])).unwrap();
        assert_eq!(g.leading_unit, 3);
        assert_eq!(g.expand(), mp(7, &[1, 2, 3]));
    }

    #[test]
    fn inseparable_inputs() {
        // (x^3 + x + 1)^2 (x + 1)^3 over F_2: the derivative is not zero but
        // the decomposition needs a p-th root.
        let a = mp(2, &[1, 1, 0, 1]);
        let b = mp(2, &[1, 1]);
        let f = &a.pow(2) * &b.pow(3);
        assert_eq!(factors(&f), vec![(vec![1, 1], 3), (vec![1, 1, 0, 1], 2)]);
        // x^9 - 1 = (x - 1)^9 over F_3.
        let g = mp(3, &[2, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(factors(&g), vec![(vec![2, 1], 9)]);
    }

    #[test]
    fn cyclotomic_splitting() {
        // x^17 - x is the product of all 17 monic linears over F_17.
        let mut c = vec![0u64; 18];
        c[17] = 1;
        c[1] = 16;
        let f = factor_mod_p(&mp(17, &c)).unwrap();
        assert_eq!(f.factors.len(), 17);
        assert!(f.factors.iter().all(|(g, e)| g.degree() == Some(1) && *e == 1));
        // x^8 + 1 over F_3 splits into two quartics (3 has order 4 mod 16).
        let g = factor_mod_p(&mp(3, &[1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(g.degree_pattern(), vec![4, 4]);
    }

    #[test]
    fn seed_does_not_change_result() {
        let f = mp(101, &[7, 3, 0, 99, 5, 0, 1, 44, 1]);
        let a = factor_mod_p(&f).unwrap();
        let b = factor_mod_p_with_rng(&f, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_view() {
        let f = factor_mod_p(&mp(5, &[1, 0, 1])).unwrap();
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"modulus":5,"leading_unit":1,"factors":[["x + 2",1],["x + 3",1]]}"#
        );
    }
}
