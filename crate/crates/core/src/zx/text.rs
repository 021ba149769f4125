use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::error::Error;

/// Writes `coeffs` highest degree first in the ASCII form `3*x^2 - x + 5`,
/// using `var` as the indeterminate.
pub(crate) fn write_terms<C, W>(out: &mut W, coeffs: &[C], var: &str) -> fmt::Result
where
    C: fmt::Display + Signed + Zero + One + Clone,
    W: fmt::Write,
{
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                out.write_str("-")?;
            }
        } else {
            out.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match (i, mag.is_one()) {
            (0, _) => write!(out, "{mag}")?,
            (_, true) => {}
            (_, false) => write!(out, "{mag}*")?,
        }
        match i {
            0 => {}
            1 => out.write_str(var)?,
            _ => write!(out, "{var}^{i}")?,
        }
    }
    if first {
        out.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")
    }
}

fn parse_term(term: &str, negative: bool) -> Result<(usize, BigInt), Error> {
    let bad = || Error::Parse(format!("malformed term `{term}`"));
    let (coef_part, var_part) = match term.find('x') {
        None => (term, None),
        Some(pos) => {
            let coef = term[..pos].trim();
            let coef = match coef.strip_suffix('*') {
                Some(c) => c.trim(),
                None if coef.is_empty() => coef,
                None => return Err(bad()),
            };
            (coef, Some(term[pos + 1..].trim()))
        }
    };
    let coef = if coef_part.is_empty() {
        if var_part.is_none() {
            return Err(bad());
        }
        BigInt::one()
    } else {
        coef_part.parse::<BigInt>().map_err(|_| bad())?
    };
    let degree = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let exp = rest.strip_prefix('^').ok_or_else(bad)?.trim();
            exp.parse::<usize>().map_err(|_| bad())?
        }
    };
    Ok((degree, if negative { -coef } else { coef }))
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses sums of terms `c*x^d`, `c*x`, `x^d`, `x` and integer constants.
    /// Repeated degrees are added together.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut negative = false;
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut flush = |from: usize, to: usize, neg: bool| -> Result<(), Error> {
            let term = s[from..to].trim();
            let (deg, c) = parse_term(term, neg)?;
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += c;
            Ok(())
        };
        let mut i = 0;
        // A leading sign belongs to the first term.
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
            negative = bytes[i] == b'-';
            i += 1;
            start = i;
        }
        while i < bytes.len() {
            // A sign after `^` would be a negative exponent, which is rejected
            // later by the exponent parser.
            if (bytes[i] == b'+' || bytes[i] == b'-') && !s[start..i].trim_end().ends_with('^') {
                flush(start, i, negative)?;
                negative = bytes[i] == b'-';
                start = i + 1;
            }
            i += 1;
        }
        flush(start, bytes.len(), negative)?;
        Ok(IntPoly::new(coeffs))
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;

        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = IntPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of decimal coefficient strings, constant term first")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<IntPoly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    coeffs.push(s.parse::<BigInt>().map_err(de::Error::custom)?);
                }
                Ok(IntPoly::new(coeffs))
            }
        }

        deserializer.deserialize_seq(CoeffVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn display() {
        assert_eq!(p(&[22, 0, 22, 0, 8, 0, 1]).to_string(), "x^6 + 8*x^4 + 22*x^2 + 22");
        assert_eq!(p(&[-3, -1, 0, -2]).to_string(), "-2*x^3 - x - 3");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[-7]).to_string(), "-7");
    }

    #[test]
    fn parse() {
        assert_eq!("x^6 + 8*x^4 + 22*x^2 + 22".parse::<IntPoly>().unwrap(), p(&[22, 0, 22, 0, 8, 0, 1]));
        assert_eq!("-x^2+x-1".parse::<IntPoly>().unwrap(), p(&[-1, 1, -1]));
        assert_eq!(" 3 * x ^ 2 - 3*x^2 + 0 ".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert_eq!("x + x".parse::<IntPoly>().unwrap(), p(&[0, 2]));
        for bad in ["", "x^", "2x", "x^-1", "3 +", "y", "1.5"] {
            assert!(bad.parse::<IntPoly>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_parse_agree() {
        let q = p(&[-5, 0, 13, -1, 0, 2]);
        assert_eq!(q.to_string().parse::<IntPoly>().unwrap(), q);
    }

    #[test]
    fn json_form() {
        let q = p(&[22, 0, -8, 1]);
        let js = serde_json::to_string(&q).unwrap();
        assert_eq!(js, r#"["22","0","-8","1"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&js).unwrap(), q);
        assert_eq!(serde_json::from_str::<IntPoly>("[]").unwrap(), IntPoly::zero());
        assert!(serde_json::from_str::<IntPoly>(r#"["1","z"]"#).is_err());
    }
}
