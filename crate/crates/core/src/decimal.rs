//! Serde helpers writing big integers as decimal strings.

use std::fmt::Display;

use serde::ser::{SerializeSeq, Serializer};

pub(crate) fn string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn opt_string<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// `[(value, exponent), ...]` as `[["value", exponent], ...]`.
pub(crate) fn powers<T: Display, S: Serializer>(v: &[(T, u32)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (base, e) in v {
        seq.serialize_element(&(base.to_string(), e))?;
    }
    seq.end()
}
