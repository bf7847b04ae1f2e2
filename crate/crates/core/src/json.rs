//! Serialization helpers. Rationals are written as decimal strings so that
//! consumers never hit integer-width limits.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::polycore::{ExactRational, UniPoly};

/// `{"num": "...", "den": "..."}`.
pub struct RationalRepr<'a>(pub &'a ExactRational);

impl Serialize for RationalRepr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("den", &self.0.denom().to_string())?;
        m.serialize_entry("num", &self.0.numer().to_string())?;
        m.end()
    }
}

pub fn rational_str<S: Serializer>(x: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
    RationalRepr(x).serialize(s)
}

pub fn rational_list<S: Serializer>(xs: &[ExactRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&RationalRepr(x))?;
    }
    seq.end()
}

/// Polynomials serialize as their coefficient list, lowest degree first.
impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational_list(self.coeffs(), s)
    }
}

/// Canonical JSON text: object keys sorted, compact separators.
pub fn to_canonical_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    serde_json::to_string(&v)
}
