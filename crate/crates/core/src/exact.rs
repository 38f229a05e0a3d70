//! Serialization of exact rationals: integers as JSON numbers, anything else
//! as a `"p/q"` string.

use num_rational::{BigRational, Rational64};
use serde::Serializer;

pub fn serialize_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i64(r.to_integer())
    } else {
        s.collect_str(r)
    }
}

pub fn serialize_big_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}
