//! Serialization helpers: rationals as `"p/q"` strings, polynomials in
//! canonical text form.

use serde::Serializer;

use crate::poly::Poly;
use crate::Rational;

pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational_string))
}

pub fn ser_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn ser_opt_poly<S: Serializer>(p: &Option<Poly>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}
