//! Serde adapters that put big integers on the wire as decimal strings.
//!
//! Reports never emit a [`Natural`] as a JSON number: consumers in other
//! languages would silently round anything past 2^53.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::bigmath::Natural;

pub fn serialize<S: Serializer>(n: &Natural, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&n.to_str_radix(10))
}

/// `Vec<Natural>` as an array of decimal strings.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(ns: &[Natural], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(ns.len()))?;
        for n in ns {
            seq.serialize_element(&n.to_str_radix(10))?;
        }
        seq.end()
    }
}

/// `Option<Natural>` as a decimal string or null.
pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<Natural>, ser: S) -> Result<S::Ok, S::Error> {
        match n {
            Some(v) => ser.serialize_some(&v.to_str_radix(10)),
            None => ser.serialize_none(),
        }
    }
}

/// `Vec<(Natural, u32)>` as an array of `[prime, exponent]` pairs.
pub mod pairs {
    use super::*;

    pub fn serialize<S: Serializer>(ps: &[(Natural, u32)], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(ps.len()))?;
        for (p, e) in ps {
            seq.serialize_element(&(p.to_str_radix(10), e))?;
        }
        seq.end()
    }
}
