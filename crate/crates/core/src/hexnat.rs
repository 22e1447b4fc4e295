//! `0x`-prefixed lowercase hexadecimal encoding of naturals, used by every
//! file format and transcript.

use num_bigint::BigUint;
use num_traits::Num;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub fn to_hex(n: &BigUint) -> String {
    format!("0x{}", n.to_str_radix(16))
}

/// Parses `0x..` hexadecimal or plain decimal.
pub fn parse(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let parsed = if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        BigUint::from_str_radix(hex, 16)
    } else {
        BigUint::from_str_radix(s, 10)
    };
    parsed.map_err(|_| Error::InvalidArgument(format!("not a natural number: {s:?}")))
}

/// Strict variant that only accepts the `0x` form.
pub fn from_hex(s: &str) -> Result<BigUint> {
    let hex = s
        .strip_prefix("0x")
        .ok_or_else(|| Error::InvalidArgument(format!("missing 0x prefix: {s:?}")))?;
    BigUint::from_str_radix(hex, 16)
        .map_err(|_| Error::InvalidArgument(format!("bad hexadecimal: {s:?}")))
}

pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_hex(n))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
    let s = String::deserialize(d)?;
    from_hex(&s).map_err(serde::de::Error::custom)
}
