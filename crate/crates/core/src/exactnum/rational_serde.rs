//! Serde helpers writing `BigRational` as a `"a/b"` string.

use std::str::FromStr;

use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serializer};

pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let t = String::deserialize(d)?;
    BigRational::from_str(t.trim()).map_err(|_| de::Error::custom(format!("not a rational: {t:?}")))
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| BigRational::from_str(t.trim()).map_err(|_| de::Error::custom(format!("not a rational: {t:?}"))))
            .collect()
    }
}
