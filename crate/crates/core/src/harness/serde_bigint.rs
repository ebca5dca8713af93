//! Serde helpers writing big integers as JSON numbers when they fit in
//! `i64` and as decimal strings otherwise.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Small(i64),
    Big(String),
}

fn to_repr(v: &BigInt) -> Repr {
    match i64::try_from(v) {
        Ok(x) => Repr::Small(x),
        Err(_) => Repr::Big(v.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Small(x) => Ok(BigInt::from(x)),
        Repr::Big(s) => BigInt::from_str(&s).map_err(|e| E::custom(format!("bad integer {s:?}: {e}"))),
    }
}

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_repr(v).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    from_repr(Repr::deserialize(d)?)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Repr>::deserialize(d)?.into_iter().map(from_repr).collect()
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<Repr>::deserialize(d)?.map(from_repr).transpose()
    }
}

pub mod option_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|v| v.iter().map(to_repr).collect::<Vec<_>>()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        Option::<Vec<Repr>>::deserialize(d)?.map(|v| v.into_iter().map(from_repr).collect()).transpose()
    }
}

pub mod points {
    use super::*;
    use crate::lattice::LatticeVector;

    pub fn serialize<S: Serializer>(v: &[LatticeVector], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|p| p.0.iter().map(to_repr).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<LatticeVector>, D::Error> {
        let raw = Vec::<Vec<Repr>>::deserialize(d)?;
        raw.into_iter()
            .map(|p| {
                if p.len() != 3 {
                    return Err(D::Error::custom(format!("expected 3 coordinates, found {}", p.len())));
                }
                let c: Vec<BigInt> = p.into_iter().map(from_repr).collect::<Result<_, _>>()?;
                Ok(LatticeVector([c[0].clone(), c[1].clone(), c[2].clone()]))
            })
            .collect()
    }
}
