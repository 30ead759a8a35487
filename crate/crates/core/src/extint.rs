//! Integers extended with a maximal element `+∞`.
//!
//! Statistics of a quasi-crystal take values in `Z ∪ {+∞}` where `m < +∞`
//! for every integer `m` and addition saturates: `m + (+∞) = (+∞) + m = +∞`.

use std::fmt;
use std::ops::{Add, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z ∪ {+∞}`.
///
/// The derived ordering places every `Finite` value below `PlusInf` and
/// orders finite values as integers.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ExtInt {
    Finite(i64),
    PlusInf,
}

impl ExtInt {
    pub const ZERO: ExtInt = ExtInt::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtInt::PlusInf)
    }

    /// Strictly positive, with `+∞ > 0`.
    pub fn is_positive(self) -> bool {
        self > ExtInt::ZERO
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            ExtInt::PlusInf => None,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a + b),
            _ => ExtInt::PlusInf,
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: i64) -> ExtInt {
        self + ExtInt::Finite(rhs)
    }
}

impl Sub<i64> for ExtInt {
    type Output = ExtInt;

    fn sub(self, rhs: i64) -> ExtInt {
        self + ExtInt::Finite(-rhs)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PlusInf => write!(f, "+inf"),
        }
    }
}

// JSON encoding: finite values as numbers, `+∞` as the string "+inf".
impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => serializer.serialize_i64(*v),
            ExtInt::PlusInf => serializer.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(v) => Ok(ExtInt::Finite(v)),
            Repr::Str(s) if s == "+inf" => Ok(ExtInt::PlusInf),
            Repr::Str(s) => Err(D::Error::custom(format!(
                "expected an integer or \"+inf\", got {s:?}"
            ))),
        }
    }
}
