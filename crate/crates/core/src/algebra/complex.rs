use std::fmt;

use num_complex::Complex64;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// The primitive cube root of unity `e^{2 pi i / 3}`.
pub const J: C64 = C64::new(-0.5, 0.866_025_403_784_438_6);

pub fn ensure_finite(z: C64) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::DegenerateInput(format!("non-finite scalar {z}")))
    }
}

/// A point of the Riemann sphere. Infinity is explicit, never a large float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RiemannPoint {
    Finite(C64),
    Infinity,
}

impl RiemannPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        RiemannPoint::Finite(C64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RiemannPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<C64> {
        match *self {
            RiemannPoint::Finite(z) => Some(z),
            RiemannPoint::Infinity => None,
        }
    }

    /// Chordal distance on the unit sphere; bounded by 2 and well defined at infinity.
    pub fn chordal_distance(&self, other: &RiemannPoint) -> f64 {
        chordal_distance(*self, *other)
    }
}

impl From<C64> for RiemannPoint {
    fn from(z: C64) -> Self {
        RiemannPoint::Finite(z)
    }
}

impl fmt::Display for RiemannPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiemannPoint::Finite(z) => write!(f, "{z}"),
            RiemannPoint::Infinity => f.write_str("inf"),
        }
    }
}

pub fn chordal_distance(a: RiemannPoint, b: RiemannPoint) -> f64 {
    match (a, b) {
        (RiemannPoint::Infinity, RiemannPoint::Infinity) => 0.0,
        (RiemannPoint::Finite(z), RiemannPoint::Infinity)
        | (RiemannPoint::Infinity, RiemannPoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
        (RiemannPoint::Finite(z), RiemannPoint::Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
        }
    }
}

impl Serialize for RiemannPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RiemannPoint::Finite(z) => z.serialize(serializer),
            RiemannPoint::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RiemannPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PointVisitor;

        impl<'de> Visitor<'de> for PointVisitor {
            type Value = RiemannPoint;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [re, im] pair or the string \"inf\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<RiemannPoint, E> {
                if v == "inf" {
                    Ok(RiemannPoint::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: de::SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<RiemannPoint, A::Error> {
                let re: f64 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: f64 = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                if !(re.is_finite() && im.is_finite()) {
                    return Err(de::Error::custom("non-finite coordinate"));
                }
                Ok(RiemannPoint::Finite(C64::new(re, im)))
            }
        }

        deserializer.deserialize_any(PointVisitor)
    }
}
