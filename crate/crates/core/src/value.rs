use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::rational::{self, Rational};

/// A result that is either exact or a floating-point approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational::to_f64(r),
            Value::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Approx(_) => None,
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}", rational::format(r)),
            Value::Approx(x) => write!(f, "{x:.12e}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        match self {
            Value::Exact(r) => {
                m.serialize_entry("exact", &rational::format(r))?;
                m.serialize_entry("decimal", &rational::to_f64(r))?;
            }
            Value::Approx(x) => m.serialize_entry("approx", x)?,
        }
        m.end()
    }
}
