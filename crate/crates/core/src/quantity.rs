use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real-valued result that may fail to exist, e.g. the mean of a
/// distribution whose tail is too heavy.
///
/// Serialized as a JSON number or `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Value(f64),
    NonExistent,
}

impl Quantity {
    pub fn value(self) -> Option<f64> {
        match self {
            Quantity::Value(v) => Some(v),
            Quantity::NonExistent => None,
        }
    }

    pub fn exists(self) -> bool {
        matches!(self, Quantity::Value(_))
    }

    /// Panics when the quantity does not exist.
    pub fn unwrap(self) -> f64 {
        self.value().expect("quantity does not exist")
    }

    pub fn map(self, f: impl FnOnce(f64) -> f64) -> Quantity {
        match self {
            Quantity::Value(v) => Quantity::Value(f(v)),
            Quantity::NonExistent => Quantity::NonExistent,
        }
    }
}

impl From<Option<f64>> for Quantity {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Quantity::NonExistent, Quantity::Value)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Value(v) => match f.precision() {
                Some(p) => write!(f, "{v:.p$}"),
                None => write!(f, "{v}"),
            },
            Quantity::NonExistent => f.write_str("N.A."),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Option::<f64>::deserialize(d).map(Quantity::from)
    }
}
