use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A positive rate threshold that may be `+inf`.
///
/// Threshold formulas of the form `1 / D` become `Infinite` when `D <= 0`:
/// the underlying strict inequality `1/beta > D` then holds for every
/// positive `beta`, so the bound never binds. Finite values above one are
/// kept as they are; callers check [`ExtendedRate::within_unit`] to tell
/// "needs beta > 1" apart from "never binds".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedRate {
    Finite(f64),
    Infinite,
}

impl ExtendedRate {
    /// `1 / denominator`, mapping a nonpositive denominator to `+inf`.
    pub fn reciprocal(denominator: f64) -> Self {
        if denominator > 0.0 {
            ExtendedRate::Finite(1.0 / denominator)
        } else {
            ExtendedRate::Infinite
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedRate::Finite(v) => Some(v),
            ExtendedRate::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedRate::Infinite)
    }

    /// Finite and inside the probability domain `(0, 1]`.
    pub fn within_unit(self) -> bool {
        matches!(self, ExtendedRate::Finite(v) if v <= 1.0)
    }

    pub fn as_f64(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }

    /// `beta < self`
    pub fn exceeds(self, beta: f64) -> bool {
        match self {
            ExtendedRate::Finite(v) => beta < v,
            ExtendedRate::Infinite => true,
        }
    }

    /// Machine-readable tag used in tables: `nonpositive_denominator` for
    /// `+inf`, `above_one` for finite values outside `(0, 1]`.
    pub fn reason(self) -> &'static str {
        match self {
            ExtendedRate::Infinite => "nonpositive_denominator",
            ExtendedRate::Finite(v) if v > 1.0 => "above_one",
            ExtendedRate::Finite(_) => "",
        }
    }
}

impl PartialOrd for ExtendedRate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for ExtendedRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRate::Finite(v) => write!(f, "{v}"),
            ExtendedRate::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedRate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedRate::Finite(v) => serializer.serialize_f64(*v),
            ExtendedRate::Infinite => serializer.serialize_str("inf"),
        }
    }
}
