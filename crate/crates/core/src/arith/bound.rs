//! Positive reals carried as natural logarithms with an absolute error bound.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Two values could not be ordered: their logs differ by at most the summed
/// tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("log difference {difference:e} within tolerance {tolerance:e}")]
pub struct Boundary {
    pub difference: f64,
    pub tolerance: f64,
}

/// `exp(log_value)`, known to within `tolerance` on the log scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub log_value: f64,
    pub tolerance: f64,
}

impl BoundValue {
    pub fn new(log_value: f64, tolerance: f64) -> Self {
        Self {
            log_value,
            tolerance,
        }
    }

    /// An exactly known positive integer (up to one rounding of its log).
    pub fn from_integer(n: u128) -> Self {
        let x = n as f64;
        Self::new(x.ln(), 4.0 * f64::EPSILON * x.ln().abs().max(1.0))
    }

    /// Orders `self` against `other`, or reports that they are too close.
    pub fn compare(&self, other: &BoundValue) -> Result<Ordering, Boundary> {
        let difference = self.log_value - other.log_value;
        let tolerance = self.tolerance + other.tolerance;
        if difference.abs() <= tolerance {
            Err(Boundary {
                difference,
                tolerance,
            })
        } else if difference < 0.0 {
            Ok(Ordering::Less)
        } else {
            Ok(Ordering::Greater)
        }
    }

    /// Product of the two values.
    pub fn mul(&self, other: &BoundValue) -> BoundValue {
        BoundValue::new(
            self.log_value + other.log_value,
            self.tolerance + other.tolerance,
        )
    }

    /// The value itself; may overflow to infinity.
    pub fn exp(&self) -> f64 {
        self.log_value.exp()
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.exp();
        if x.is_finite() && x < 1e15 {
            write!(f, "{x:.6}")
        } else {
            write!(f, "exp({:.12})", self.log_value)
        }
    }
}

/// `ln(Σ exp(x_i))` without overflow.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}
