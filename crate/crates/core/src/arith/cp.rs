//! The constant `c(p) = ∏_{i≥1} 1/(1−p^{−i}) · (−1 + 2·Σ_{k≥0} p^{−k²})`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use super::primes::is_prime;
use super::ArithError;

pub const DEFAULT_REL_TOL: f64 = 1e-15;

/// Midpoint of a certified enclosure of `c(p)` and its half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CValue {
    pub value: f64,
    pub tolerance: f64,
}

impl CValue {
    pub fn lower(&self) -> f64 {
        self.value - self.tolerance
    }

    pub fn upper(&self) -> f64 {
        self.value + self.tolerance
    }

    /// Tolerance on `ln c(p)`.
    pub fn log_tolerance(&self) -> f64 {
        self.tolerance / self.value + 4.0 * f64::EPSILON
    }
}

/// Evaluates `c(p)` by truncating both series.
///
/// Truncation stops once the next factor (resp. term) moves the running value
/// by less than `rel_tol` relatively. The truncated values are lower bounds;
/// the upper end adds ten times the last increments, which dominates the
/// geometric tails.
pub fn c_enclosure(p: u128, rel_tol: f64) -> Result<CValue, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if !(rel_tol > 0.0 && rel_tol <= 1e-10) {
        return Err(ArithError::InvalidTolerance(rel_tol));
    }
    let q = 1.0 / p as f64;

    let mut prod = 1.0f64;
    let mut qi = 1.0f64;
    let mut prod_inc;
    loop {
        qi *= q;
        let next = prod / (1.0 - qi);
        prod_inc = next - prod;
        prod = next;
        if prod_inc <= rel_tol * prod {
            break;
        }
    }

    let mut sum = 1.0f64;
    let mut k = 1u32;
    let mut sum_inc;
    loop {
        sum_inc = q.powi((k * k) as i32);
        sum += sum_inc;
        k += 1;
        if sum_inc <= rel_tol * sum {
            break;
        }
    }

    let lower = prod * (2.0 * sum - 1.0);
    let upper = (prod + 10.0 * prod_inc) * (2.0 * (sum + 10.0 * sum_inc) - 1.0);
    let rounding = 64.0 * f64::EPSILON * upper;
    Ok(CValue {
        value: 0.5 * (lower + upper),
        tolerance: 0.5 * (upper - lower) + rounding,
    })
}

/// `c(p)` as a plain number (midpoint of [`c_enclosure`]).
pub fn c_of_p(p: u128, rel_tol: f64) -> Result<f64, ArithError> {
    c_enclosure(p, rel_tol).map(|c| c.value)
}

fn cache() -> &'static RwLock<HashMap<u128, CValue>> {
    static CACHE: OnceLock<RwLock<HashMap<u128, CValue>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoised [`c_enclosure`] at [`DEFAULT_REL_TOL`].
pub fn c_cached(p: u128) -> Result<CValue, ArithError> {
    if let Some(c) = cache().read().expect("c(p) cache poisoned").get(&p) {
        return Ok(*c);
    }
    let c = c_enclosure(p, DEFAULT_REL_TOL)?;
    cache().write().expect("c(p) cache poisoned").insert(p, c);
    Ok(c)
}

/// `c(2)`, the constant of the main bound.
pub fn c2() -> CValue {
    static C2: OnceLock<CValue> = OnceLock::new();
    *C2.get_or_init(|| c_enclosure(2, DEFAULT_REL_TOL).expect("2 is prime"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_value() {
        let c = c2();
        assert!((c.value - 7.37197).abs() < 1e-5);
        assert!(c.tolerance < 1e-12);
    }

    #[test]
    fn enclosure_contains_deep_truncation() {
        // 200 factors and 30 terms are far past double precision.
        for p in [2u32, 3, 5, 7, 101] {
            let q = 1.0 / p as f64;
            let prod: f64 = (1..200).map(|i| 1.0 / (1.0 - q.powi(i))).product();
            let sum: f64 = (0..30).map(|k| q.powi(k * k)).sum();
            let deep = prod * (2.0 * sum - 1.0);
            let c = c_enclosure(p as u128, 1e-12).unwrap();
            assert!(c.lower() <= deep + 1e-13 && deep <= c.upper() + 1e-13, "p={p}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(c_of_p(4, 1e-12), Err(ArithError::NotPrime(4)));
        assert!(c_of_p(2, 0.0).is_err());
        assert!(c_of_p(2, 1e-9).is_err());
    }
}
