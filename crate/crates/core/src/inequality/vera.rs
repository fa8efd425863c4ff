//! `S(p,a)·r / (r²/p^a)^{a·log₂(p)/4} <= 1` and its exceptions.
//!
//! For fixed `(p, a)` the log of the left side is affine in `ln r` with
//! slope `1 − a·log₂(p)/2`, so the exceptional cofactors form an initial
//! segment (negative slope), everything or nothing (slope >= 0).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::LabError;
use crate::arith::cp::c2;
use crate::arith::primes::{is_prime, primes_in};
use crate::arith::spa::{s_exact, s_log};
use crate::arith::{ArithError, FactoredInteger};

pub const GUARD_BAND: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VeraCase {
    pub p: u128,
    pub a: u32,
    pub r: FactoredInteger,
    pub lhs_log: f64,
    /// The inequality fails (strictly).
    pub exception: bool,
    /// Settled by exact integer comparison because `lhs_log` was in band.
    pub exact: bool,
}

impl VeraCase {
    pub fn cofactor(&self) -> u128 {
        self.r.value() / self.p.pow(self.a)
    }
}

/// `1 − a·log₂(p)/2`.
pub fn slope(p: u128, a: u32) -> f64 {
    1.0 - a as f64 * (p as f64).log2() / 2.0
}

fn lhs_from_cofactor(p: u128, a: u32, ln_cof: f64) -> f64 {
    let ln_p = (p as f64).ln();
    let ln_r = a as f64 * ln_p + ln_cof;
    let e = a as f64 * (p as f64).log2() / 4.0;
    s_log(p, a) + ln_r - e * (2.0 * ln_r - a as f64 * ln_p)
}

/// ln of the left side; `r` must contain `p` with exponent exactly `a`.
pub fn vera_lhs_log(p: u128, a: u32, r: &FactoredInteger) -> Result<f64, LabError> {
    check(p, a, r)?;
    let ln_cof = r.ln() - a as f64 * (p as f64).ln();
    Ok(lhs_from_cofactor(p, a, ln_cof))
}

fn check(p: u128, a: u32, r: &FactoredInteger) -> Result<(), LabError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p).into());
    }
    let found = r.exponent_of(p);
    if found != a || a == 0 {
        return Err(LabError::ExponentMismatch {
            p,
            r: r.value(),
            expected: a,
            found,
        });
    }
    Ok(())
}

// (S·r)^4 > (r²/2^a)^a, for p = 2 and a <= 5.
fn exact_exception_p2(a: u32, r: u128) -> bool {
    let s = s_exact(2, a).expect("a <= 5");
    let r = BigUint::from(r);
    let lhs = (s * &r).pow(4);
    let rhs = ((&r * &r) >> a as usize).pow(a);
    lhs > rhs
}

/// Evaluates and classifies one case.
///
/// Values within [`GUARD_BAND`] of zero are settled exactly when `p = 2` and
/// `a <= 5`; other in-band cases are an error.
pub fn vera_case(p: u128, a: u32, r: &FactoredInteger) -> Result<VeraCase, LabError> {
    let lhs_log = vera_lhs_log(p, a, r)?;
    let (exception, exact) = if lhs_log.abs() > GUARD_BAND {
        (lhs_log > 0.0, false)
    } else if p == 2 && a <= 5 {
        (exact_exception_p2(a, r.value()), true)
    } else {
        return Err(LabError::NeedsExactArithmetic { r: r.value() });
    };
    Ok(VeraCase {
        p,
        a,
        r: r.clone(),
        lhs_log,
        exception,
        exact,
    })
}

/// Shape of the exception set for one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ExceptionSet {
    None,
    /// Every admissible cofactor.
    All,
    /// Every admissible cofactor up to the bound.
    UpTo(u128),
}

impl ExceptionSet {
    pub fn contains(&self, p: u128, cofactor: u128) -> bool {
        cofactor >= 2
            && !cofactor.is_multiple_of(p)
            && match *self {
                ExceptionSet::None => false,
                ExceptionSet::All => true,
                ExceptionSet::UpTo(n) => cofactor <= n,
            }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeExceptions {
    pub p: u128,
    pub set: ExceptionSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixReport {
    pub a: u32,
    pub prime_cap: u128,
    pub cofactor_cap: u128,
    /// Primes `p <= prime_cap` with at least one exception.
    pub primes: Vec<PrimeExceptions>,
    /// Every exceptional case within the caps, sorted by `(p, cofactor)`.
    pub cases: Vec<VeraCase>,
}

impl AppendixReport {
    pub fn set_for(&self, p: u128) -> ExceptionSet {
        self.primes
            .iter()
            .find(|e| e.p == p)
            .map_or(ExceptionSet::None, |e| e.set.clone())
    }
}

// Above this ln p no prime has an exception for the given a: the left side
// at cofactor 2 is bounded by ln c(2) + ln 2 + x(a²/4 + a/2) − a²x²/(4 ln 2)
// (using S <= c(p)p^{a²/4} and c(p) <= c(2)), and for x >= 2 ln 2/a larger
// cofactors only lower it.
fn certified_ln_p(a: u32) -> f64 {
    let a = a as f64;
    let ln2 = std::f64::consts::LN_2;
    let qa = a * a / (4.0 * ln2);
    let qb = a * a / 4.0 + a / 2.0;
    let qc = c2().upper().ln() + ln2;
    let root = (qb + (qb * qb + 4.0 * qa * qc).sqrt()) / (2.0 * qa);
    root.max(2.0 * ln2 / a)
}

fn with_prime_power(cofactor: u128, p: u128, a: u32) -> Result<FactoredInteger, LabError> {
    let mut factors = FactoredInteger::from_value(cofactor)?.factors().to_vec();
    factors.push((p, a));
    factors.sort_unstable();
    Ok(FactoredInteger::new(factors)?)
}

/// All exceptions with `p <= prime_cap` and cofactor `2 <= r' <= cofactor_cap`
/// coprime to `p`, together with a per-prime summary valid for every
/// cofactor.
///
/// Fails with `CapTooSmall` when the caps cannot certify the summary: a
/// decreasing case still fails at the largest cofactor, or primes above
/// `prime_cap` are not provably exception-free.
pub fn appendix_exceptions(
    a: u32,
    prime_cap: u128,
    cofactor_cap: u128,
) -> Result<AppendixReport, LabError> {
    if a == 0 {
        return Err(LabError::PreconditionViolated("a must be positive".into()));
    }
    if prime_cap < 13 || cofactor_cap < 4918 {
        return Err(LabError::CapTooSmall(format!(
            "need prime_cap >= 13 and cofactor_cap >= 4918, got {prime_cap} and {cofactor_cap}"
        )));
    }
    let needed = certified_ln_p(a).exp();
    if (prime_cap as f64) < needed {
        return Err(LabError::CapTooSmall(format!(
            "primes up to {needed:.1} must be scanned for a = {a}"
        )));
    }
    let mut by_prime: BTreeMap<u128, Vec<VeraCase>> = BTreeMap::new();
    let mut primes = Vec::new();
    for p in primes_in(2, prime_cap as u64 + 1) {
        let p = p as u128;
        let mut cases = Vec::new();
        let mut last_admissible = 0;
        for cof in 2..=cofactor_cap {
            if cof % p == 0 {
                continue;
            }
            last_admissible = cof;
            let c = vera_case(p, a, &with_prime_power(cof, p, a)?)?;
            if c.exception {
                cases.push(c);
            } else if slope(p, a) < 0.0 {
                break;
            }
        }
        let k = slope(p, a);
        let set = if cases.is_empty() {
            ExceptionSet::None
        } else if k >= 0.0 {
            if cases.first().map(|c| c.cofactor()) != Some(if p == 2 { 3 } else { 2 }) {
                return Err(LabError::CapTooSmall(format!(
                    "non-decreasing case p = {p}, a = {a} has exceptions starting late"
                )));
            }
            ExceptionSet::All
        } else {
            let last = cases.last().map(|c| c.cofactor()).unwrap_or(0);
            if last == last_admissible {
                return Err(LabError::CapTooSmall(format!(
                    "p = {p}, a = {a} still fails at cofactor {last}"
                )));
            }
            ExceptionSet::UpTo(last)
        };
        if set != ExceptionSet::None {
            primes.push(PrimeExceptions { p, set });
            by_prime.insert(p, cases);
        }
    }
    Ok(AppendixReport {
        a,
        prime_cap,
        cofactor_cap,
        primes,
        cases: by_prime.into_values().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: u128) -> FactoredInteger {
        FactoredInteger::from_value(n).unwrap()
    }

    #[test]
    fn spot_values() {
        assert!(vera_lhs_log(13, 1, &f(26)).unwrap() > 0.0);
        assert!(vera_lhs_log(13, 1, &f(39)).unwrap() <= 0.0);
        assert!(vera_lhs_log(2, 3, &f(8 * 723)).unwrap() > 0.0);
        assert!(matches!(
            vera_lhs_log(2, 2, &f(8 * 3)),
            Err(LabError::ExponentMismatch { .. })
        ));
    }

    #[test]
    fn equality_case_settled_exactly() {
        // 67·1072 = 1072²/16: the left side is exactly 1
        let c = vera_case(2, 4, &f(16 * 67)).unwrap();
        assert!(c.exact);
        assert!(!c.exception);
    }

    #[test]
    fn slopes() {
        assert!(slope(2, 1) > 0.0 && slope(3, 1) > 0.0);
        assert_eq!(slope(2, 2), 0.0);
        assert!(slope(5, 1) < 0.0 && slope(2, 3) < 0.0);
    }

    #[test]
    fn cap_checks() {
        assert!(matches!(appendix_exceptions(1, 11, 5000), Err(LabError::CapTooSmall(_))));
        assert!(matches!(appendix_exceptions(1, 101, 100), Err(LabError::CapTooSmall(_))));
        assert!(matches!(appendix_exceptions(1, 13, 5000), Err(LabError::CapTooSmall(_))));
    }
}
