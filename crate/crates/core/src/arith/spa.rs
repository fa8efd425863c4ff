//! `S(p,a)`, the bound on the number of subgroups of a group of order `p^a`,
//! and its smooth majorant `𝒮(p,a) = c(p)·p^{a²/4}`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::bound::BoundValue;
use super::cp::c_cached;
use super::primes::is_prime;
use super::ArithError;

/// `S(p,a)`: exact for `a <= 5`, always available in log space.
#[derive(Debug, Clone, PartialEq)]
pub struct SValue {
    pub log: BoundValue,
    pub exact: Option<BigUint>,
}

// Coefficients, highest degree first.
const POLY: [&[u32]; 5] = [
    &[2],
    &[1, 3],
    &[2, 2, 4],
    &[1, 3, 4, 3, 5],
    &[2, 2, 6, 6, 6, 4, 6],
];

/// Exact value of the case polynomial for `1 <= a <= 5`.
pub fn s_exact(p: u128, a: u32) -> Option<BigUint> {
    let coeffs = POLY.get(a.checked_sub(1)? as usize)?;
    let p = BigUint::from(p);
    Some(
        coeffs
            .iter()
            .fold(BigUint::from(0u32), |acc, &c| acc * &p + BigUint::from(c)),
    )
}

/// `ln S(p,a)` without primality checks; `p >= 2`, `a >= 1`.
pub fn s_log(p: u128, a: u32) -> f64 {
    match POLY.get(a as usize - 1) {
        Some(coeffs) => {
            let x = p as f64;
            coeffs.iter().fold(0.0, |acc, &c| acc * x + c as f64).ln()
        }
        None => s_tilde_log(p, a),
    }
}

/// `ln 𝒮(p,a) = ln c(p) + (a²/4)·ln p`.
pub fn s_tilde_log(p: u128, a: u32) -> f64 {
    let c = c_cached(p).expect("prime checked by caller").value;
    c.ln() + (a as f64 * a as f64 / 4.0) * (p as f64).ln()
}

/// Absolute error bound on [`s_log`].
pub fn s_log_tolerance(p: u128, a: u32) -> f64 {
    if a <= 5 {
        // Horner in doubles: at most 2·deg relative roundings.
        let v = s_log(p, a).abs().max(1.0);
        16.0 * f64::EPSILON * (2 * a + 2) as f64 * v
    } else {
        s_tilde_log_tolerance(p, a)
    }
}

/// Absolute error bound on [`s_tilde_log`].
pub fn s_tilde_log_tolerance(p: u128, a: u32) -> f64 {
    let c = c_cached(p).expect("prime checked by caller");
    c.log_tolerance() + 8.0 * f64::EPSILON * s_tilde_log(p, a).abs().max(1.0)
}

/// `S(p,a)` with its exact value attached when `a <= 5`.
pub fn s_of(p: u128, a: u32) -> Result<SValue, ArithError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if a == 0 {
        return Err(ArithError::InputOutOfRange("a = 0".into()));
    }
    let exact = s_exact(p, a);
    let log = match &exact {
        Some(n) => match n.to_f64() {
            Some(x) if x.is_finite() => BoundValue::new(x.ln(), s_log_tolerance(p, a)),
            _ => BoundValue::new(s_log(p, a), s_log_tolerance(p, a)),
        },
        None => BoundValue::new(s_tilde_log(p, a), s_tilde_log_tolerance(p, a)),
    };
    Ok(SValue { log, exact })
}
