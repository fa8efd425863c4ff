//! The four technical bounds, valid for `r >= 2000`:
//!
//! 1. `4r(r/7)^{L(r/7)} + 8r(r/14)^{L(r/14)} <= r^{L(r)}`
//! 2. `8r(r/28)^{L(r/28)} + 6r(r/21)^{L(r/21)} + 4r(r/14)^{L(r/14)} <= r^{L(r)}`
//! 3. `(2r+10)(r/10)^{L(r/10)} + (r/5+5)(r/5)^{L(r/5)} <= r^{L(r)}`
//! 4. `2p(r/p)^{L(r/p)} <= r^{L(r)}` for primes `p >= 3` with `r >= 2p`
//!
//! where `x^{L(x)} = x^{log₂(x)/4} = 2^{(log₂ x)²/4}`.

use super::LabError;
use crate::arith::bound::log_sum_exp;
use crate::arith::is_prime;

// ln(coef · base^{log₂(base)/4}) with everything in natural logs
fn term(ln_coef: f64, ln_base: f64) -> f64 {
    ln_coef + ln_base * ln_base / (4.0 * std::f64::consts::LN_2)
}

/// `ln(right side) − ln(left side)` for the given part; positive when the
/// bound holds.
pub fn technical_margin(part: u8, r: u128, p: Option<u128>) -> Result<f64, LabError> {
    if r < 2000 {
        return Err(LabError::PreconditionViolated(format!("r = {r} < 2000")));
    }
    let x = r as f64;
    let lr = x.ln();
    let ln = |v: f64| v.ln();
    let lhs = match part {
        1 => log_sum_exp(&[
            term(ln(4.0 * x), lr - ln(7.0)),
            term(ln(8.0 * x), lr - ln(14.0)),
        ]),
        2 => log_sum_exp(&[
            term(ln(8.0 * x), lr - ln(28.0)),
            term(ln(6.0 * x), lr - ln(21.0)),
            term(ln(4.0 * x), lr - ln(14.0)),
        ]),
        3 => log_sum_exp(&[
            term(ln(2.0 * x + 10.0), lr - ln(10.0)),
            term(ln(x / 5.0 + 5.0), lr - ln(5.0)),
        ]),
        4 => {
            let p = p.ok_or_else(|| LabError::PreconditionViolated("part 4 needs p".into()))?;
            if p < 3 || !is_prime(p) {
                return Err(LabError::PreconditionViolated(format!("{p} is not an odd prime")));
            }
            if r < 2 * p {
                return Err(LabError::PreconditionViolated(format!("r = {r} < 2p")));
            }
            let lp = (p as f64).ln();
            term(ln(2.0) + lp, lr - lp)
        }
        _ => {
            return Err(LabError::PreconditionViolated(format!(
                "part {part} not in 1..=4"
            )))
        }
    };
    Ok(term(0.0, lr) - lhs)
}

/// Whether the part's inequality holds at `r`.
pub fn technical_check(part: u8, r: u128, p: Option<u128>) -> Result<bool, LabError> {
    technical_margin(part, r, p).map(|m| m >= 0.0)
}

/// The sufficient thresholds on `log₂ r` for parts 1–3.
pub fn technical_thresholds() -> [f64; 3] {
    let l5 = 5f64.log2();
    let l7 = 7f64.log2();
    let l14 = 14f64.log2();
    let l18 = 18f64.log2();
    [
        (l5 + l7 * l7 / 4.0) / (l7 / 2.0 - 1.0),
        (l18 + l14 * l14 / 4.0) / (l14 / 2.0 - 1.0),
        (-1.0 + l5 * l5 / 4.0) / (-1.0 + l5 / 2.0),
    ]
}
