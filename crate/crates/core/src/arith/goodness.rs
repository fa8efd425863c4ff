//! The main right-hand side and the goodness functions `f` and `𝚏`.
//!
//! With `r = p_1^{a_1} ⋯ p_ℓ^{a_ℓ}`,
//!
//! ```text
//! f(r) = ln c(2)/ln r + Σ_i ( a_i ln p_i/(4 ln 2) − ln S(p_i,a_i)/ln r )
//!        − (ℓ − 1) + (ℓ − 2)·ln 2/ln r
//! ```
//!
//! and `𝚏` is the same expression with `𝒮(p,a) = c(p)·p^{a²/4}` in place of
//! `S(p,a)`.
//!
//! Error budget for `f`: every term is a quotient or product of at most three
//! correctly rounded doubles of size below 10³, so each carries an absolute
//! error below 2⁻⁴⁰; with `ℓ <= 30` the sum stays far inside 10⁻¹².

use serde::Serialize;

use super::bound::BoundValue;
use super::cp::c2;
use super::factored::FactoredInteger;
use super::spa::{s_log, s_tilde_log};
use super::ArithError;

pub const DEFAULT_GOOD_TOL: f64 = 1e-9;

/// `ln(c(2)·r^{log₂(r)/4}) = ln c(2) + (ln r)²/(4 ln 2)`.
pub fn main_rhs_log(r: &FactoredInteger) -> BoundValue {
    rhs_log_from_ln(r.ln())
}

/// [`main_rhs_log`] for a given `ln r`.
pub fn rhs_log_from_ln(ln_r: f64) -> BoundValue {
    let c = c2();
    let v = c.value.ln() + ln_r * ln_r / (4.0 * std::f64::consts::LN_2);
    BoundValue::new(v, c.log_tolerance() + 8.0 * f64::EPSILON * v.abs().max(1.0))
}

fn check_len(r: &FactoredInteger) -> Result<(), ArithError> {
    if r.len() < 2 {
        Err(ArithError::TooFewPrimes(r.len()))
    } else {
        Ok(())
    }
}

fn f_generic(r: &FactoredInteger, ln_s: impl Fn(u128, u32) -> f64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let ln_r = r.ln();
    let ell = r.len() as f64;
    let mut acc = c2().value.ln() / ln_r;
    for &(p, a) in r.factors() {
        acc += a as f64 * (p as f64).ln() / (4.0 * ln2) - ln_s(p, a) / ln_r;
    }
    acc - (ell - 1.0) + (ell - 2.0) * ln2 / ln_r
}

/// `f(r)`; requires `ℓ >= 2`.
pub fn f_of(r: &FactoredInteger) -> Result<f64, ArithError> {
    check_len(r)?;
    Ok(f_generic(r, s_log))
}

/// `𝚏(r)`; requires `ℓ >= 2`.
pub fn ft_of(r: &FactoredInteger) -> Result<f64, ArithError> {
    check_len(r)?;
    Ok(f_generic(r, s_tilde_log))
}

/// `f` from `ln r`, `Σ ln S_i` and `ℓ`, in the cleared form
/// `(ln c(2) + (ln r)²/(4 ln 2) − Σ ln S_i − (ℓ−1) ln r + (ℓ−2) ln 2) / ln r`.
pub fn f_from_parts(ln_r: f64, sum_ln_s: f64, ell: usize) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let ell = ell as f64;
    (c2().value.ln() + ln_r * ln_r / (4.0 * ln2) - sum_ln_s - (ell - 1.0) * ln_r
        + (ell - 2.0) * ln2)
        / ln_r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Goodness {
    /// `𝚏(r) > tol`, hence also `f(r) > tol`.
    TGood,
    /// `f(r) > tol`.
    Good,
    /// `|f(r)| <= tol`.
    Boundary,
    NotGood,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodnessVerdict {
    pub kind: Goodness,
    pub f_value: f64,
    pub ft_value: f64,
}

impl GoodnessVerdict {
    /// `f(r) > tol` (whether or not `𝚏` also certifies it).
    pub fn is_good(&self) -> bool {
        matches!(self.kind, Goodness::TGood | Goodness::Good)
    }
}

/// Classifies `r` by the signs of `𝚏(r)` and `f(r)`.
pub fn classify_good(r: &FactoredInteger, tol: f64) -> Result<GoodnessVerdict, ArithError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(ArithError::InvalidTolerance(tol));
    }
    let f_value = f_of(r)?;
    let ft_value = ft_of(r)?;
    let kind = if ft_value > tol {
        Goodness::TGood
    } else if f_value > tol {
        Goodness::Good
    } else if f_value >= -tol {
        Goodness::Boundary
    } else {
        Goodness::NotGood
    };
    Ok(GoodnessVerdict {
        kind,
        f_value,
        ft_value,
    })
}
