//! Subgroup bound for `r = 3·2^{a_1}` via 2-binomial coefficients.

use num_bigint::BigUint;
use serde::Serialize;

use super::LabError;
use crate::arith::cp::c2;
use crate::arith::qbinom::{gaussian_binomial, subspace_count};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QbinomPair {
    pub a1: u32,
    /// `c(2)·2^{a²/4}·(4 + 2^{a/2+1/4} − 2^{−a/2+1/4})`.
    pub lhs: f64,
    /// `c(2)·(3·2^a)^{log₂(3·2^a)/4}`.
    pub rhs: f64,
    /// `3·c(2)·2^{a²/4} + c(2)·(2^a − 1)·2^{(a−1)²/4} + c(2)·2^{a²/4}`.
    pub lhs_from_terms: f64,
    /// `Σ_a [a_1, a]_2 · 2^a`, the count of subgroups of order divisible by 3.
    #[serde(serialize_with = "ser_big")]
    pub divisible_by_3: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl QbinomPair {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// `Σ_a [a_1,a]_2·2^a` computed directly and via
/// `(2^{a_1} − 1)·Σ_k [a_1−1,k]_2 + Σ_k [a_1,k]_2`.
pub fn resummation_identity(a1: u32) -> (BigUint, BigUint) {
    let direct: BigUint = (0..=a1)
        .map(|a| gaussian_binomial(a1, a, 2).expect("a <= a1") << a as usize)
        .sum();
    let resummed = ((BigUint::from(1u32) << a1 as usize) - 1u32) * subspace_count(2, a1 - 1)
        + subspace_count(2, a1);
    (direct, resummed)
}

pub fn qbinom_refined_pair(a1: u32) -> Result<QbinomPair, LabError> {
    if !(3..=11).contains(&a1) {
        return Err(LabError::A1OutOfRange(a1));
    }
    let c = c2().value;
    let a = a1 as f64;
    let lhs = c * (a * a / 4.0).exp2() * (4.0 + (a / 2.0 + 0.25).exp2() - (-a / 2.0 + 0.25).exp2());
    let r = 3.0 * a.exp2();
    let rhs = c * r.powf(r.log2() / 4.0);
    let smooth = |k: f64| c * (k * k / 4.0).exp2();
    let lhs_from_terms = 3.0 * smooth(a) + (a.exp2() - 1.0) * smooth(a - 1.0) + smooth(a);
    if (lhs - lhs_from_terms).abs() > 1e-12 * lhs {
        return Err(LabError::PreconditionViolated(format!(
            "closed form {lhs} disagrees with term sum {lhs_from_terms}"
        )));
    }
    let (direct, resummed) = resummation_identity(a1);
    if direct != resummed {
        return Err(LabError::PreconditionViolated(format!(
            "resummation {resummed} differs from direct sum {direct}"
        )));
    }
    Ok(QbinomPair {
        a1,
        lhs,
        rhs,
        lhs_from_terms,
        divisible_by_3: direct,
    })
}

/// `4 + 2^{a/2+1/4} <= 2^{a/2+1/3}`, the step used for `a_1 >= 12`.
pub fn elisa1_step_holds(a1: u32) -> bool {
    let a = a1 as f64;
    4.0 + (a / 2.0 + 0.25).exp2() <= (a / 2.0 + 1.0 / 3.0).exp2()
}
