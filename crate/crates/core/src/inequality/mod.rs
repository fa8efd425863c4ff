//! Standalone inequalities: exception lists for the single-prime bound,
//! the four technical bounds, the solvable recursion, the q-binomial
//! refinement for `r = 3·2^a` and weighted class-size bounds.

mod elisa;
mod solvable;
mod technical;
mod vera;
mod weighted;

use thiserror::Error;

use crate::arith::ArithError;

pub use elisa::{elisa1_step_holds, qbinom_refined_pair, resummation_identity, QbinomPair};
pub use solvable::{ln_biguint, solvable_recursive_bound, SolvableBound};
pub use technical::{technical_check, technical_margin, technical_thresholds};
pub use vera::{
    appendix_exceptions, slope, vera_case, vera_lhs_log, AppendixReport, ExceptionSet,
    PrimeExceptions, VeraCase, GUARD_BAND,
};
pub use weighted::{
    psl2_section_terms, section5_terms, weighted_margin, weighted_power_bound, Section5Case,
    SectionGroup, WeightedTerm,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("{p}-exponent of {r} is {found}, expected {expected}")]
    ExponentMismatch {
        p: u128,
        r: u128,
        expected: u32,
        found: u32,
    },
    #[error("caps too small to certify: {0}")]
    CapTooSmall(String),
    #[error("a1 = {0} outside 3..=11")]
    A1OutOfRange(u32),
    #[error("no terms given")]
    EmptyTerms,
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("comparison for r = {r} lies inside the guard band and cannot be settled exactly")]
    NeedsExactArithmetic { r: u128 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
