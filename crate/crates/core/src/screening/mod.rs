//! Screening of candidate orders `r` of a minimal counterexample.
//!
//! The pipeline is: the per-`ℓ` goodness conditions ([`lmax_filter`]), the
//! Sylow-count product bound ([`step1_screen`]) and the simple-section /
//! normal-Sylow elimination ([`step2_screen`]). [`scan_patterns`] drives the
//! first two stages over every factorisation shape inside given caps.

mod db;
mod lmax;
mod scan;
mod step1;
mod step2;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, BoundValue, Boundary};

pub use db::{SimpleGroupRecord, SimpleOrderDB, FACT2_PAIRS};
pub use lmax::{lmax_filter, Clause, CLAUSES};
pub use scan::{scan_patterns, ScanCaps, ScanEntry, ScanMode, ScanOptions, ScanReport};
pub use step1::{psl2_trigger_orders, step1_screen, step1_detail, sylow_upper, Psl2Trigger, Step1Detail};
pub use step2::{
    normal_sylow_filter, normal_sylow_prime, section_divisor_set, step2_screen, SectionConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScreenError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("index {index} out of range for {len} primes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{d} does not divide {r}")]
    NotDivisible { r: u128, d: u128 },
    #[error("enumeration exceeds the node budget of {0}")]
    CapTooLarge(u64),
    #[error("comparison inside tolerance band at r = {r}: {source}")]
    Boundary { r: u128, source: Boundary },
    #[error("bad simple-order data: {0}")]
    Data(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictKind {
    /// No counterexample has this order.
    Yes,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Stage {
    Lmax,
    Step1,
    Step2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreenVerdict {
    pub kind: VerdictKind,
    pub stage: Stage,
    /// The step-1 product bound `ln Π n_i·S(p_i,a_i)`, when computed.
    pub bound_log: Option<BoundValue>,
    pub survivors: Vec<SectionConfig>,
}

impl ScreenVerdict {
    pub fn is_yes(&self) -> bool {
        self.kind == VerdictKind::Yes
    }
}
