//! Small finite groups as Cayley tables, complete subgroup lattices, and
//! direct checks of `|Sub(G)| < c(2)|G|^{log₂|G|/4}`.

pub mod build;
pub mod check;
pub mod lattice;
pub mod perm;
pub mod table;

use thiserror::Error;

pub use build::{direct_product, make_group, GroupSpec};
pub use check::{corpus, corpus_run, corpus_run_with, verify_theorem, CheckResult};
pub use lattice::{brute_subset_oracle, count_subgroups, enumerate_subgroups, is_solvable, Subgroup, SubgroupList};
pub use perm::{parse_cycles, Perm};
pub use table::GroupTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group table: {0}")]
    NotClosed(String),
    #[error("group of order {0} is too large to construct")]
    TooLarge(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("more than {0} subgroups; enumeration aborted")]
    CapExceeded(usize),
    #[error("order {0} exceeds 512; pass force to enumerate anyway")]
    Unsupported(usize),
    #[error("order {0} is too large for the subset oracle")]
    TooLargeForOracle(usize),
    #[error("cannot read group file: {0}")]
    Io(String),
    #[error("cannot parse group: {0}")]
    Parse(String),
}
