//! Number theory and the bound functions.

pub mod bound;
pub mod cp;
pub mod factored;
pub mod goodness;
pub mod primes;
pub mod probes;
pub mod qbinom;
pub mod spa;

use thiserror::Error;

pub use bound::{BoundValue, Boundary};
pub use factored::FactoredInteger;
pub use cp::{c_enclosure, c_of_p, CValue, DEFAULT_REL_TOL};
pub use goodness::{classify_good, f_of, ft_of, main_rhs_log, Goodness, GoodnessVerdict};
pub use primes::{factorize, is_prime};
pub use qbinom::{gaussian_binomial, subspace_count};
pub use spa::{s_log, s_of, s_tilde_log, SValue};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArithError {
    #[error("input {0} out of range")]
    InputOutOfRange(String),
    #[error("{0} is not prime")]
    NotPrime(u128),
    #[error("k = {k} out of range for n = {n}")]
    KOutOfRange { n: u32, k: u32 },
    #[error("need at least two distinct primes, got {0}")]
    TooFewPrimes(usize),
    #[error("relative tolerance {0} outside (0, 1e-10]")]
    InvalidTolerance(f64),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("cannot parse {0:?} as an order")]
    Parse(String),
}
