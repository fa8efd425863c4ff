use serde::Serialize;

use super::ScreenError;
use crate::arith::FactoredInteger;

/// One of the goodness conditions, indexed 1 to 10.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub id: u8,
    pub ell: usize,
    /// `p_ℓ >= prime_bound` suffices.
    pub prime_bound: u64,
    /// `a_i >= exp_bound` for some `i >= 2` suffices.
    pub exp_bound: u32,
    /// `a_1 >= a1_bound` suffices.
    pub a1_bound: u32,
}

/// Clauses (2)–(10), for `ℓ = 4..=12`; clause (1) is `ℓ >= 13`.
pub const CLAUSES: [Clause; 9] = [
    Clause { id: 2, ell: 4, prime_bound: 79, exp_bound: 5, a1_bound: 28 },
    Clause { id: 3, ell: 5, prime_bound: 173, exp_bound: 5, a1_bound: 15 },
    Clause { id: 4, ell: 6, prime_bound: 251, exp_bound: 5, a1_bound: 12 },
    Clause { id: 5, ell: 7, prime_bound: 307, exp_bound: 5, a1_bound: 10 },
    Clause { id: 6, ell: 8, prime_bound: 277, exp_bound: 5, a1_bound: 9 },
    Clause { id: 7, ell: 9, prime_bound: 233, exp_bound: 4, a1_bound: 7 },
    Clause { id: 8, ell: 10, prime_bound: 163, exp_bound: 3, a1_bound: 6 },
    Clause { id: 9, ell: 11, prime_bound: 89, exp_bound: 3, a1_bound: 4 },
    Clause { id: 10, ell: 12, prime_bound: 47, exp_bound: 2, a1_bound: 3 },
];

impl Clause {
    pub fn for_ell(ell: usize) -> Option<&'static Clause> {
        CLAUSES.iter().find(|c| c.ell == ell)
    }
}

pub(crate) fn check_shape(r: &FactoredInteger, min_ell: usize) -> Result<(), ScreenError> {
    let f = r.factors();
    if f.len() < min_ell {
        return Err(ScreenError::PreconditionViolated(format!(
            "{r} has fewer than {min_ell} distinct primes"
        )));
    }
    if f[0].0 != 2 || f[0].1 < 2 {
        return Err(ScreenError::PreconditionViolated(format!(
            "{r} is not divisible by 4"
        )));
    }
    Ok(())
}

/// The first goodness clause `r` satisfies, if any.
///
/// Requires `p_1 = 2`, `a_1 >= 2` and `ℓ >= 3`.
pub fn lmax_filter(r: &FactoredInteger) -> Result<Option<u8>, ScreenError> {
    check_shape(r, 3)?;
    let ell = r.len();
    if ell >= 13 {
        return Ok(Some(1));
    }
    let Some(c) = Clause::for_ell(ell) else {
        return Ok(None);
    };
    let f = r.factors();
    let hit = f[ell - 1].0 >= c.prime_bound as u128
        || f[1..].iter().any(|&(_, a)| a >= c.exp_bound)
        || f[0].1 >= c.a1_bound;
    Ok(hit.then_some(c.id))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> FactoredInteger {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(lmax_filter(&r("2^2.3.5.7.11.13.17.19.23.29.31.37.41")), Ok(Some(1)));
        assert_eq!(lmax_filter(&r("2^2.3.5.79")), Ok(Some(2)));
        assert_eq!(lmax_filter(&r("420")), Ok(None));
        assert_eq!(lmax_filter(&r("2^28.3.5.7")), Ok(Some(2)));
        assert_eq!(lmax_filter(&r("2^2.3.5^5.7")), Ok(Some(2)));
        assert_eq!(lmax_filter(&r("2^2.3.5")), Ok(None));
    }

    #[test]
    fn preconditions() {
        assert!(lmax_filter(&r("2.3.5.7")).is_err());
        assert!(lmax_filter(&r("3^2.5.7")).is_err());
        assert!(lmax_filter(&r("2^2.3")).is_err());
    }
}
