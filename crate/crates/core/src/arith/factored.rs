//! Orders carried as their prime factorisation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::primes::{factorize, is_prime};
use super::ArithError;

/// A positive integer `r = p_1^{a_1} ⋯ p_ℓ^{a_ℓ}` with `p_1 < ⋯ < p_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FactoredInteger {
    value: u128,
    factors: Vec<(u128, u32)>,
}

impl FactoredInteger {
    /// Builds from `(prime, exponent)` pairs, checking every invariant.
    pub fn new(factors: Vec<(u128, u32)>) -> Result<Self, ArithError> {
        let bad = |msg: String| Err(ArithError::InvalidFactorization(msg));
        let mut value: u128 = 1;
        for (i, &(p, a)) in factors.iter().enumerate() {
            if a == 0 {
                return bad(format!("zero exponent on {p}"));
            }
            if i > 0 && factors[i - 1].0 >= p {
                return bad("primes not strictly increasing".into());
            }
            if !is_prime(p) {
                return Err(ArithError::NotPrime(p));
            }
            for _ in 0..a {
                value = match value.checked_mul(p) {
                    Some(v) => v,
                    None => return bad("value exceeds 128 bits".into()),
                };
            }
        }
        Ok(Self { value, factors })
    }

    /// Same as [`new`](Self::new) but for small primes given as `u64`.
    pub fn from_pairs(pairs: &[(u64, u32)]) -> Result<Self, ArithError> {
        Self::new(pairs.iter().map(|&(p, a)| (p as u128, a)).collect())
    }

    /// Factorises `n`.
    pub fn from_value(n: u128) -> Result<Self, ArithError> {
        factorize(n)
    }

    /// Trusted constructor for callers that already hold a valid factorisation.
    pub(crate) fn from_parts_unchecked(value: u128, factors: Vec<(u128, u32)>) -> Self {
        debug_assert!(Self::new(factors.clone()).map(|f| f.value) == Ok(value));
        Self { value, factors }
    }

    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    /// Number of distinct primes `ℓ`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in the order (0 when `p` does not divide it).
    pub fn exponent_of(&self, p: u128) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }

    /// `ln r`, summed over the factorisation.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(p, a)| a as f64 * (p as f64).ln())
            .sum()
    }

    /// Whether `d` divides the order.
    pub fn divisible_by(&self, d: u128) -> bool {
        d != 0 && self.value.is_multiple_of(d)
    }

    /// `r · p`, for a prime `p`.
    pub fn times_prime(&self, p: u128) -> Result<Self, ArithError> {
        let mut factors = self.factors.clone();
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, a)) => *a += 1,
            None => {
                factors.push((p, 1));
                factors.sort_unstable();
            }
        }
        Self::new(factors)
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u128> {
        divisors_of(&self.factors)
    }
}

/// All positive divisors of `∏ p^a`, ascending.
pub fn divisors_of(factors: &[(u128, u32)]) -> Vec<u128> {
    let mut out = vec![1u128];
    for &(p, a) in factors {
        let len = out.len();
        let mut pk = 1u128;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

impl fmt::Display for FactoredInteger {
    /// `2^4.3^3.13`; exponent 1 is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, a)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            if a == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for FactoredInteger {
    type Err = ArithError;

    /// Accepts `p^a.p^a…` (a factorisation) or a plain integer (factorised).
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let s = s.trim();
        let perr = || ArithError::Parse(s.to_string());
        if !s.contains(['^', '.']) {
            let n: u128 = s.replace('_', "").parse().map_err(|_| perr())?;
            return factorize(n);
        }
        let mut factors = Vec::new();
        for tok in s.split('.') {
            let (p, a) = match tok.split_once('^') {
                Some((p, a)) => (p, a.parse::<u32>().map_err(|_| perr())?),
                None => (tok, 1),
            };
            factors.push((p.parse::<u128>().map_err(|_| perr())?, a));
        }
        factors.sort_unstable();
        let mut merged: Vec<(u128, u32)> = Vec::new();
        for (p, a) in factors {
            match merged.last_mut() {
                Some((q, b)) if *q == p => *b += a,
                _ => merged.push((p, a)),
            }
        }
        Self::new(merged)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let r: FactoredInteger = "2^4.3^3.13".parse().unwrap();
        assert_eq!(r.value(), 5616);
        assert_eq!(r.to_string(), "2^4.3^3.13");
        assert_eq!("5616".parse::<FactoredInteger>().unwrap(), r);
        assert_eq!("13.2^4.3^3".parse::<FactoredInteger>().unwrap(), r);
    }

    #[test]
    fn rejects_bad_factorisations() {
        assert!(FactoredInteger::from_pairs(&[(3, 1), (2, 1)]).is_err());
        assert!(FactoredInteger::from_pairs(&[(4, 1)]).is_err());
        assert!(FactoredInteger::from_pairs(&[(2, 0)]).is_err());
        assert!("2^x".parse::<FactoredInteger>().is_err());
        assert!(FactoredInteger::from_pairs(&[(2, 200)]).is_err());
    }

    #[test]
    fn divisors_of_60() {
        let r = FactoredInteger::from_value(60).unwrap();
        assert_eq!(r.divisors(), vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
    }

    #[test]
    fn times_prime_inserts_in_order() {
        let r = FactoredInteger::from_value(60).unwrap();
        assert_eq!(r.times_prime(7).unwrap().value(), 420);
        assert_eq!(r.times_prime(3).unwrap().factors(), &[(2, 2), (3, 2), (5, 1)]);
    }
}
