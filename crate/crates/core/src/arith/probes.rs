//! Sampled checks that `f` and `𝚏` do not decrease under the three moves
//! used to propagate goodness: replacing a prime by a larger unused one,
//! multiplying by a fresh prime `p >= 17`, and raising an exponent.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::factored::FactoredInteger;
use super::goodness::{f_of, ft_of};
use super::primes::primes_in;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Move {
    /// Replace `p_i` by an unused prime `p > p_i`; compares `f`.
    ReplacePrime,
    /// Multiply by an unused prime `p >= 17`; compares `f`.
    FreshPrime,
    /// Multiply by an existing `p_i`; compares `𝚏`.
    RaiseExponent,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::ReplacePrime, Move::FreshPrime, Move::RaiseExponent];
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeFailure {
    pub before: FactoredInteger,
    pub after: FactoredInteger,
    pub value_before: f64,
    pub value_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub mv: Move,
    pub samples: usize,
    pub min_gain: f64,
    pub failures: Vec<ProbeFailure>,
}

const SLACK: f64 = 1e-12;

/// A random order with `p_1 = 2`, `a_1 >= 2` and `3 <= ℓ <= 8`, below `2^90`.
pub fn sample_shape(rng: &mut impl Rng, pool: &[u64]) -> FactoredInteger {
    loop {
        let ell = rng.gen_range(3..=8);
        let mut ps: Vec<u64> = pool.choose_multiple(rng, ell - 1).copied().collect();
        ps.sort_unstable();
        let mut pairs = vec![(2u64, rng.gen_range(2..=10))];
        pairs.extend(ps.into_iter().map(|p| (p, rng.gen_range(1..=6))));
        if let Ok(r) = FactoredInteger::from_pairs(&pairs) {
            if r.value() < 1 << 90 {
                return r;
            }
        }
    }
}

fn rebuild(mut pairs: Vec<(u128, u32)>) -> Option<FactoredInteger> {
    pairs.sort_unstable();
    FactoredInteger::new(pairs).ok()
}

fn apply(mv: Move, r: &FactoredInteger, rng: &mut impl Rng, big: &[u64]) -> Option<FactoredInteger> {
    let f = r.factors().to_vec();
    let used = |p: u128| f.iter().any(|&(q, _)| q == p);
    match mv {
        Move::ReplacePrime => {
            let i = rng.gen_range(0..f.len());
            let fresh: Vec<u128> = big
                .iter()
                .map(|&p| p as u128)
                .filter(|&p| p > f[i].0 && !used(p))
                .take(40)
                .collect();
            let p = *fresh.choose(rng)?;
            let mut g = f.clone();
            g[i].0 = p;
            rebuild(g)
        }
        Move::FreshPrime => {
            let fresh: Vec<u128> = big
                .iter()
                .map(|&p| p as u128)
                .filter(|&p| p >= 17 && !used(p))
                .take(60)
                .collect();
            let p = *fresh.choose(rng)?;
            let mut g = f.clone();
            g.push((p, 1));
            rebuild(g)
        }
        Move::RaiseExponent => {
            let i = rng.gen_range(0..f.len());
            let mut g = f.clone();
            g[i].1 += 1;
            rebuild(g)
        }
    }
}

/// Runs `samples` random instances of the move from a seeded generator.
pub fn monotonicity_probe(mv: Move, samples: usize, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<u64> = primes_in(3, 120);
    let big: Vec<u64> = primes_in(3, 2000);
    let eval = |r: &FactoredInteger| match mv {
        Move::RaiseExponent => ft_of(r).expect("l >= 3"),
        _ => f_of(r).expect("l >= 3"),
    };
    let mut failures = Vec::new();
    let mut min_gain = f64::INFINITY;
    let mut done = 0;
    while done < samples {
        let r = sample_shape(&mut rng, &pool);
        let Some(r2) = apply(mv, &r, &mut rng, &big) else {
            continue;
        };
        done += 1;
        let (v1, v2) = (eval(&r), eval(&r2));
        min_gain = min_gain.min(v2 - v1);
        if v2 < v1 - SLACK {
            failures.push(ProbeFailure {
                before: r,
                after: r2,
                value_before: v1,
                value_after: v2,
            });
        }
    }
    ProbeReport {
        mv,
        samples,
        min_gain,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probes_are_reproducible() {
        for mv in Move::ALL {
            assert_eq!(monotonicity_probe(mv, 50, 7), monotonicity_probe(mv, 50, 7));
        }
    }
}
