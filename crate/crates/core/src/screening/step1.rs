use serde::Serialize;

use super::lmax::check_shape;
use super::{ScreenError, ScreenVerdict, Stage, VerdictKind};
use crate::arith::bound::BoundValue;
use crate::arith::factored::divisors_of;
use crate::arith::goodness::main_rhs_log;
use crate::arith::spa::{s_log, s_log_tolerance};
use crate::arith::FactoredInteger;

/// Which orders `|PSL₂(3^{3^f})|` relax the Sylow 3-count to `n <= m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Psl2Trigger {
    /// `f >= 1`: the simple groups `PSL₂(27)`, `PSL₂(3⁹)`, …
    #[default]
    AGeOne,
    /// `f >= 0`: additionally `|PSL₂(3)| = 12`.
    FGeZero,
}

/// The orders `q(q²−1)/2`, `q = 3^{3^f}`, that fit in 128 bits.
pub fn psl2_trigger_orders(trigger: Psl2Trigger) -> Vec<u128> {
    let mut out = Vec::new();
    let mut q: u128 = 3;
    loop {
        if q != 3 || trigger == Psl2Trigger::FGeZero {
            let order = q
                .checked_mul(q)
                .and_then(|q2| q.checked_mul(q2 - 1))
                .map(|x| x / 2);
            match order {
                Some(o) => out.push(o),
                None => break,
            }
        }
        match q.checked_pow(3) {
            Some(next) => q = next,
            None => break,
        }
    }
    out
}

fn triggered(r: &FactoredInteger, trigger: Psl2Trigger) -> bool {
    psl2_trigger_orders(trigger)
        .into_iter()
        .any(|t| r.divisible_by(t))
}

/// Upper bound on the number of Sylow `p_i`-subgroups (`i` is 0-based).
///
/// For `p_i = 2` this is `r/2^{a_1}`. Otherwise it is the largest divisor `n`
/// of `m = r/p_i^{a_i}` with `n ≡ 1 (mod p_i)` and `n < m`, relaxed to
/// `n <= m` when `p_i = 3` and a `PSL₂(3^{3^f})` order divides `r`.
pub fn sylow_upper(r: &FactoredInteger, i: usize, trigger: Psl2Trigger) -> Result<u128, ScreenError> {
    check_shape(r, 1)?;
    let f = r.factors();
    if i >= f.len() {
        return Err(ScreenError::IndexOutOfRange { index: i, len: f.len() });
    }
    Ok(sylow_upper_unchecked(r, i, trigger))
}

fn sylow_upper_unchecked(r: &FactoredInteger, i: usize, trigger: Psl2Trigger) -> u128 {
    let f = r.factors();
    let (p, a) = f[i];
    let m = r.value() / p.pow(a);
    if p == 2 {
        return m;
    }
    let allow_m = p == 3 && triggered(r, trigger);
    let rest: Vec<(u128, u32)> = f.iter().copied().filter(|&(q, _)| q != p).collect();
    divisors_of(&rest)
        .into_iter()
        .rev()
        .find(|&n| n % p == 1 && (n < m || (allow_m && n == m)))
        .unwrap_or(1)
}

/// Per-prime data behind a step-1 verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Step1Detail {
    pub n: Vec<u128>,
    pub bound_log: BoundValue,
    pub rhs_log: BoundValue,
    pub verdict: ScreenVerdict,
}

/// Step 1 with the intermediate Sylow counts.
pub fn step1_detail(r: &FactoredInteger, trigger: Psl2Trigger) -> Result<Step1Detail, ScreenError> {
    check_shape(r, 4)?;
    if let Some(id) = super::lmax_filter(r)? {
        return Err(ScreenError::PreconditionViolated(format!(
            "{r} already satisfies goodness clause ({id})"
        )));
    }
    let n: Vec<u128> = (0..r.len())
        .map(|i| sylow_upper_unchecked(r, i, trigger))
        .collect();
    let mut log = 0.0;
    let mut tol = 0.0;
    for (&(p, a), &ni) in r.factors().iter().zip(&n) {
        let bn = BoundValue::from_integer(ni);
        log += bn.log_value + s_log(p, a);
        tol += bn.tolerance + s_log_tolerance(p, a);
    }
    let bound_log = BoundValue::new(log, tol);
    let rhs_log = main_rhs_log(r);
    let yes = if n.contains(&1) {
        true
    } else {
        match bound_log.compare(&rhs_log) {
            Ok(ord) => ord.is_lt(),
            Err(b) => {
                return Err(ScreenError::Boundary {
                    r: r.value(),
                    source: b,
                })
            }
        }
    };
    let verdict = ScreenVerdict {
        kind: if yes { VerdictKind::Yes } else { VerdictKind::Unknown },
        stage: Stage::Step1,
        bound_log: Some(bound_log),
        survivors: Vec::new(),
    };
    Ok(Step1Detail {
        n,
        bound_log,
        rhs_log,
        verdict,
    })
}

/// Yes when some `n_i = 1` or `Π n_i·S(p_i,a_i) < c(2)·r^{log₂(r)/4}`.
///
/// Requires `p_1 = 2`, `a_1 >= 2`, `ℓ >= 4` and no goodness clause applying.
pub fn step1_screen(r: &FactoredInteger, trigger: Psl2Trigger) -> Result<ScreenVerdict, ScreenError> {
    step1_detail(r, trigger).map(|d| d.verdict)
}
