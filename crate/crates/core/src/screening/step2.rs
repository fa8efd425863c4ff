use serde::Serialize;

use super::db::{SimpleGroupRecord, SimpleOrderDB, FACT2_PAIRS};
use super::step1::{step1_detail, Psl2Trigger};
use super::{ScreenError, ScreenVerdict, Stage, VerdictKind};
use crate::arith::primes::factorize;
use crate::arith::FactoredInteger;

/// A possible product of non-abelian simple sections of a group of order `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionConfig {
    pub d: u128,
    pub parts: Vec<SimpleGroupRecord>,
}

impl SectionConfig {
    /// Part names joined by `x`, e.g. `Alt(5)xPSL2(7)`.
    pub fn name(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.name.as_str())
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// Every single simple section order and every admissible pair product
/// dividing `r`, sorted by `(d, name)`.
pub fn section_divisor_set(r: &FactoredInteger, db: &SimpleOrderDB) -> Vec<SectionConfig> {
    let mut out: Vec<SectionConfig> = db
        .table2()
        .filter(|t| r.divisible_by(t.order.value()))
        .map(|t| SectionConfig {
            d: t.order.value(),
            parts: vec![t.clone()],
        })
        .collect();
    for (a, b) in FACT2_PAIRS {
        if let (Some(ta), Some(tb)) = (db.get(a), db.get(b)) {
            if let Some(d) = ta.order.value().checked_mul(tb.order.value()) {
                if r.divisible_by(d) {
                    out.push(SectionConfig {
                        d,
                        parts: vec![ta.clone(), tb.clone()],
                    });
                }
            }
        }
    }
    out.sort_by_cached_key(|c| (c.d, c.name()));
    out
}

/// The smallest prime `p >= 5` with `p | cofactor`, `p ∤ d` and `p ∤ q − 1`
/// for every prime power `q > 1` dividing `cofactor`.
///
/// Such a prime forces a normal Sylow `p`-subgroup, ruling the
/// configuration out.
pub fn normal_sylow_filter(cofactor: u128, d: u128) -> Option<u128> {
    if cofactor < 2 {
        return None;
    }
    let f = factorize(cofactor).expect("cofactor below the scan ceiling");
    let qs: Vec<u128> = f
        .factors()
        .iter()
        .flat_map(|&(p, a)| (1..=a).map(move |k| p.pow(k)))
        .collect();
    let found = f
        .primes()
        .filter(|&p| p >= 5 && !d.is_multiple_of(p))
        .find(|&p| qs.iter().all(|&q| (q - 1) % p != 0));
    found
}

/// [`normal_sylow_filter`] on `r/d`, checking that `d` divides `r`.
pub fn normal_sylow_prime(r: u128, d: u128) -> Result<Option<u128>, ScreenError> {
    if d == 0 || !r.is_multiple_of(d) {
        return Err(ScreenError::NotDivisible { r, d });
    }
    Ok(normal_sylow_filter(r / d, d))
}

/// Step 2 on an order that step 1 left Unknown.
///
/// Yes when no configuration survives the normal-Sylow filter; otherwise
/// Unknown with exactly the surviving configurations.
pub fn step2_screen(
    r: &FactoredInteger,
    db: &SimpleOrderDB,
    trigger: Psl2Trigger,
) -> Result<ScreenVerdict, ScreenError> {
    let s1 = step1_detail(r, trigger)?;
    if s1.verdict.is_yes() {
        return Err(ScreenError::PreconditionViolated(format!(
            "step 1 already returns yes for {r}"
        )));
    }
    Ok(step2_after_step1(r, db, s1.verdict))
}

pub(crate) fn step2_after_step1(
    r: &FactoredInteger,
    db: &SimpleOrderDB,
    s1: ScreenVerdict,
) -> ScreenVerdict {
    let survivors: Vec<SectionConfig> = section_divisor_set(r, db)
        .into_iter()
        .filter(|c| normal_sylow_filter(r.value() / c.d, c.d).is_none())
        .collect();
    ScreenVerdict {
        kind: if survivors.is_empty() {
            VerdictKind::Yes
        } else {
            VerdictKind::Unknown
        },
        stage: Stage::Step2,
        bound_log: s1.bound_log,
        survivors,
    }
}
