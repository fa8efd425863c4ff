//! Direct checks of `|Sub(G)| < c(2)|G|^{log₂|G|/4}` over a corpus of
//! small groups.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use subbound_core::arith::goodness::rhs_log_from_ln;
use subbound_core::report::{real, Table};
use subbound_core::BoundValue;

use crate::build::{make_group, GroupSpec};
use crate::lattice::{count_subgroups, GUARANTEED_ORDER};
use crate::table::GroupTable;
use crate::GroupError;

/// Enumeration cap used by corpus runs; `C2^9` alone has 8 283 458 subgroups.
pub const CORPUS_CAP: usize = 20_000_000;
/// Groups at least this large are enumerated one at a time to bound memory.
const HEAVY_ORDER: usize = 256;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub group: String,
    pub order: usize,
    #[serde(serialize_with = "as_string")]
    pub sub_count: BigUint,
    pub rhs_log: BoundValue,
    pub holds: bool,
    pub margin_log: f64,
    pub error: Option<String>,
}

fn as_string<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Compares `ln|Sub(g)|` with the bound at `|g|`.
pub fn verify_theorem(g: &GroupTable, cap: usize, force: bool) -> Result<CheckResult, GroupError> {
    let count = count_subgroups(g, cap, force)?;
    Ok(judge(g.name().to_string(), g.order(), BigUint::from(count)))
}

pub fn judge(group: String, order: usize, sub_count: BigUint) -> CheckResult {
    let rhs = rhs_log_from_ln((order as f64).ln());
    let lhs = BoundValue::from_integer(u128::try_from(&sub_count).unwrap_or(u128::MAX));
    let holds = matches!(lhs.compare(&rhs), Ok(std::cmp::Ordering::Less));
    CheckResult {
        group,
        order,
        margin_log: rhs.log_value - lhs.log_value,
        sub_count,
        rhs_log: rhs,
        holds,
        error: None,
    }
}

fn partitions(a: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a, a, &mut Vec::new(), &mut out);
    out
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n.is_multiple_of(p) {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// One abelian group per isomorphism type of order `n`.
pub fn abelian_groups(n: usize) -> Vec<GroupSpec> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for (p, a) in prime_factors(n) {
        let mut next = Vec::new();
        for base in &out {
            for part in partitions(a) {
                let mut v = base.clone();
                v.extend(part.iter().map(|&k| p.pow(k)));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|parts| match parts.as_slice() {
            [q] => GroupSpec::Cyclic(*q),
            _ if crate::build::invariant_factors(&parts).len() == 1 => GroupSpec::Cyclic(n),
            _ => GroupSpec::Abelian(parts),
        })
        .collect()
}

/// Non-abelian family members up to `max_order`, without the small
/// parameters that repeat other entries (`Sym(3) = Dih(3)`, `Alt(3) = C3`).
fn nonabelian_bases(max_order: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    out.extend((3..).take_while(|n| 2 * n <= max_order).map(GroupSpec::Dihedral));
    out.extend((2..).take_while(|n| 4 * n <= max_order).map(GroupSpec::Dicyclic));
    out.extend((4..=6).map(GroupSpec::Symmetric).filter(|g| g.order().unwrap() <= max_order));
    out.extend((4..=6).map(GroupSpec::Alternating).filter(|g| g.order().unwrap() <= max_order));
    out
}

/// The built-in corpus: every abelian group of order at most `max_order`,
/// the dihedral, dicyclic, symmetric and alternating families, and every
/// direct product `A x B` within the cap where `A` is non-abelian from
/// those families and `B` is a non-trivial abelian group or a later
/// non-abelian family member. Sorted by `(order, name)`.
pub fn corpus(max_order: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        out.extend(abelian_groups(n));
    }
    let bases = nonabelian_bases(max_order);
    for (i, a) in bases.iter().enumerate() {
        let na = a.order().unwrap();
        out.push(a.clone());
        for m in 2..=max_order / na {
            for b in abelian_groups(m) {
                out.push(GroupSpec::Product(Box::new(a.clone()), Box::new(b)));
            }
        }
        for b in &bases[i..] {
            if na * b.order().unwrap() <= max_order {
                out.push(GroupSpec::Product(Box::new(a.clone()), Box::new(b.clone())));
            }
        }
    }
    let mut keyed: Vec<(usize, String, GroupSpec)> = out.into_iter().map(|g| (g.order().unwrap(), g.name(), g)).collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.into_iter().map(|(_, _, g)| g).collect()
}

fn run_one(spec: &GroupSpec) -> CheckResult {
    let order = spec.order().unwrap_or(0);
    match make_group(spec).and_then(|g| verify_theorem(&g, CORPUS_CAP, false)) {
        Ok(r) => r,
        Err(e) => CheckResult {
            group: spec.name(),
            order,
            sub_count: BigUint::default(),
            rhs_log: rhs_log_from_ln((order.max(1) as f64).ln()),
            holds: false,
            margin_log: f64::NAN,
            error: Some(e.to_string()),
        },
    }
}

/// Checks every corpus group; `progress` sees each result as it finishes.
/// Light groups run in parallel, heavy ones in sequence.
pub fn corpus_run_with(
    max_order: usize,
    progress: &(dyn Fn(&CheckResult) + Sync),
) -> Result<Vec<CheckResult>, GroupError> {
    if max_order > GUARANTEED_ORDER {
        return Err(GroupError::Unsupported(max_order));
    }
    let specs = corpus(max_order);
    let (heavy, light): (Vec<_>, Vec<_>) = specs.iter().enumerate().partition(|(_, g)| g.order().unwrap() >= HEAVY_ORDER);
    let mut results: Vec<(usize, CheckResult)> = light
        .into_par_iter()
        .map(|(i, g)| {
            let r = run_one(g);
            progress(&r);
            (i, r)
        })
        .collect();
    for (i, g) in heavy {
        let r = run_one(g);
        progress(&r);
        results.push((i, r));
    }
    results.sort_by_key(|(i, _)| *i);
    Ok(results.into_iter().map(|(_, r)| r).collect())
}

pub fn corpus_run(max_order: usize) -> Result<Vec<CheckResult>, GroupError> {
    corpus_run_with(max_order, &|_| {})
}

/// Columns: name, order, sub_count, rhs, margin, holds.
pub fn results_table(results: &[CheckResult]) -> Table {
    let mut t = Table::new("subgroup counts", &["name", "order", "sub_count", "rhs", "margin", "holds"]);
    for r in results {
        t.push(vec![
            r.group.clone(),
            r.order.to_string(),
            r.sub_count.to_string(),
            r.rhs_log.to_string(),
            real(r.margin_log),
            r.holds.to_string(),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=9).map(|a| partitions(a).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn abelian_types() {
        assert_eq!(abelian_groups(16).len(), 5);
        assert_eq!(abelian_groups(72).len(), 6);
        assert_eq!(abelian_groups(30), vec![GroupSpec::Cyclic(30)]);
    }

    #[test]
    fn corpus_shape() {
        assert!(corpus(1).is_empty());
        let c = corpus(12);
        let names: Vec<String> = c.iter().map(GroupSpec::name).collect();
        assert!(names.contains(&"Alt(4)".to_string()));
        assert!(names.contains(&"Dih(3) x C2".to_string()));
        assert!(names.contains(&"Dic(3)".to_string()));
        let mut sorted = names.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn judge_cyclic_two() {
        let r = judge("C2".into(), 2, BigUint::from(2u32));
        assert!(r.holds && r.margin_log > 0.0);
    }
}
