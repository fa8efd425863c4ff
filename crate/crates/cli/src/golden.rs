//! Comparisons of recomputed values against the bundled golden files.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subbound_core::arith::{f_of, ft_of, is_prime, FactoredInteger};
use subbound_core::data::{self, GoldenCofactors, SpotKind};
use subbound_core::inequality::{
    appendix_exceptions, elisa1_step_holds, qbinom_refined_pair, resummation_identity, technical_margin,
    technical_thresholds, ExceptionSet, LabError,
};
use subbound_core::report::{real, Table};
use subbound_core::screening::ScanReport;

pub const PRINTED_THRESHOLDS: [f64; 3] = [10.63, 8.62, 2.16];
pub const THRESHOLD_TOL: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct Comparison {
    pub name: String,
    pub pass: bool,
    pub summary: String,
    pub table: Table,
}

impl Comparison {
    fn new(name: &str, pass: bool, summary: String, table: Table) -> Self {
        Comparison {
            name: name.to_string(),
            pass,
            summary,
            table,
        }
    }
}

/// Printed lower bounds on `f` and `𝚏`, each required to hold strictly.
pub fn spot_values() -> Comparison {
    let mut t = Table::new("spot values", &["function", "r", "value", "printed_lower", "holds"]);
    let mut bad = 0;
    for s in data::spot_values() {
        let r: FactoredInteger = s.r.parse().expect("golden order");
        let (name, v) = match s.kind {
            SpotKind::F => ("f", f_of(&r)),
            SpotKind::Ft => ("ft", ft_of(&r)),
        };
        let v = v.expect("golden orders have at least two primes");
        let ok = v > s.lower;
        bad += usize::from(!ok);
        t.push([name.to_string(), s.r.clone(), real(v), s.lower.to_string(), ok.to_string()]);
    }
    let n = t.len();
    Comparison::new("spot values", bad == 0, format!("{} of {n} printed bounds hold", n - bad), t)
}

/// Step-1 unknowns against the printed column for the same `ℓ`. The
/// columns for four and five primes and the empty ones for eleven and
/// twelve must match exactly; the columns for eight to ten are compared by
/// containment. Returns `None` when nothing is printed for `ℓ`.
pub fn table1(report: &ScanReport) -> Option<Comparison> {
    let ell = report.caps.ell;
    let exact = match ell {
        4 | 5 | 11 | 12 => true,
        8..=10 => false,
        _ => return None,
    };
    let got: BTreeSet<u128> = report.unknown_values().into_iter().collect();
    let printed: BTreeSet<u128> = data::table1(ell).into_iter().collect();
    let mut t = Table::new(&format!("table 1, {ell} primes"), &["r", "computed", "printed"]);
    for r in got.union(&printed) {
        t.push([r.to_string(), got.contains(r).to_string(), printed.contains(r).to_string()]);
    }
    let missing = printed.difference(&got).count();
    let extra = got.difference(&printed).count();
    let pass = missing == 0 && (!exact || extra == 0);
    let mode = if exact { "set equality" } else { "containment" };
    Some(Comparison::new(
        &format!("table1 ell={ell}"),
        pass,
        format!("{mode}: {} computed, {} printed, {missing} missing, {extra} extra", got.len(), printed.len()),
        t,
    ))
}

pub type Survivor = (u128, String, u128);

/// `(r, sections, r/d)` for every surviving configuration; step 2 must
/// already have been applied.
pub fn survivors(reports: &[&ScanReport]) -> BTreeSet<Survivor> {
    let mut out = BTreeSet::new();
    for rep in reports {
        for e in &rep.entries {
            for c in e.step2.iter().flat_map(|v| &v.survivors) {
                out.insert((e.r.value(), c.name(), e.r.value() / c.d));
            }
        }
    }
    out
}

/// Step-2 survivors for the given `ℓ` against the printed rows, as sets.
pub fn tables3_5(reports: &[&ScanReport]) -> Comparison {
    let ells: BTreeSet<usize> = reports.iter().map(|r| r.caps.ell).collect();
    let got = survivors(reports);
    let printed: BTreeSet<Survivor> = data::tables3_5()
        .into_iter()
        .filter(|r| ells.contains(&r.ell))
        .map(|r| (r.r, r.sections, r.cofactor))
        .collect();
    let mut t = Table::new("tables 3-5", &["r", "sections", "cofactor", "computed", "printed"]);
    for s in got.union(&printed) {
        t.push([
            s.0.to_string(),
            s.1.clone(),
            s.2.to_string(),
            got.contains(s).to_string(),
            printed.contains(s).to_string(),
        ]);
    }
    let missing = printed.difference(&got).count();
    let extra = got.difference(&printed).count();
    Comparison::new(
        "tables3_5",
        missing == 0 && extra == 0,
        format!("{} computed, {} printed, {missing} missing, {extra} extra", got.len(), printed.len()),
        t,
    )
}

fn show_set(s: &ExceptionSet) -> String {
    match s {
        ExceptionSet::None => "none".into(),
        ExceptionSet::All => "all".into(),
        ExceptionSet::UpTo(n) => format!("<={n}"),
    }
}

fn show_golden(c: &GoldenCofactors) -> String {
    match c {
        GoldenCofactors::All => "all".into(),
        GoldenCofactors::UpTo(n) => format!("<={n}"),
        GoldenCofactors::Values(v) => v.iter().map(u128::to_string).collect::<Vec<_>>().join(" "),
    }
}

/// One row per printed clause and exponent. Closed clauses must match the
/// enumeration exactly; the open-ended clause must match at its first
/// exponent and contain the enumeration beyond it.
pub fn prop33(prime_cap: u128, cofactor_cap: u128, a_max: u32) -> Result<Comparison, LabError> {
    let clauses = data::prop33();
    let mut t = Table::new("exception clauses", &["p", "a", "computed", "printed", "status"]);
    let mut deviations = 0;
    for a in 1..=a_max {
        let rep = appendix_exceptions(a, prime_cap, cofactor_cap)?;
        for e in &rep.primes {
            if !clauses.iter().any(|c| c.p == e.p && c.covers(a)) {
                deviations += 1;
                t.push([e.p.to_string(), a.to_string(), show_set(&e.set), "none".into(), "unlisted".into()]);
            }
        }
        for c in clauses.iter().filter(|c| c.covers(a)) {
            let got: Vec<u128> = rep.cases.iter().filter(|x| x.p == c.p).map(|x| x.cofactor()).collect();
            let want = c.listed_up_to(cofactor_cap);
            let status = if got == want {
                "match"
            } else if c.a_max.is_none() && a > c.a_min && got.iter().all(|x| want.contains(x)) {
                "within bound"
            } else {
                deviations += 1;
                "deviation"
            };
            t.push([c.p.to_string(), a.to_string(), show_set(&rep.set_for(c.p)), show_golden(&c.cofactors), status.into()]);
        }
    }
    Ok(Comparison::new(
        "prop33",
        deviations == 0,
        format!("{deviations} clause deviations for a = 1..={a_max}"),
        t,
    ))
}

/// Recomputed thresholds plus all four inequalities on a log-uniform
/// sample of `r` in `[2000, 1e8]`, part 4 over the primes `3..=97`.
pub fn technical(samples: usize, seed: u64) -> Comparison {
    let th = technical_thresholds();
    let mut t = Table::new("technical bounds", &["item", "value", "expected", "holds"]);
    let mut ok = true;
    for (i, (&got, want)) in th.iter().zip(PRINTED_THRESHOLDS).enumerate() {
        let good = (got - want).abs() <= THRESHOLD_TOL;
        ok &= good;
        t.push([format!("threshold {}", i + 1), real(got), want.to_string(), good.to_string()]);
    }
    let primes: Vec<u128> = (3..=97).filter(|&p| is_prime(p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [f64::INFINITY; 4];
    let mut failures = [0usize; 4];
    let (lo, hi) = (2000f64.ln(), 1e8f64.ln());
    for _ in 0..samples {
        let r = (rng.gen_range(lo..hi).exp().round() as u128).max(2000);
        for part in 1..=3u8 {
            let m = technical_margin(part, r, None).unwrap_or(f64::NEG_INFINITY);
            worst[part as usize - 1] = worst[part as usize - 1].min(m);
            failures[part as usize - 1] += usize::from(m <= 0.0);
        }
        for &p in primes.iter().filter(|&&p| r >= 2 * p) {
            let m = technical_margin(4, r, Some(p)).unwrap_or(f64::NEG_INFINITY);
            worst[3] = worst[3].min(m);
            failures[3] += usize::from(m <= 0.0);
        }
    }
    for part in 0..4 {
        ok &= failures[part] == 0;
        t.push([
            format!("part {} min margin", part + 1),
            real(worst[part]),
            "> 0".into(),
            (failures[part] == 0).to_string(),
        ]);
    }
    Comparison::new("technical", ok, format!("{samples} sampled orders, failures {failures:?}"), t)
}

/// The refined binomial inequality for `a_1 = 3..=11`, the resummation
/// identity, and the inductive step for `a_1 = 12..=40`.
pub fn elisa() -> Comparison {
    let mut t = Table::new("binomial refinement", &["a1", "lhs", "rhs", "holds", "identity"]);
    let mut ok = true;
    for a1 in 3..=11 {
        let q = qbinom_refined_pair(a1).expect("a1 in range");
        let (direct, resummed) = resummation_identity(a1);
        let same = direct == resummed;
        ok &= q.holds() && same;
        t.push([a1.to_string(), real(q.lhs), real(q.rhs), q.holds().to_string(), same.to_string()]);
    }
    let step = (12..=40).all(elisa1_step_holds);
    ok &= step;
    t.push(["12..40".to_string(), String::new(), String::new(), step.to_string(), String::new()]);
    Comparison::new("elisa", ok, format!("inequality and identity for a1 = 3..=11, step for 12..=40: {ok}"), t)
}
