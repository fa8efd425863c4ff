//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria 6 and 7 are expected to print FAIL. The run as a whole succeeds
//! when every other criterion passes and those two fail with exactly the
//! known deviations and nothing else.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use subbound_cli::golden;
use subbound_core::arith::spa::s_exact;
use subbound_core::arith::{c_of_p, f_of, ft_of, is_prime, s_log, s_tilde_log, FactoredInteger, DEFAULT_REL_TOL};
use subbound_core::arith::probes::{monotonicity_probe, Move};
use subbound_core::data;
use subbound_core::screening::{scan_patterns, ScanCaps, ScanOptions, ScanReport, SimpleOrderDB};
use subbound_groups::lattice::DEFAULT_CAP;
use subbound_groups::{brute_subset_oracle, corpus, corpus_run, count_subgroups, make_group, GroupSpec};

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when a failure is the documented one; the suite still succeeds.
    expected_failure: bool,
}

fn pass(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: ok,
        detail: detail.into(),
        expected_failure: false,
    }
}

fn gaussian_sum(p: u128, a: u32) -> u128 {
    // Σ_k [a,k]_p via [n,k] = [n-1,k-1] + p^k [n-1,k].
    let mut row = vec![1u128];
    for n in 1..=a as usize {
        let mut next = vec![1u128; n + 1];
        for k in 1..n {
            next[k] = row[k - 1] + p.pow(k as u32) * row[k];
        }
        row = next;
    }
    row.iter().sum()
}

fn c2() -> Outcome {
    let c = c_of_p(2, DEFAULT_REL_TOL).unwrap();
    pass((c - 7.37197).abs() < 1e-5, format!("c(2) = {c:.12}"))
}

fn s_identity() -> Outcome {
    let primes: Vec<u128> = (2..=100).filter(|&p| is_prime(p)).collect();
    let mut bad = Vec::new();
    for &p in &primes {
        for a in 1..=5 {
            let s = u128::try_from(&s_exact(p, a).unwrap()).unwrap();
            if s != gaussian_sum(p, a) {
                bad.push(format!("S({p},{a}) identity"));
            }
        }
        for a in 1..=12 {
            if s_log(p, a) > s_tilde_log(p, a) + 1e-12 {
                bad.push(format!("S({p},{a}) majorant"));
            }
        }
    }
    pass(bad.is_empty(), format!("{} primes, a <= 5 exact, a <= 12 majorant; failures {bad:?}", primes.len()))
}

fn spot_values() -> Outcome {
    let printed = [
        0.46, 0.3, 0.4, 0.1, 0.1, 0.07, 0.4, 0.02, 0.12, 0.04, 0.17, 0.15, 0.04, 0.03, 0.04,
    ];
    let rows: Vec<_> = data::spot_values().into_iter().filter(|s| s.kind == data::SpotKind::F).collect();
    let file_ok = rows.len() == printed.len() && rows.iter().zip(printed).all(|(s, v)| s.lower == v);
    let mut bad = Vec::new();
    for s in &rows {
        let v = f_of(&s.r.parse().unwrap()).unwrap();
        if v <= s.lower {
            bad.push(format!("f({}) = {v}", s.r));
        }
    }
    pass(file_ok && bad.is_empty(), format!("{} values, golden rows match printed list: {file_ok}, failures {bad:?}", rows.len()))
}

fn seeds() -> Outcome {
    let seeds = [
        "2^2.3.5.7.11.13.17.19.23.29.31.37.41",
        "2^2.3.5.7.11.13.17.19.23.29.31.67",
        "2^2.3^2.5.7.11.13.17.19.23.29.31.37",
        "2^3.3.5.7.11.13.17.19.23.29.31.37",
    ];
    let vals: Vec<f64> = seeds.iter().map(|s| ft_of(&s.parse::<FactoredInteger>().unwrap()).unwrap()).collect();
    pass(vals.iter().all(|&v| v > 0.0), format!("ft = {vals:.4?}"))
}

fn scan(ell: usize) -> ScanReport {
    let mut rep = scan_patterns(&ScanCaps::complement(ell).unwrap(), &ScanOptions::default()).unwrap();
    rep.apply_step2(&SimpleOrderDB::bundled());
    rep
}

fn table1(reps: &[ScanReport]) -> Outcome {
    let four: BTreeSet<u128> = reps[0].unknown_values().into_iter().collect();
    let five: BTreeSet<u128> = reps[1].unknown_values().into_iter().collect();
    let shape = four.len() == 53
        && four.first() == Some(&420)
        && four.last() == Some(&440_401_920)
        && four.contains(&1716)
        && five.len() == 73;
    let golden_ok = reps[..2].iter().all(|r| golden::table1(r).unwrap().pass);
    pass(shape && golden_ok, format!("ell=4: {} entries, ell=5: {} entries, set equality with printed columns: {golden_ok}", four.len(), five.len()))
}

fn tables3_5(reps: &[ScanReport]) -> Outcome {
    let refs: Vec<&ScanReport> = reps.iter().collect();
    let got = golden::survivors(&refs);
    let cmp = golden::tables3_5(&refs);
    let printed: BTreeSet<golden::Survivor> = data::tables3_5().into_iter().map(|r| (r.r, r.sections, r.cofactor)).collect();
    let examples = [(175_560u128, "J1", 1u128), (36_960, "PSL2(11)", 56), (2520, "Alt(7)", 1)];
    let examples_ok = examples.iter().all(|&(r, s, c)| got.contains(&(r, s.to_string(), c)));
    let missing: Vec<_> = printed.difference(&got).cloned().collect();
    let extra: BTreeSet<golden::Survivor> = got.difference(&printed).cloned().collect();
    let mut known: BTreeSet<golden::Survivor> = [
        (87_360u128, "Suz(8)", 3u128),
        (131_040, "Alt(5)xPSL2(13)", 2),
        (720_720, "PSL2(11)xPSL2(13)", 1),
    ]
    .into_iter()
    .map(|(r, s, c)| (r, s.to_string(), c))
    .collect();
    for r in [860_160u128, 1_720_320, 6_881_280, 13_762_560, 55_050_240, 440_401_920] {
        known.insert((r, "Alt(5)".into(), r / 60));
        known.insert((r, "PSL2(7)".into(), r / 168));
    }
    Outcome {
        pass: cmp.pass,
        detail: format!(
            "{} computed, {} printed, {} missing, {} extra; printed examples present: {examples_ok}",
            got.len(),
            printed.len(),
            missing.len(),
            extra.len()
        ),
        expected_failure: !cmp.pass && examples_ok && missing.is_empty() && extra == known,
    }
}

fn prop33() -> Outcome {
    let cmp = golden::prop33(200, 6000, 12).unwrap();
    let deviations: Vec<(String, String, String, String)> = cmp
        .table
        .rows
        .iter()
        .filter(|r| r[4] != "match" && r[4] != "within bound")
        .map(|r| (r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()))
        .collect();
    let known = [
        ("5", "1", "<=4919", "<=4918"),
        ("11", "1", "<=4", "2 3"),
        ("2", "4", "<=65", "<=67"),
    ];
    let as_known = deviations.len() == known.len()
        && deviations.iter().zip(known).all(|(d, k)| (d.0.as_str(), d.1.as_str(), d.2.as_str(), d.3.as_str()) == k);
    Outcome {
        pass: cmp.pass,
        detail: format!("{}; deviations {deviations:?}", cmp.summary),
        expected_failure: !cmp.pass && as_known,
    }
}

fn technical() -> Outcome {
    let cmp = golden::technical(10_000, 2000);
    let th = subbound_core::inequality::technical_thresholds();
    let literal = th.iter().zip([10.63, 8.62, 2.16]).all(|(g, w)| (g - w).abs() <= 0.01);
    pass(cmp.pass && literal, format!("thresholds {th:.4?}; {}", cmp.summary))
}

fn elisa() -> Outcome {
    let cmp = golden::elisa();
    pass(cmp.pass, cmp.summary)
}

fn group_engine() -> Outcome {
    let mut bad = Vec::new();
    let small = corpus(20);
    for spec in &small {
        let g = make_group(spec).unwrap();
        let n = count_subgroups(&g, DEFAULT_CAP, false).unwrap();
        if brute_subset_oracle(&g).unwrap() != n.into() {
            bad.push(format!("oracle {spec}"));
        }
    }
    let mut elementary = 0;
    for p in [2u128, 3, 5, 7] {
        let mut a = 1u32;
        while p.pow(a) <= 512 {
            let g = make_group(&GroupSpec::Abelian(vec![p as usize; a as usize])).unwrap();
            let n = count_subgroups(&g, 20_000_000, false).unwrap() as u128;
            if n != gaussian_sum(p, a) {
                bad.push(format!("elementary {p}^{a}"));
            }
            elementary += 1;
            a += 1;
        }
    }
    let results = corpus_run(512).unwrap();
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !(r.holds && r.margin_log > 0.0 && r.error.is_none()))
        .map(|r| r.group.as_str())
        .collect();
    let min_margin = results.iter().map(|r| r.margin_log).fold(f64::INFINITY, f64::min);
    pass(
        bad.is_empty() && failed.is_empty(),
        format!(
            "{} oracle groups, {elementary} elementary abelian groups, corpus of {} up to 512 with min log margin {min_margin:.3}; failures {bad:?} {failed:?}",
            small.len(),
            results.len()
        ),
    )
}

fn monotonicity() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (mv, seed) in Move::ALL.into_iter().zip([11u64, 12, 13]) {
        let rep = monotonicity_probe(mv, 1000, seed);
        ok &= rep.failures.is_empty() && rep.samples == 1000;
        parts.push(format!("{mv:?}: {} failures", rep.failures.len()));
    }
    pass(ok, parts.join(", "))
}

type Criterion = (&'static str, Duration, Box<dyn FnMut() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("c(2) value", Duration::from_millis(1), Box::new(c2)),
        ("S identity and majorant", Duration::from_secs(1), Box::new(s_identity)),
        ("f spot values", Duration::from_secs(1), Box::new(spot_values)),
        ("ft seeds", Duration::from_secs(1), Box::new(seeds)),
        (
            "table 1, four and five primes",
            Duration::from_secs(300),
            Box::new(|| table1(&[scan(4), scan(5)])),
        ),
        ("tables 3-5", Duration::from_secs(60), Box::new(|| tables3_5(&(4..=6).map(scan).collect::<Vec<_>>()))),
        ("exception clauses", Duration::from_secs(60), Box::new(prop33)),
        ("technical bounds", Duration::from_secs(10), Box::new(technical)),
        ("binomial refinement", Duration::from_secs(1), Box::new(elisa)),
        ("group engine", Duration::from_secs(600), Box::new(group_engine)),
        ("monotonicity", Duration::from_secs(10), Box::new(monotonicity)),
    ];
    let mut unexpected = 0;
    for (i, (name, budget, mut run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.pass && took <= budget;
        let note = if !ok && out.expected_failure { " [known deviation]" } else { "" };
        println!(
            "{} {:>2} {name}: {} ({:.3}s, budget {}s){note}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            out.detail,
            took.as_secs_f64(),
            budget.as_secs_f64()
        );
        if !ok && !(out.expected_failure && took <= budget) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} unexpected failures");
        std::process::exit(1);
    }
}
