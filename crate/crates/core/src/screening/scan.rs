use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::lmax::Clause;
use super::step1::{step1_detail, Psl2Trigger};
use super::step2::step2_after_step1;
use super::{lmax_filter, ScreenError, ScreenVerdict, SimpleOrderDB};
use crate::arith::goodness::{f_from_parts, DEFAULT_GOOD_TOL};
use crate::arith::primes::primes_in;
use crate::arith::spa::s_log;
use crate::arith::FactoredInteger;

/// Shapes `r = 2^{a_1}·p_2^{a_2}⋯p_ℓ^{a_ℓ}` with `p_ℓ < prime_bound`,
/// `1 <= a_i <= max_exp` for `i >= 2` and `2 <= a_1 <= max_a1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanCaps {
    pub ell: usize,
    pub prime_bound: u64,
    pub max_exp: u32,
    pub max_a1: u32,
}

impl ScanCaps {
    /// The region left open by the goodness clause for `ℓ` (4 to 12).
    pub fn complement(ell: usize) -> Result<Self, ScreenError> {
        let c = Clause::for_ell(ell).ok_or_else(|| {
            ScreenError::PreconditionViolated(format!("no goodness clause for ell = {ell}"))
        })?;
        Ok(Self {
            ell,
            prime_bound: c.prime_bound,
            max_exp: c.exp_bound - 1,
            max_a1: c.a1_bound - 1,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ScanMode {
    /// Prunes a branch once its smallest completion is already good; sound
    /// because replacing a prime by a larger unused one never decreases `f`.
    #[default]
    Pruned,
    /// Visits every shape. A shape with `f(r) > 0` is counted as yes without
    /// running step 1 (the step-1 product is then below the main bound).
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanOptions {
    pub trigger: Psl2Trigger,
    pub mode: ScanMode,
    pub node_budget: u64,
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            trigger: Psl2Trigger::AGeOne,
            mode: ScanMode::Pruned,
            node_budget: 2_000_000_000,
            tol: DEFAULT_GOOD_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub r: FactoredInteger,
    pub step1: ScreenVerdict,
    pub step2: Option<ScreenVerdict>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub caps: ScanCaps,
    pub options: ScanOptions,
    /// Orders left Unknown by step 1, ascending.
    pub entries: Vec<ScanEntry>,
    /// Shapes certified by `f(r) > tol` at a leaf.
    pub good: u64,
    /// Shapes covered by a goodness clause (only when caps exceed it).
    pub clause: u64,
    /// Shapes where step 1 returned yes.
    pub step1_yes: u64,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

impl ScanReport {
    pub fn unknown_values(&self) -> Vec<u128> {
        self.entries.iter().map(|e| e.r.value()).collect()
    }

    /// Runs step 2 on every entry.
    pub fn apply_step2(&mut self, db: &SimpleOrderDB) {
        self.entries.par_iter_mut().for_each(|e| {
            e.step2 = Some(step2_after_step1(&e.r, db, e.step1.clone()));
        });
    }
}

#[derive(Default)]
struct Tally {
    entries: Vec<ScanEntry>,
    good: u64,
    clause: u64,
    step1_yes: u64,
}

struct Ctx<'a> {
    caps: ScanCaps,
    opts: &'a ScanOptions,
    primes: Vec<u64>,
    ln_p: Vec<f64>,
    // ln S(p_j, a) at [j * (max_exp + 1) + a]
    ln_s: Vec<f64>,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

impl Ctx<'_> {
    fn lns(&self, j: usize, a: u32) -> f64 {
        self.ln_s[j * (self.caps.max_exp as usize + 1) + a as usize]
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n >= self.opts.node_budget {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }

    fn dfs(
        &self,
        exps: &[u32],
        chosen: &mut Vec<usize>,
        start: usize,
        ln_r: f64,
        ln_s: f64,
        out: &mut Tally,
    ) -> Result<(), ScreenError> {
        let ell = self.caps.ell;
        let k = chosen.len();
        let need = ell - 1 - k;
        if need == 0 {
            return self.leaf(exps, chosen, ln_r, ln_s, out);
        }
        for j in start..self.primes.len() {
            if j + need > self.primes.len() {
                break;
            }
            if !self.tick() {
                return Err(ScreenError::CapTooLarge(self.opts.node_budget));
            }
            if self.opts.mode == ScanMode::Pruned {
                let (mut lr, mut ls) = (ln_r, ln_s);
                for t in 0..need {
                    let a = exps[k + 1 + t];
                    lr += a as f64 * self.ln_p[j + t];
                    ls += self.lns(j + t, a);
                }
                if f_from_parts(lr, ls, ell) > self.opts.tol {
                    break;
                }
            }
            let a = exps[k + 1];
            chosen.push(j);
            let res = self.dfs(
                exps,
                chosen,
                j + 1,
                ln_r + a as f64 * self.ln_p[j],
                ln_s + self.lns(j, a),
                out,
            );
            chosen.pop();
            res?;
        }
        Ok(())
    }

    fn leaf(
        &self,
        exps: &[u32],
        chosen: &[usize],
        ln_r: f64,
        ln_s: f64,
        out: &mut Tally,
    ) -> Result<(), ScreenError> {
        if f_from_parts(ln_r, ln_s, self.caps.ell) > self.opts.tol {
            out.good += 1;
            return Ok(());
        }
        let mut factors = vec![(2u128, exps[0])];
        factors.extend(
            chosen
                .iter()
                .zip(&exps[1..])
                .map(|(&j, &a)| (self.primes[j] as u128, a)),
        );
        let mut value: u128 = 1;
        for &(p, a) in &factors {
            value = p
                .checked_pow(a)
                .and_then(|pa| value.checked_mul(pa))
                .ok_or_else(|| ScreenError::PreconditionViolated("order exceeds 128 bits".into()))?;
        }
        let r = FactoredInteger::from_parts_unchecked(value, factors);
        if lmax_filter(&r)?.is_some() {
            out.clause += 1;
            return Ok(());
        }
        let d = step1_detail(&r, self.opts.trigger)?;
        if d.verdict.is_yes() {
            out.step1_yes += 1;
        } else {
            out.entries.push(ScanEntry {
                r,
                step1: d.verdict,
                step2: None,
            });
        }
        Ok(())
    }
}

fn exponent_vectors(caps: &ScanCaps) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let tail = caps.ell - 1;
    for a1 in 2..=caps.max_a1 {
        let mut v = vec![1u32; tail];
        'odometer: loop {
            let mut e = Vec::with_capacity(caps.ell);
            e.push(a1);
            e.extend_from_slice(&v);
            out.push(e);
            for i in (0..tail).rev() {
                if v[i] < caps.max_exp {
                    v[i] += 1;
                    v[i + 1..].iter_mut().for_each(|x| *x = 1);
                    continue 'odometer;
                }
            }
            break;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Step-1 screening of every shape inside `caps`.
///
/// Orders with `p_1 = 2`, `a_1 >= 2` and exactly `caps.ell >= 4` distinct
/// primes are visited; the report lists the orders left Unknown, ascending.
pub fn scan_patterns(caps: &ScanCaps, opts: &ScanOptions) -> Result<ScanReport, ScreenError> {
    if caps.ell < 4 {
        return Err(ScreenError::PreconditionViolated(
            "scans need at least four primes".into(),
        ));
    }
    let empty = caps.max_a1 < 2 || caps.max_exp < 1;
    let primes = if empty {
        Vec::new()
    } else {
        primes_in(3, caps.prime_bound)
    };
    if opts.mode == ScanMode::Exhaustive && !empty {
        let leaves = binomial(primes.len(), caps.ell - 1)
            * (caps.max_exp as f64).powi(caps.ell as i32 - 1)
            * (caps.max_a1 - 1) as f64;
        if leaves > opts.node_budget as f64 {
            return Err(ScreenError::CapTooLarge(opts.node_budget));
        }
    }
    let ln_p: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
    let width = caps.max_exp as usize + 1;
    let mut ln_s = vec![0.0; primes.len() * width];
    for (j, &p) in primes.iter().enumerate() {
        for a in 1..=caps.max_exp {
            ln_s[j * width + a as usize] = s_log(p as u128, a);
        }
    }
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let ctx = Ctx {
        caps: *caps,
        opts,
        primes,
        ln_p,
        ln_s,
        nodes: &nodes,
        abort: &abort,
    };
    let vectors = if empty || ctx.primes.len() < caps.ell - 1 {
        Vec::new()
    } else {
        exponent_vectors(caps)
    };
    let ln2 = std::f64::consts::LN_2;
    let tallies: Vec<Tally> = vectors
        .par_iter()
        .map(|exps| {
            let mut t = Tally::default();
            let a1 = exps[0];
            ctx.dfs(
                exps,
                &mut Vec::with_capacity(caps.ell),
                0,
                a1 as f64 * ln2,
                s_log(2, a1),
                &mut t,
            )?;
            Ok(t)
        })
        .collect::<Result<_, ScreenError>>()?;
    let mut report = ScanReport {
        caps: *caps,
        options: *opts,
        entries: Vec::new(),
        good: 0,
        clause: 0,
        step1_yes: 0,
        nodes: nodes.load(Ordering::Relaxed),
    };
    for t in tallies {
        report.entries.extend(t.entries);
        report.good += t.good;
        report.clause += t.clause;
        report.step1_yes += t.step1_yes;
    }
    report.entries.sort_by_key(|e| e.r.value());
    Ok(report)
}
