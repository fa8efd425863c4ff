//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use subbound_core::arith::goodness::DEFAULT_GOOD_TOL;
use subbound_core::arith::{c_of_p, classify_good, f_of, ft_of, main_rhs_log, s_of, FactoredInteger, DEFAULT_REL_TOL};
use subbound_core::inequality::{solvable_recursive_bound, LabError};
use subbound_core::report::{real, render_all, Format, Table};
use subbound_core::screening::{
    scan_patterns, ScanCaps, ScanMode, ScanOptions, ScanReport, ScreenError, SimpleOrderDB,
};
use subbound_groups::check::{results_table, CORPUS_CAP};
use subbound_groups::lattice::DEFAULT_CAP;
use subbound_groups::{corpus_run_with, make_group, verify_theorem, GroupError, GroupSpec, GroupTable};

use crate::golden::{self, Comparison};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_ABORTED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "subbound", version, about = "Subgroup-count bound toolkit: bounds, order screening, inequality checks and group corpora")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, default_value = "csv", env = "SUBBOUND_FORMAT")]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "SUBBOUND_OUTPUT")]
    pub output: Option<PathBuf>,
    /// Goodness tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_GOOD_TOL, env = "SUBBOUND_TOL")]
    pub tol: f64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "SUBBOUND_WORKERS")]
    pub workers: Option<usize>,
    /// Suppress progress messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Trigger {
    #[value(name = "a_ge_1")]
    AGeOne,
    #[value(name = "f_ge_0")]
    FGeZero,
}

impl From<Trigger> for subbound_core::screening::Psl2Trigger {
    fn from(t: Trigger) -> Self {
        match t {
            Trigger::AGeOne => Self::AGeOne,
            Trigger::FGeZero => Self::FGeZero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Golden {
    Table1,
    #[value(name = "tables3_5")]
    Tables35,
    Prop33,
    Spot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// c(p), S(p,a), f and 𝚏 for one order.
    Bounds {
        /// Order as `p^a.p^a...` or a plain integer.
        #[arg(long, env = "SUBBOUND_R")]
        r: FactoredInteger,
    },
    /// Step-1 scan over a factorisation region, followed by step 2.
    Screen {
        /// Number of distinct primes (4 to 12).
        #[arg(long, env = "SUBBOUND_ELL")]
        ell: usize,
        /// Caps `prime_bound,max_exp,max_a1`; defaults to the region left open for `--ell`.
        #[arg(long, env = "SUBBOUND_CAPS")]
        caps: Option<String>,
        #[arg(long, env = "SUBBOUND_GOLDEN")]
        golden: Option<Golden>,
        #[arg(long, value_enum, default_value = "a_ge_1", env = "SUBBOUND_PSL2_TRIGGER")]
        psl2_trigger: Trigger,
        /// Simple-order data file; defaults to the bundled table.
        #[arg(long, env = "SUBBOUND_DB")]
        db: Option<PathBuf>,
        #[arg(long, default_value_t = 2_000_000_000, env = "SUBBOUND_NODE_BUDGET")]
        node_budget: u64,
        /// Visit every shape instead of pruning good branches.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Exception lists for `S(p,a)·r < (r²/p^a)^{a·log₂(p)/4}`.
    Appendix {
        /// Largest exponent `a` to enumerate.
        #[arg(long, default_value_t = 12)]
        a_max: u32,
        /// `prime_cap,cofactor_cap`.
        #[arg(long, default_value = "200,6000", env = "SUBBOUND_CAPS")]
        caps: String,
        #[arg(long, env = "SUBBOUND_GOLDEN")]
        golden: Option<Golden>,
    },
    /// Technical thresholds and the four inequalities on a sample of orders.
    Technical {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 2000)]
        seed: u64,
    },
    /// Recursive bound for solvable groups, and the binomial refinement suite.
    Solvable {
        #[arg(long, env = "SUBBOUND_R")]
        r: Option<FactoredInteger>,
    },
    /// Enumerate the subgroups of one group and compare with the bound.
    VerifyGroup {
        /// Family shorthand such as `alt5`, `dih4`, `ab2,2,4` or `alt5*c2`.
        #[arg(long, conflicts_with = "file")]
        family: Option<String>,
        /// Group file: `n` and a Cayley table, or `perm` and generators.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Enumerate above order 512.
        #[arg(long, env = "SUBBOUND_FORCE_LARGE")]
        force_large: bool,
    },
    /// Check every built-in corpus group up to an order.
    Corpus {
        #[arg(long, default_value_t = 64, env = "SUBBOUND_MAX_ORDER")]
        max_order: usize,
    },
    /// Every golden comparison; exit 3 on any mismatch.
    ReproduceAll {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ScreenError> for Failure {
    fn from(e: ScreenError) -> Self {
        let code = match e {
            ScreenError::CapTooLarge(_) => EXIT_ABORTED,
            ScreenError::Data(_) => EXIT_DATA,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        let code = match e {
            LabError::CapTooSmall(_) | LabError::NeedsExactArithmetic { .. } => EXIT_ABORTED,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match e {
            GroupError::Io(_) => EXIT_DATA,
            GroupError::CapExceeded(_) | GroupError::Unsupported(_) | GroupError::TooLarge(_) => EXIT_ABORTED,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

struct Out {
    format: Format,
    quiet: bool,
    tables: Vec<Table>,
}

impl Out {
    fn progress(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn comparison(&mut self, c: Comparison) -> bool {
        self.progress(&format!("{}: {} ({})", c.name, if c.pass { "PASS" } else { "FAIL" }, c.summary));
        self.tables.push(c.table);
        c.pass
    }
}

fn parse_caps(s: &str, n: usize) -> Result<Vec<u64>, Failure> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::new(EXIT_USAGE, format!("bad caps {s:?}")))?;
    if v.len() != n {
        return Err(Failure::new(EXIT_USAGE, format!("expected {n} comma-separated caps, got {s:?}")));
    }
    Ok(v)
}

fn bounds(r: &FactoredInteger, tol: f64) -> Result<Table, Failure> {
    let mut t = Table::new(&format!("bounds for {r}"), &["quantity", "value"]);
    t.push(["r".to_string(), r.value().to_string()]);
    t.push(["ell".to_string(), r.len().to_string()]);
    for &(p, a) in r.factors() {
        let c = c_of_p(p, DEFAULT_REL_TOL).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        t.push([format!("c({p})"), real(c)]);
        let s = s_of(p, a).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        let shown = match &s.exact {
            Some(x) => x.to_string(),
            None => format!("exp({})", real(s.log.log_value)),
        };
        t.push([format!("S({p},{a})"), shown]);
    }
    t.push(["main_rhs".to_string(), main_rhs_log(r).to_string()]);
    if r.len() >= 2 {
        t.push(["f".to_string(), real(f_of(r).expect("ell >= 2"))]);
        t.push(["ft".to_string(), real(ft_of(r).expect("ell >= 2"))]);
        let v = classify_good(r, tol).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        t.push(["class".to_string(), format!("{:?}", v.kind)]);
    }
    let sb = solvable_recursive_bound(r);
    t.push(["solvable_bound".to_string(), sb.exact.map_or_else(|| sb.log.to_string(), |b| b.to_string())]);
    Ok(t)
}

fn scan(ell: usize, caps: Option<&str>, opts: &ScanOptions, db: &SimpleOrderDB, out: &Out) -> Result<ScanReport, Failure> {
    let caps = match caps {
        Some(s) => {
            let v = parse_caps(s, 3)?;
            ScanCaps {
                ell,
                prime_bound: v[0],
                max_exp: v[1] as u32,
                max_a1: v[2] as u32,
            }
        }
        None => ScanCaps::complement(ell)?,
    };
    out.progress(&format!("scanning ell = {ell} ({caps:?})"));
    let mut rep = scan_patterns(&caps, opts)?;
    out.progress(&format!("  {} nodes, {} step-1 unknowns", rep.nodes, rep.entries.len()));
    rep.apply_step2(db);
    Ok(rep)
}

fn scan_table(rep: &ScanReport) -> Table {
    let mut t = Table::new(
        &format!("screen, {} primes", rep.caps.ell),
        &["r", "factorisation", "step1_bound_log", "step2", "survivors"],
    );
    for e in &rep.entries {
        let s2 = e.step2.as_ref();
        t.push([
            e.r.value().to_string(),
            e.r.to_string(),
            e.step1.bound_log.map_or(String::new(), |b| real(b.log_value)),
            s2.map_or(String::new(), |v| format!("{:?}", v.kind)),
            s2.map_or(String::new(), |v| {
                v.survivors.iter().map(|c| format!("{}:{}", c.name(), e.r.value() / c.d)).collect::<Vec<_>>().join(" ")
            }),
        ]);
    }
    t
}

fn load_group(family: Option<&str>, file: Option<&PathBuf>) -> Result<GroupTable, Failure> {
    let spec = match (family, file) {
        (Some(f), None) => f.parse::<GroupSpec>()?,
        (None, Some(p)) => {
            if !p.exists() {
                return Err(Failure::new(EXIT_DATA, format!("group file {} not found", p.display())));
            }
            GroupSpec::File(p.clone())
        }
        _ => return Err(Failure::new(EXIT_USAGE, "give exactly one of --family or --file")),
    };
    Ok(make_group(&spec)?)
}

fn execute(cli: &Cli, out: &mut Out) -> Result<i32, Failure> {
    let g = &cli.global;
    let mut code = EXIT_OK;
    match &cli.command {
        Command::Bounds { r } => out.tables.push(bounds(r, g.tol)?),
        Command::Screen {
            ell,
            caps,
            golden,
            psl2_trigger,
            db,
            node_budget,
            exhaustive,
        } => {
            let db = match db {
                Some(p) if !p.exists() => return Err(Failure::new(EXIT_DATA, format!("data file {} not found", p.display()))),
                Some(p) => SimpleOrderDB::load(p)?,
                None => SimpleOrderDB::bundled(),
            };
            let opts = ScanOptions {
                trigger: (*psl2_trigger).into(),
                mode: if *exhaustive { ScanMode::Exhaustive } else { ScanMode::Pruned },
                node_budget: *node_budget,
                tol: g.tol,
            };
            let rep = scan(*ell, caps.as_deref(), &opts, &db, out)?;
            out.tables.push(scan_table(&rep));
            let cmp = match golden {
                None => None,
                Some(Golden::Table1) => Some(golden::table1(&rep).ok_or_else(|| {
                    Failure::new(EXIT_USAGE, format!("table 1 prints no column for {ell} primes"))
                })?),
                Some(Golden::Tables35) => Some(golden::tables3_5(&[&rep])),
                Some(other) => return Err(Failure::new(EXIT_USAGE, format!("golden {other:?} does not apply to screen"))),
            };
            if let Some(c) = cmp {
                if !out.comparison(c) {
                    code = EXIT_MISMATCH;
                }
            }
        }
        Command::Appendix { a_max, caps, golden } => {
            let v = parse_caps(caps, 2)?;
            let (pc, cc) = (v[0] as u128, v[1] as u128);
            match golden {
                Some(Golden::Prop33) => {
                    if !out.comparison(golden::prop33(pc, cc, *a_max)?) {
                        code = EXIT_MISMATCH;
                    }
                }
                Some(other) => return Err(Failure::new(EXIT_USAGE, format!("golden {other:?} does not apply to appendix"))),
                None => {
                    let mut t = Table::new("exceptions", &["a", "p", "set", "cases_within_caps"]);
                    for a in 1..=*a_max {
                        let rep = subbound_core::inequality::appendix_exceptions(a, pc, cc)?;
                        for e in &rep.primes {
                            let n = rep.cases.iter().filter(|c| c.p == e.p).count();
                            t.push([a.to_string(), e.p.to_string(), format!("{:?}", e.set), n.to_string()]);
                        }
                    }
                    out.tables.push(t);
                }
            }
        }
        Command::Technical { samples, seed } => {
            if !out.comparison(golden::technical(*samples, *seed)) {
                code = EXIT_MISMATCH;
            }
        }
        Command::Solvable { r } => {
            if let Some(r) = r {
                let b = solvable_recursive_bound(r);
                let mut t = Table::new(&format!("solvable bound for {r}"), &["r", "bound", "log_bound", "main_rhs_log"]);
                t.push([
                    r.value().to_string(),
                    b.exact.map_or(String::new(), |x| x.to_string()),
                    real(b.log.log_value),
                    real(main_rhs_log(r).log_value),
                ]);
                out.tables.push(t);
            }
            if !out.comparison(golden::elisa()) {
                code = EXIT_MISMATCH;
            }
        }
        Command::VerifyGroup {
            family,
            file,
            cap,
            force_large,
        } => {
            let grp = load_group(family.as_deref(), file.as_ref())?;
            out.progress(&format!("enumerating subgroups of {} (order {})", grp.name(), grp.order()));
            let r = verify_theorem(&grp, *cap, *force_large)?;
            out.tables.push(results_table(&[r]));
        }
        Command::Corpus { max_order } => {
            let quiet = out.quiet;
            let results = corpus_run_with(*max_order, &|r| {
                if !quiet && r.order >= 128 {
                    eprintln!("  {} ({}): {} subgroups", r.group, r.order, r.sub_count);
                }
            })?;
            let failed = results.iter().filter(|r| !r.holds).count();
            out.progress(&format!("{} groups, {failed} failures (cap {CORPUS_CAP})", results.len()));
            out.tables.push(results_table(&results));
            if failed > 0 {
                code = EXIT_MISMATCH;
            }
        }
        Command::ReproduceAll { samples } => {
            let db = SimpleOrderDB::bundled();
            let opts = ScanOptions {
                tol: g.tol,
                ..ScanOptions::default()
            };
            let mut ok = out.comparison(golden::spot_values());
            let mut reps = Vec::new();
            for ell in 4..=12 {
                let rep = scan(ell, None, &opts, &db, out)?;
                if let Some(c) = golden::table1(&rep) {
                    ok &= out.comparison(c);
                }
                reps.push(rep);
            }
            let low: Vec<&ScanReport> = reps.iter().filter(|r| r.caps.ell <= 6).collect();
            ok &= out.comparison(golden::tables3_5(&low));
            ok &= out.comparison(golden::prop33(200, 6000, 12)?);
            ok &= out.comparison(golden::technical(*samples, 2000));
            ok &= out.comparison(golden::elisa());
            if !ok {
                code = EXIT_MISMATCH;
            }
        }
    }
    Ok(code)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let mut out = Out {
        format: cli.global.format,
        quiet: cli.global.quiet,
        tables: Vec::new(),
    };
    let code = match execute(&cli, &mut out) {
        Ok(c) => c,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let text = render_all(&out.tables, out.format);
    let written = match &cli.global.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_DATA;
    }
    code
}
