//! Bundled data files.

pub const SIMPLE_ORDERS: &str = include_str!("../data/simple_orders.txt");
pub const GOLDEN_TABLE1: &str = include_str!("../data/golden/table1.csv");
pub const GOLDEN_TABLES3_5: &str = include_str!("../data/golden/tables3_5.csv");
pub const GOLDEN_PROP33: &str = include_str!("../data/golden/prop33.csv");
pub const GOLDEN_SPOT_VALUES: &str = include_str!("../data/golden/spot_values.csv");

/// Rows of `table1.csv` with the given `ℓ`, in table order.
pub fn table1(ell: usize) -> Vec<u128> {
    GOLDEN_TABLE1
        .lines()
        .skip(1)
        .filter_map(|l| l.split_once(','))
        .filter(|(e, _)| e.parse() == Ok(ell))
        .map(|(_, r)| r.parse().expect("golden table1 row"))
        .collect()
}

/// Which goodness function a spot value is printed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpotKind {
    F,
    Ft,
}

/// A printed strict lower bound `f(r) > lower` or `𝚏(r) > lower`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpotValue {
    pub kind: SpotKind,
    pub r: String,
    pub lower: f64,
}

pub fn spot_values() -> Vec<SpotValue> {
    GOLDEN_SPOT_VALUES
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            SpotValue {
                kind: if f[0] == "ft" { SpotKind::Ft } else { SpotKind::F },
                r: f[1].to_string(),
                lower: f[2].parse().expect("lower bound"),
            }
        })
        .collect()
}

/// One row of `tables3_5.csv`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SurvivorRow {
    pub ell: usize,
    pub r: u128,
    pub sections: String,
    pub cofactor: u128,
}

pub fn tables3_5() -> Vec<SurvivorRow> {
    GOLDEN_TABLES3_5
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            SurvivorRow {
                ell: f[0].parse().expect("ell"),
                r: f[1].parse().expect("r"),
                sections: f[2].to_string(),
                cofactor: f[3].parse().expect("cofactor"),
            }
        })
        .collect()
}

/// Cofactor set of one exception clause in `prop33.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenCofactors {
    All,
    UpTo(u128),
    Values(Vec<u128>),
}

/// One exception clause: prime `p`, exponents `a_min..=a_max` (`None` for
/// unbounded) and the cofactor set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionClause {
    pub p: u128,
    pub a_min: u32,
    pub a_max: Option<u32>,
    pub cofactors: GoldenCofactors,
}

impl ExceptionClause {
    pub fn covers(&self, a: u32) -> bool {
        a >= self.a_min && self.a_max.is_none_or(|m| a <= m)
    }

    /// Admissible cofactors (`>= 2`, coprime to `p`) up to `cap` in the set.
    pub fn listed_up_to(&self, cap: u128) -> Vec<u128> {
        let ok = |c: &u128| *c >= 2 && !c.is_multiple_of(self.p) && *c <= cap;
        match &self.cofactors {
            GoldenCofactors::All => (2..=cap).filter(ok).collect(),
            GoldenCofactors::UpTo(n) => (2..=cap.min(*n)).filter(ok).collect(),
            GoldenCofactors::Values(v) => v.iter().copied().filter(ok).collect(),
        }
    }
}

/// Clauses of `prop33.csv`, explicit value rows merged per `(p, a)`, in file
/// order.
pub fn prop33() -> Vec<ExceptionClause> {
    let mut out: Vec<ExceptionClause> = Vec::new();
    for l in GOLDEN_PROP33.lines().skip(1) {
        let f: Vec<&str> = l.split(',').collect();
        let p: u128 = f[0].parse().expect("p");
        let (a_min, a_max) = match f[1].strip_suffix('+') {
            Some(a) => (a.parse().expect("a"), None),
            None => {
                let a = f[1].parse().expect("a");
                (a, Some(a))
            }
        };
        let set = match f[2] {
            "all" => GoldenCofactors::All,
            s => match s.strip_prefix("<=") {
                Some(n) => GoldenCofactors::UpTo(n.parse().expect("bound")),
                None => GoldenCofactors::Values(vec![s.parse().expect("cofactor")]),
            },
        };
        if let (GoldenCofactors::Values(v), Some(last)) = (&set, out.last_mut()) {
            if (last.p, last.a_min, last.a_max) == (p, a_min, a_max) {
                if let GoldenCofactors::Values(w) = &mut last.cofactors {
                    w.extend(v);
                    continue;
                }
            }
        }
        out.push(ExceptionClause {
            p,
            a_min,
            a_max,
            cofactors: set,
        });
    }
    out
}
