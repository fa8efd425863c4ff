use std::path::Path;

use serde::Serialize;

use super::ScreenError;
use crate::arith::FactoredInteger;
use crate::data::SIMPLE_ORDERS;

/// The only products of two distinct simple sections that can occur.
pub const FACT2_PAIRS: [(&str, &str); 3] = [
    ("Alt(5)", "PSL2(7)"),
    ("Alt(5)", "PSL2(13)"),
    ("PSL2(11)", "PSL2(13)"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGroupRecord {
    pub name: String,
    pub order: FactoredInteger,
    pub out_order: u32,
    /// Listed among the possible simple sections.
    pub table2: bool,
    /// Order divisible by exactly three primes.
    pub k3: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleOrderDB {
    pub records: Vec<SimpleGroupRecord>,
}

impl SimpleOrderDB {
    /// The bundled `simple_orders` file.
    pub fn bundled() -> Self {
        Self::parse(SIMPLE_ORDERS).expect("bundled simple_orders parses")
    }

    pub fn load(path: &Path) -> Result<Self, ScreenError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScreenError::Data(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Lines `name | p^a p^a … | out-order | tags`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ScreenError> {
        let mut records = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| ScreenError::Data(format!("line {}: {m}", no + 1));
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(err("expected 4 columns"));
            }
            let order: FactoredInteger = cols[1]
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(".")
                .parse()
                .map_err(|e| err(&format!("{e}")))?;
            let out_order: u32 = cols[2].parse().map_err(|_| err("bad out-order"))?;
            let mut out = out_order;
            for p in [2, 3] {
                while out.is_multiple_of(p) {
                    out /= p;
                }
            }
            if out != 1 {
                return Err(err("out-order has a prime factor above 3"));
            }
            let tags: Vec<&str> = cols[3].split_whitespace().collect();
            if let Some(t) = tags.iter().find(|t| !matches!(**t, "table2" | "k3")) {
                return Err(err(&format!("unknown tag {t}")));
            }
            let k3 = tags.contains(&"k3");
            if k3 && order.len() != 3 {
                return Err(err("k3 record without exactly three primes"));
            }
            records.push(SimpleGroupRecord {
                name: cols[0].to_string(),
                order,
                out_order,
                table2: tags.contains(&"table2"),
                k3,
            });
        }
        Ok(Self { records })
    }

    pub fn get(&self, name: &str) -> Option<&SimpleGroupRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn table2(&self) -> impl Iterator<Item = &SimpleGroupRecord> {
        self.records.iter().filter(|r| r.table2)
    }

    pub fn k3(&self) -> impl Iterator<Item = &SimpleGroupRecord> {
        self.records.iter().filter(|r| r.k3)
    }
}
