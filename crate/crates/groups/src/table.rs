//! Cayley tables with the identity at index 0.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::{parse_cycles, Perm};
use crate::GroupError;

/// Largest order accepted by any constructor.
pub const MAX_ORDER: usize = 10_000;
/// Associativity is checked on every triple up to this order.
pub const FULL_ASSOC_LIMIT: usize = 128;
const RANDOM_TRIPLES: usize = 100_000;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    name: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, order {})", self.name, self.n)
    }
}

impl GroupTable {
    /// Validates a row-major table: identity at 0, Latin rows and columns,
    /// associativity (sampled above [`FULL_ASSOC_LIMIT`]).
    pub fn new(name: impl Into<String>, n: usize, mul: Vec<u16>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::NotClosed("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        if mul.len() != n * n {
            return Err(GroupError::NotClosed(format!("expected {} entries, got {}", n * n, mul.len())));
        }
        if let Some(&x) = mul.iter().find(|&&x| x as usize >= n) {
            return Err(GroupError::NotClosed(format!("entry {x} out of range")));
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(GroupError::NotClosed("index 0 is not the identity".into()));
            }
        }
        let mut seen = vec![0u32; n];
        for (stamp, row) in mul.chunks(n).enumerate() {
            for &y in row {
                if seen[y as usize] == stamp as u32 + 1 {
                    return Err(GroupError::NotClosed(format!("row {stamp} repeats {y}")));
                }
                seen[y as usize] = stamp as u32 + 1;
            }
        }
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            let b = mul[a * n..(a + 1) * n].iter().position(|&y| y == 0).unwrap();
            if mul[b * n + a] != 0 {
                return Err(GroupError::NotClosed(format!("{a} has no two-sided inverse")));
            }
            inv[a] = b as u16;
        }
        let g = GroupTable {
            n,
            mul,
            inv,
            name: name.into(),
        };
        g.check_associative()?;
        Ok(g)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.n;
        let bad = |a: usize, b: usize, c: usize| self.op(self.op(a, b), c) != self.op(a, self.op(b, c));
        if n <= FULL_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(GroupError::NotClosed(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..RANDOM_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(GroupError::NotClosed(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn row(&self, a: usize) -> &[u16] {
        &self.mul[a * self.n..(a + 1) * self.n]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Reads a group file: either `n` followed by `n` rows of the Cayley
    /// table, or `perm` followed by one generator per line in cycle notation.
    pub fn from_file(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Self::parse(&name, &text)
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GroupError::Parse("empty group file".into()))?;
        if header.eq_ignore_ascii_case("perm") {
            let gens: Vec<Perm> = lines.map(parse_cycles).collect::<Result<_, _>>()?;
            return Self::from_permutations(name, &gens);
        }
        let n: usize = header.parse().map_err(|_| GroupError::Parse(format!("bad header {header:?}")))?;
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, line) in lines.enumerate() {
            let row: Vec<u16> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| GroupError::Parse(format!("row {i}: bad entry {t:?}"))))
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(GroupError::NotClosed(format!("row {i} has {} entries", row.len())));
            }
            mul.extend(row);
        }
        Self::new(name, n, mul)
    }

    /// The group generated by `gens`, closed under right multiplication.
    pub fn from_permutations(name: &str, gens: &[Perm]) -> Result<Self, GroupError> {
        let degree = gens.iter().map(Perm::degree).max().unwrap_or(1);
        let gens: Vec<Perm> = gens.iter().map(|g| g.extend(degree)).collect();
        let mut elems = vec![Perm::identity(degree)];
        let mut index = hashbrown::HashMap::new();
        index.insert(elems[0].clone(), 0u16);
        let mut parent = vec![(0u16, 0u8)];
        let mut right: Vec<u16> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for (k, s) in gens.iter().enumerate() {
                let y = elems[i].then(s);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elems.len() >= MAX_ORDER {
                            return Err(GroupError::TooLarge(elems.len() + 1));
                        }
                        let j = elems.len() as u16;
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((i as u16, k as u8));
                        j
                    }
                };
                right.push(j);
            }
            i += 1;
        }
        let n = elems.len();
        let k = gens.len();
        // a*b = (a*parent(b))*gen(b), filled in discovery order.
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            let row = &mut mul[a * n..(a + 1) * n];
            row[0] = a as u16;
            for b in 1..n {
                let (pb, s) = parent[b];
                row[b] = right[row[pb as usize] as usize * k + s as usize];
            }
        }
        Self::new(name, n, mul)
    }
}
