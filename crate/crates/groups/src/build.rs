//! Named group families and their Cayley tables.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::perm::{Perm, parse_cycles};
use crate::table::{GroupTable, MAX_ORDER};
use crate::GroupError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Direct product of cyclic groups of the given prime-power orders.
    Abelian(Vec<usize>),
    /// Order `2n`.
    Dihedral(usize),
    /// Order `4n`; `Dicyclic(2)` is the quaternion group.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Permutations(Vec<Perm>),
    File(PathBuf),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn prime_power(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Invariant factors `d_1 | d_2 | ...` of a product of prime-power cyclics.
pub fn invariant_factors(parts: &[usize]) -> Vec<usize> {
    let mut by_prime: Vec<(usize, Vec<usize>)> = Vec::new();
    for &q in parts.iter().filter(|&&q| q > 1) {
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        match by_prime.iter_mut().find(|(r, _)| *r == p) {
            Some((_, v)) => v.push(q),
            None => by_prime.push((p, vec![q])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![1; len];
    for (_, mut v) in by_prime {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in v.into_iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

impl GroupSpec {
    /// The order, when it is known without building the table.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Abelian(parts) => parts.iter().product(),
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Symmetric(k) => factorial(*k),
            GroupSpec::Alternating(k) => (factorial(*k) / 2).max(1),
            GroupSpec::Product(a, b) => a.order()? * b.order()?,
            GroupSpec::Permutations(_) | GroupSpec::File(_) => return None,
        })
    }

    pub fn is_abelian_family(&self) -> bool {
        matches!(self, GroupSpec::Cyclic(_) | GroupSpec::Abelian(_))
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Abelian(parts) => {
                let inv = invariant_factors(parts);
                if inv.is_empty() {
                    return write!(f, "C1");
                }
                let mut first = true;
                let mut i = 0;
                while i < inv.len() {
                    let j = inv[i..].iter().take_while(|&&d| d == inv[i]).count();
                    if !first {
                        write!(f, "x")?;
                    }
                    first = false;
                    write!(f, "C{}", inv[i])?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                    i += j;
                }
                Ok(())
            }
            GroupSpec::Dihedral(n) => write!(f, "Dih({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "Dic({n})"),
            GroupSpec::Symmetric(k) => write!(f, "Sym({k})"),
            GroupSpec::Alternating(k) => write!(f, "Alt({k})"),
            GroupSpec::Permutations(gens) => {
                write!(f, "<")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g:?}")?;
                }
                write!(f, ">")
            }
            GroupSpec::File(p) => write!(f, "{}", p.display()),
            GroupSpec::Product(a, b) => {
                let wrap = |g: &GroupSpec| match g {
                    GroupSpec::Abelian(p) if invariant_factors(p).len() > 1 => format!("({g})"),
                    GroupSpec::Product(..) => format!("({g})"),
                    _ => g.to_string(),
                };
                write!(f, "{} x {}", wrap(a), wrap(b))
            }
        }
    }
}

fn family_arg(s: &str, prefixes: &[&str]) -> Option<String> {
    for p in prefixes {
        if let Some(rest) = s.strip_prefix(p) {
            let rest = rest.trim();
            let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit() || c == ',' || c == ' ') {
                return Some(rest.to_string());
            }
        }
    }
    None
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Family shorthand: `c12`, `ab2,2,4`, `dih4`, `dic2`, `q8`, `sym4`,
    /// `alt5`, parenthesised forms such as `dihedral(4)`, and products
    /// joined with `*`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let s = s.trim().to_ascii_lowercase();
        if let Some((a, b)) = s.split_once('*') {
            return Ok(GroupSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        if s == "q8" || s == "quaternion" {
            return Ok(GroupSpec::Dicyclic(2));
        }
        if s == "klein" || s == "v4" {
            return Ok(GroupSpec::Abelian(vec![2, 2]));
        }
        let bad = || GroupError::Parse(format!("unknown group family {s:?}"));
        let num = |a: String| a.trim().parse::<usize>().map_err(|_| bad());
        // Longer prefixes first so that `dic` is not read as `d`.
        if let Some(a) = family_arg(&s, &["abelian", "ab"]) {
            let parts: Vec<usize> = a.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
            return Ok(GroupSpec::Abelian(parts));
        }
        if let Some(a) = family_arg(&s, &["dicyclic", "dic"]) {
            return Ok(GroupSpec::Dicyclic(num(a)?));
        }
        if let Some(a) = family_arg(&s, &["dihedral", "dih", "d"]) {
            return Ok(GroupSpec::Dihedral(num(a)?));
        }
        if let Some(a) = family_arg(&s, &["cyclic", "c"]) {
            return Ok(GroupSpec::Cyclic(num(a)?));
        }
        if let Some(a) = family_arg(&s, &["symmetric", "sym", "s"]) {
            return Ok(GroupSpec::Symmetric(num(a)?));
        }
        if let Some(a) = family_arg(&s, &["alternating", "alt", "a"]) {
            return Ok(GroupSpec::Alternating(num(a)?));
        }
        if let Some(rest) = s.strip_prefix("perm:") {
            let gens = rest.split(';').map(parse_cycles).collect::<Result<_, _>>()?;
            return Ok(GroupSpec::Permutations(gens));
        }
        Err(bad())
    }
}

fn check_size(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        return Err(GroupError::Parse("a group has at least one element".into()));
    }
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    Ok(())
}

fn cyclic(n: usize) -> Result<GroupTable, GroupError> {
    check_size(n)?;
    let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u16).collect();
    GroupTable::new(format!("C{n}"), n, mul)
}

fn dihedral(n: usize) -> Result<GroupTable, GroupError> {
    check_size(2 * n)?;
    // r^i s^j is index i + n*j; s r = r^{-1} s.
    let m = 2 * n;
    let mut mul = vec![0u16; m * m];
    for x in 0..m {
        for y in 0..m {
            let (i, j) = (x % n, x / n);
            let (k, l) = (y % n, y / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            mul[x * m + y] = (rot + n * ((j + l) % 2)) as u16;
        }
    }
    GroupTable::new(format!("Dih({n})"), m, mul)
}

fn dicyclic(n: usize) -> Result<GroupTable, GroupError> {
    check_size(4 * n)?;
    // a^i x^j is index i + 2n*j; a^{2n} = 1, x^2 = a^n, x a = a^{-1} x.
    let h = 2 * n;
    let m = 2 * h;
    let mut mul = vec![0u16; m * m];
    for x in 0..m {
        for y in 0..m {
            let (i, j) = (x % h, x / h);
            let (k, l) = (y % h, y / h);
            let v = match (j, l) {
                (0, _) => (i + k) % h + h * l,
                (1, 0) => (i + h - k) % h + h,
                _ => (i + h - k + n) % h,
            };
            mul[x * m + y] = v as u16;
        }
    }
    GroupTable::new(format!("Dic({n})"), m, mul)
}

fn symmetric_gens(k: usize) -> Result<Vec<Perm>, GroupError> {
    if k < 2 {
        return Ok(vec![Perm::identity(1)]);
    }
    Ok(vec![Perm::from_cycles(&[vec![1, 2]])?, Perm::from_cycles(&[(1..=k).collect()])?])
}

fn alternating_gens(k: usize) -> Result<Vec<Perm>, GroupError> {
    if k < 3 {
        return Ok(vec![Perm::identity(1)]);
    }
    (3..=k).map(|i| Perm::from_cycles(&[vec![1, 2, i]])).collect()
}

/// `(g, h)` is index `g·|H| + h`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    check_size(n)?;
    let mut mul = vec![0u16; n * n];
    for x in 0..n {
        let (g1, h1) = (x / nb, x % nb);
        for y in 0..n {
            let (g2, h2) = (y / nb, y % nb);
            mul[x * n + y] = (a.op(g1, g2) * nb + b.op(h1, h2)) as u16;
        }
    }
    GroupTable::new(format!("{} x {}", a.name(), b.name()), n, mul)
}

pub fn make_group(spec: &GroupSpec) -> Result<GroupTable, GroupError> {
    if let Some(n) = spec.order() {
        check_size(n)?;
    }
    let g = match spec {
        GroupSpec::Cyclic(n) => cyclic(*n)?,
        GroupSpec::Abelian(parts) => {
            if let Some(&q) = parts.iter().find(|&&q| !prime_power(q)) {
                return Err(GroupError::Parse(format!("abelian factor {q} is not a prime power")));
            }
            let mut g = cyclic(1)?;
            for &q in parts {
                g = direct_product(&g, &cyclic(q)?)?;
            }
            g
        }
        GroupSpec::Dihedral(n) => dihedral(*n)?,
        GroupSpec::Dicyclic(n) => dicyclic(*n)?,
        GroupSpec::Symmetric(k) => GroupTable::from_permutations("", &symmetric_gens(*k)?)?,
        GroupSpec::Alternating(k) => GroupTable::from_permutations("", &alternating_gens(*k)?)?,
        GroupSpec::Permutations(gens) => GroupTable::from_permutations("", gens)?,
        GroupSpec::File(path) => return GroupTable::from_file(path),
        GroupSpec::Product(a, b) => direct_product(&make_group(a)?, &make_group(b)?)?,
    };
    Ok(g.rename(spec.name()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (spec, n) in [
            (GroupSpec::Cyclic(6), 6),
            (GroupSpec::Abelian(vec![2, 4, 3]), 24),
            (GroupSpec::Dihedral(5), 10),
            (GroupSpec::Dicyclic(3), 12),
            (GroupSpec::Symmetric(4), 24),
            (GroupSpec::Alternating(5), 60),
            (GroupSpec::Product(Box::new(GroupSpec::Alternating(5)), Box::new(GroupSpec::Cyclic(2))), 120),
        ] {
            let g = make_group(&spec).unwrap();
            assert_eq!(g.order(), n, "{spec}");
            assert_eq!(spec.order(), Some(n));
        }
    }

    #[test]
    fn names_and_parsing() {
        assert_eq!(GroupSpec::Abelian(vec![2, 2, 3]).name(), "C2xC6");
        assert_eq!(GroupSpec::Abelian(vec![2, 2, 2, 2]).name(), "C2^4");
        assert_eq!(GroupSpec::Abelian(vec![4, 3]).name(), "C12");
        assert_eq!("alt5".parse::<GroupSpec>().unwrap(), GroupSpec::Alternating(5));
        assert_eq!("dihedral(4)".parse::<GroupSpec>().unwrap(), GroupSpec::Dihedral(4));
        assert_eq!("dic3".parse::<GroupSpec>().unwrap(), GroupSpec::Dicyclic(3));
        assert_eq!("Q8".parse::<GroupSpec>().unwrap(), GroupSpec::Dicyclic(2));
        assert_eq!("ab2,2,4".parse::<GroupSpec>().unwrap(), GroupSpec::Abelian(vec![2, 2, 4]));
        let p: GroupSpec = "alt5*c2".parse().unwrap();
        assert_eq!(p.name(), "Alt(5) x C2");
        assert!("foo7".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn invariant_factor_forms() {
        assert_eq!(invariant_factors(&[2, 4, 3, 9, 5]), vec![6, 180]);
        assert_eq!(invariant_factors(&[]), Vec::<usize>::new());
    }

    #[test]
    fn small_families_have_the_right_shape() {
        let q8 = make_group(&GroupSpec::Dicyclic(2)).unwrap();
        let orders: Vec<usize> = (0..8).map(|x| q8.element_order(x)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert!(!q8.is_abelian());
        let d4 = make_group(&GroupSpec::Dihedral(4)).unwrap();
        assert_eq!((0..8).filter(|&x| d4.element_order(x) == 2).count(), 5);
        assert!(make_group(&GroupSpec::Abelian(vec![6])).is_err());
        assert!(matches!(make_group(&GroupSpec::Cyclic(20_000)), Err(GroupError::TooLarge(_))));
    }
}
