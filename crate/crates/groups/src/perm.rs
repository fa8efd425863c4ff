//! Permutations on at most 64 points, written in cycle notation with
//! points numbered from 1.

use std::fmt;

use crate::GroupError;

pub const MAX_POINTS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<u8>) -> Result<Self, GroupError> {
        if images.len() > MAX_POINTS {
            return Err(GroupError::InvalidPermutation(format!("{} points", images.len())));
        }
        let mut seen = [false; MAX_POINTS];
        for &x in &images {
            if x as usize >= images.len() || seen[x as usize] {
                return Err(GroupError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-based cycles.
    pub fn from_cycles(cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        if degree > MAX_POINTS {
            return Err(GroupError::InvalidPermutation(format!("point {degree} exceeds {MAX_POINTS}")));
        }
        let mut img: Vec<u8> = (0..degree as u8).collect();
        let mut used = [false; MAX_POINTS];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x == 0 || used[x - 1] {
                    return Err(GroupError::InvalidPermutation(format!("bad or repeated point {x}")));
                }
                used[x - 1] = true;
                img[x - 1] = (c[(i + 1) % c.len()] - 1) as u8;
            }
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0.get(x).map_or(x, |&y| y as usize)
    }

    pub fn extend(&self, degree: usize) -> Self {
        Perm((0..degree).map(|x| self.image(x) as u8).collect())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.image(x as usize) as u8).collect())
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for s in 0..self.degree() {
            let mut x = s;
            let mut len = 0;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            transpositions += len.max(1) - 1;
        }
        transpositions % 2 == 0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for s in 0..self.degree() {
            if seen[s] || self.image(s) == s {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.image(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses `(1 2 3)(4 5)`; commas are accepted as separators and `()` is
/// the identity.
pub fn parse_cycles(s: &str) -> Result<Perm, GroupError> {
    let bad = || GroupError::InvalidPermutation(format!("cannot parse {s:?}"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = rest.find(')').ok_or_else(bad)?;
        let cycle: Vec<usize> = rest[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[end + 1..].trim_start();
    }
    Perm::from_cycles(&cycles)
}
