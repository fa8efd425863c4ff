//! Complete subgroup lattices by saturating cyclic subgroups under joins.

use std::cmp::Ordering;
use std::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};
use num_bigint::BigUint;

use crate::table::GroupTable;
use crate::GroupError;

pub const DEFAULT_CAP: usize = 1_000_000;
/// Largest order enumerated without `force`.
pub const GUARANTEED_ORDER: usize = 512;
pub const ORACLE_LIMIT: usize = 20;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn test(mask: &[u64], x: usize) -> bool {
    mask[x >> 6] >> (x & 63) & 1 == 1
}

#[inline]
fn set(mask: &mut [u64], x: usize) {
    mask[x >> 6] |= 1 << (x & 63);
}

fn bits(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                w * 64 + b
            })
        })
    })
}

fn first_bit(mask: &[u64]) -> Option<usize> {
    let w = mask.iter().position(|&m| m != 0)?;
    Some(w * 64 + mask[w].trailing_zeros() as usize)
}

fn cmp_masks(a: &[u64], b: &[u64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// A subgroup as a membership mask over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub members: Vec<u64>,
    pub order: usize,
}

impl Subgroup {
    pub fn contains(&self, x: usize) -> bool {
        test(&self.members, x)
    }

    pub fn elements(&self) -> Vec<usize> {
        bits(&self.members).collect()
    }

    /// Closed under the group law and inverses, contains the identity, and
    /// its order divides `|G|`.
    pub fn is_valid_in(&self, g: &GroupTable) -> bool {
        let el = self.elements();
        el.len() == self.order
            && g.order().is_multiple_of(self.order)
            && self.contains(0)
            && el.iter().all(|&a| self.contains(g.inv(a)) && el.iter().all(|&b| self.contains(g.op(a, b))))
    }
}

/// Subgroups stored contiguously, sorted by `(order, mask)` where masks
/// compare as binary numbers.
#[derive(Debug, Clone)]
pub struct SubgroupList {
    words: usize,
    masks: Vec<u64>,
    orders: Vec<u32>,
}

impl SubgroupList {
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn mask(&self, i: usize) -> &[u64] {
        &self.masks[i * self.words..(i + 1) * self.words]
    }

    pub fn order(&self, i: usize) -> usize {
        self.orders[i] as usize
    }

    pub fn get(&self, i: usize) -> Subgroup {
        Subgroup {
            members: self.mask(i).to_vec(),
            order: self.order(i),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Subgroup> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// Number of subgroups of each order, ascending.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &o in &self.orders {
            match out.last_mut() {
                Some((k, c)) if *k == o as usize => *c += 1,
                _ => out.push((o as usize, 1)),
            }
        }
        out
    }
}

struct Arena {
    words: usize,
    masks: Vec<u64>,
    orders: Vec<u32>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
    cap: usize,
}

impl Arena {
    fn new(words: usize, cap: usize) -> Self {
        Arena {
            words,
            masks: Vec::new(),
            orders: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
            cap,
        }
    }

    /// Index of the new entry, or `None` if the mask was already present.
    fn insert(&mut self, mask: &[u64], order: usize) -> Result<Option<u32>, GroupError> {
        let w = self.words;
        let masks = &self.masks;
        let hasher = &self.hasher;
        let hash = hasher.hash_one(mask);
        if self.table.find(hash, |&i| &masks[i as usize * w..(i as usize + 1) * w] == mask).is_some() {
            return Ok(None);
        }
        if self.orders.len() >= self.cap {
            return Err(GroupError::CapExceeded(self.cap));
        }
        let idx = self.orders.len() as u32;
        self.table.insert_unique(hash, idx, |&i| hasher.hash_one(&masks[i as usize * w..(i as usize + 1) * w]));
        self.masks.extend_from_slice(mask);
        self.orders.push(order as u32);
        Ok(Some(idx))
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

struct Joiner<'a> {
    g: &'a GroupTable,
    abelian: bool,
    reps: Vec<usize>,
}

impl Joiner<'_> {
    /// `⟨H, x⟩` as a union of right cosets `H·r`, closed under right
    /// multiplication by `H ∪ {x}`. Writes the mask into `out` and returns
    /// the order.
    fn join(&mut self, h_mask: &[u64], h_elems: &[usize], x: usize, out: &mut [u64]) -> usize {
        out.copy_from_slice(h_mask);
        self.reps.clear();
        let g = self.g;
        let add_coset = |out: &mut [u64], r: usize| {
            for &h in h_elems {
                set(out, g.op(h, r));
            }
        };
        add_coset(out, x);
        self.reps.push(x);
        let mut i = 0;
        while i < self.reps.len() {
            let r = self.reps[i];
            i += 1;
            let row = g.row(r);
            for &s in h_elems[1..].iter().chain(std::iter::once(&x)) {
                let y = row[s] as usize;
                if !test(out, y) {
                    add_coset(out, y);
                    self.reps.push(y);
                }
            }
        }
        h_elems.len() * (self.reps.len() + 1)
    }

    /// `H⟨x⟩` when `x` normalises `H` and has prime order modulo `H`.
    fn cyclic_extension(&mut self, h_mask: &[u64], h_elems: &[usize], x: usize, out: &mut [u64]) -> Option<usize> {
        let g = self.g;
        let mut y = x;
        let mut k = 1;
        while !test(h_mask, y) {
            y = g.op(y, x);
            k += 1;
        }
        if !is_prime(k) {
            return None;
        }
        let xi = g.inv(x);
        if !self.abelian && h_elems[1..].iter().any(|&h| !test(h_mask, g.op(g.op(xi, h), x))) {
            return None;
        }
        out.copy_from_slice(h_mask);
        let mut r = x;
        for _ in 1..k {
            for &h in h_elems {
                set(out, g.op(h, r));
            }
            r = g.op(r, x);
        }
        Some(h_elems.len() * k)
    }
}

fn check_size(g: &GroupTable, force: bool) -> Result<(), GroupError> {
    if g.order() > GUARANTEED_ORDER && !force {
        return Err(GroupError::Unsupported(g.order()));
    }
    Ok(())
}

fn saturate(g: &GroupTable, cap: usize) -> Result<Arena, GroupError> {
    let n = g.order();
    let w = words(n);
    let mut arena = Arena::new(w, cap);
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    let mut reps = vec![0u64; w];
    let mut mask = vec![0u64; w];
    for x in 0..n {
        mask.fill(0);
        let mut y = 0;
        let mut k = 0;
        loop {
            set(&mut mask, y);
            k += 1;
            y = g.op(y, x);
            if y == 0 {
                break;
            }
        }
        if let Some(i) = arena.insert(&mask, k)? {
            buckets[k].push(i);
            if x != 0 {
                set(&mut reps, x);
            }
        }
    }
    // In a solvable group every subgroup K > 1 has a normal subgroup H of
    // prime index p, and K = ⟨H, x⟩ for any x in K \ H; such x normalise H
    // and have x^p in H. Other groups fall back to arbitrary joins.
    let solvable = is_solvable(g);
    let mut joiner = Joiner {
        g,
        abelian: g.is_abelian(),
        reps: Vec::new(),
    };
    let mut h_mask = vec![0u64; w];
    let mut cand = vec![0u64; w];
    let mut out = vec![0u64; w];
    let mut h_elems = Vec::new();
    for ord in 1..n {
        let bucket = std::mem::take(&mut buckets[ord]);
        for idx in bucket {
            let i = idx as usize;
            h_mask.copy_from_slice(&arena.masks[i * w..(i + 1) * w]);
            h_elems.clear();
            h_elems.extend(bits(&h_mask));
            for j in 0..w {
                cand[j] = reps[j] & !h_mask[j];
            }
            while let Some(x) = first_bit(&cand) {
                cand[x >> 6] &= !(1 << (x & 63));
                let k = if solvable {
                    match joiner.cyclic_extension(&h_mask, &h_elems, x, &mut out) {
                        Some(k) => k,
                        None => continue,
                    }
                } else {
                    joiner.join(&h_mask, &h_elems, x, &mut out)
                };
                if is_prime(k / ord) {
                    // H is maximal in the join, so every new element regenerates it.
                    for j in 0..w {
                        cand[j] &= !out[j];
                    }
                }
                if let Some(new) = arena.insert(&out, k)? {
                    buckets[k].push(new);
                }
            }
        }
    }
    Ok(arena)
}

/// Every subgroup of `g`, duplicate-free and sorted by `(order, mask)`.
pub fn enumerate_subgroups(g: &GroupTable, cap: usize, force: bool) -> Result<SubgroupList, GroupError> {
    check_size(g, force)?;
    let arena = saturate(g, cap)?;
    let w = arena.words;
    let mut idx: Vec<u32> = (0..arena.orders.len() as u32).collect();
    let key = |i: u32| {
        let i = i as usize;
        (arena.orders[i], &arena.masks[i * w..(i + 1) * w])
    };
    idx.sort_unstable_by(|&a, &b| {
        let (oa, ma) = key(a);
        let (ob, mb) = key(b);
        oa.cmp(&ob).then_with(|| cmp_masks(ma, mb))
    });
    let mut masks = Vec::with_capacity(arena.masks.len());
    let mut orders = Vec::with_capacity(idx.len());
    for &i in &idx {
        let (o, m) = key(i);
        masks.extend_from_slice(m);
        orders.push(o);
    }
    Ok(SubgroupList { words: w, masks, orders })
}

/// `|Sub(g)|` by the same enumeration, without sorting.
pub fn count_subgroups(g: &GroupTable, cap: usize, force: bool) -> Result<usize, GroupError> {
    check_size(g, force)?;
    Ok(saturate(g, cap)?.orders.len())
}

/// Counts subgroups by testing every subset containing the identity whose
/// size divides `|G|` for closure under multiplication.
pub fn brute_subset_oracle(g: &GroupTable) -> Result<BigUint, GroupError> {
    let n = g.order();
    if n > ORACLE_LIMIT {
        return Err(GroupError::TooLargeForOracle(n));
    }
    let mut count = 0u64;
    // Bit i of `rest` stands for element i + 1.
    for rest in 0u32..1 << (n - 1) {
        let set = (rest << 1) | 1;
        let size = set.count_ones() as usize;
        if !n.is_multiple_of(size) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&x| set >> x & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| set >> g.op(a, b) & 1 == 1));
        if closed {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Subgroup generated by a set of elements.
pub fn generated(g: &GroupTable, gens: impl IntoIterator<Item = usize>) -> Subgroup {
    let w = words(g.order());
    let mut mask = vec![0u64; w];
    set(&mut mask, 0);
    let gens: Vec<usize> = gens.into_iter().collect();
    let mut elems = vec![0usize];
    let mut i = 0;
    while i < elems.len() {
        let a = elems[i];
        i += 1;
        for &s in &gens {
            let y = g.op(a, s);
            if !test(&mask, y) {
                set(&mut mask, y);
                elems.push(y);
            }
        }
    }
    Subgroup {
        members: mask,
        order: elems.len(),
    }
}

/// Whether the derived series reaches the trivial group.
pub fn is_solvable(g: &GroupTable) -> bool {
    let mut current: Vec<usize> = (0..g.order()).collect();
    loop {
        if current.len() == 1 {
            return true;
        }
        let mut comms = hashbrown::HashSet::new();
        for &a in &current {
            for &b in &current {
                comms.insert(g.op(g.op(g.inv(a), g.inv(b)), g.op(a, b)));
            }
        }
        let d = generated(g, comms);
        if d.order == current.len() {
            return false;
        }
        current = d.elements();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{make_group, GroupSpec};

    #[test]
    fn bit_helpers() {
        let mut m = vec![0u64; 2];
        set(&mut m, 3);
        set(&mut m, 70);
        assert_eq!(bits(&m).collect::<Vec<_>>(), vec![3, 70]);
        assert!(test(&m, 70) && !test(&m, 69));
        assert_eq!(cmp_masks(&[1, 0], &[0, 1]), Ordering::Less);
    }

    #[test]
    fn small_counts() {
        for (s, want) in [("c12", 6), ("klein", 5), ("dih4", 10), ("q8", 6), ("sym3", 6), ("c1", 1)] {
            let g = make_group(&s.parse::<GroupSpec>().unwrap()).unwrap();
            assert_eq!(enumerate_subgroups(&g, DEFAULT_CAP, false).unwrap().len(), want, "{s}");
        }
    }

    #[test]
    fn cap_and_size_guards() {
        let g = make_group(&GroupSpec::Abelian(vec![2, 2, 2])).unwrap();
        assert_eq!(enumerate_subgroups(&g, 10, false).unwrap_err(), GroupError::CapExceeded(10));
        let big = make_group(&GroupSpec::Cyclic(600)).unwrap();
        assert_eq!(count_subgroups(&big, DEFAULT_CAP, false).unwrap_err(), GroupError::Unsupported(600));
        assert_eq!(count_subgroups(&big, DEFAULT_CAP, true).unwrap(), 24);
        assert!(brute_subset_oracle(&big).is_err());
    }

    #[test]
    fn solvability() {
        for (s, want) in [("sym4", true), ("alt5", false), ("dih7", true), ("alt5*c2", false), ("c1", true)] {
            let g = make_group(&s.parse::<GroupSpec>().unwrap()).unwrap();
            assert_eq!(is_solvable(&g), want, "{s}");
        }
    }
}
