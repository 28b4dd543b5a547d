//! Boundary partitions of the degree set `{1, …, d}` and the `S_d` action on them.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported total degree. Sides are stored as `u32` bitmasks.
pub const MAX_D: u8 = 16;

/// A subset of `{1, …, d}`; bit `i - 1` marks element `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Side(u32);

impl Side {
    pub const EMPTY: Side = Side(0);

    pub fn from_bits(bits: u32) -> Side {
        Side(bits)
    }

    pub fn from_elems(elems: &[u8]) -> Side {
        Side(elems.iter().fold(0, |acc, &e| acc | 1 << (e - 1)))
    }

    pub fn full(d: u8) -> Side {
        Side(((1u64 << d) - 1) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u8) -> bool {
        e >= 1 && self.0 & (1 << (e - 1)) != 0
    }

    pub fn elems(self) -> Vec<u8> {
        (1..=32u8).filter(|&e| self.contains(e)).collect()
    }

    pub fn complement(self, d: u8) -> Side {
        Side(Side::full(d).0 & !self.0)
    }

    pub fn is_subset(self, other: Side) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Side) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Side) -> Side {
        Side(self.0 | other.0)
    }

    pub fn intersection(self, other: Side) -> Side {
        Side(self.0 & other.0)
    }

    pub fn minus(self, other: Side) -> Side {
        Side(self.0 & !other.0)
    }

    /// Compact label used in variable names: `{1,3}` becomes `13`.
    /// Elements above 9 are comma-separated to stay unambiguous.
    pub fn label(self) -> String {
        let e = self.elems();
        if e.iter().all(|&x| x < 10) {
            e.iter().map(|x| x.to_string()).collect()
        } else {
            e.iter().join(",")
        }
    }

    /// Sort key: smaller sides first, then lexicographic on elements.
    fn key(self) -> (usize, Vec<u8>) {
        (self.len(), self.elems())
    }
}

impl PartialOrd for Side {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Side {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elems().iter().join(","))
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Nonempty strict subsets of `h`, smallest first.
pub fn proper_subsets(h: Side) -> Vec<Side> {
    let mut out = Vec::new();
    let full = h.bits();
    let mut sub = (full.wrapping_sub(1)) & full;
    while sub != 0 {
        out.push(Side(sub));
        sub = (sub - 1) & full;
    }
    out.sort();
    out
}

/// An unordered 2-partition `{h, h̄}` of `{1, …, d}`.
///
/// The side containing `1` is the canonical one; it carries the `F` variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    d: u8,
    side: Side,
}

impl Partition {
    /// Builds the partition having `side` as one of its two parts.
    pub fn new(d: u8, side: Side) -> Result<Partition> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        if d > MAX_D || side.is_empty() || !side.is_subset(Side::full(d)) || side == Side::full(d)
        {
            return Err(Error::BadSide { side: side.to_string(), d });
        }
        let side = if side.contains(1) { side } else { side.complement(d) };
        Ok(Partition { d, side })
    }

    pub fn d(self) -> u8 {
        self.d
    }

    /// The side containing `1`.
    pub fn canonical(self) -> Side {
        self.side
    }

    /// The side not containing `1`.
    pub fn other(self) -> Side {
        self.side.complement(self.d)
    }

    pub fn sides(self) -> [Side; 2] {
        [self.canonical(), self.other()]
    }

    pub fn has_side(self, s: Side) -> bool {
        s == self.canonical() || s == self.other()
    }

    /// The complementary side of `s`, which must be a side of `self`.
    pub fn opposite(self, s: Side) -> Side {
        debug_assert!(self.has_side(s));
        s.complement(self.d)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.d, self.side).cmp(&(other.d, other.side))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]|d={}", self.side.elems().iter().join(","), self.d)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses the serialized form `[1,3]|d=4`.
    fn from_str(s: &str) -> Result<Partition> {
        let bad = || Error::Parse(s.to_string());
        let (set, d) = s.trim().split_once('|').ok_or_else(bad)?;
        let d: u8 = d.trim().strip_prefix("d=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let inner = set.trim().strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?;
        let elems: Vec<u8> = inner
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if elems.iter().any(|&e| e == 0 || e > d) {
            return Err(bad());
        }
        Partition::new(d, Side::from_elems(&elems))
    }
}

/// All `2^{d-1} - 1` partitions, ordered by canonical side (smaller sides first).
pub fn enumerate_partitions(d: u8) -> Result<Vec<Partition>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if d > MAX_D {
        return Err(Error::BadSide { side: "full".into(), d });
    }
    let mut out: Vec<Partition> = (1..(1u32 << d) - 1)
        .map(Side)
        .filter(|s| s.contains(1))
        .map(|side| Partition { d, side })
        .collect();
    out.sort();
    Ok(out)
}

/// Two partitions cross when all four pairwise side intersections are nonempty.
pub fn is_crossing(p: Partition, q: Partition) -> Result<bool> {
    if p.d != q.d {
        return Err(Error::MismatchedDegree(p.d, q.d));
    }
    Ok(p.sides()
        .iter()
        .all(|a| q.sides().iter().all(|b| a.intersects(*b))))
}

/// Which subsets `h″` count as interior points of a chain interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetMode {
    /// `h̄′ ⊊ h″ ⊊ h`.
    #[default]
    Strict,
    /// `h̄′ ⊆ h″ ⊆ h`.
    Inclusive,
}

impl FromStr for SubsetMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<SubsetMode> {
        match s {
            "strict" => Ok(SubsetMode::Strict),
            "inclusive" => Ok(SubsetMode::Inclusive),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for SubsetMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubsetMode::Strict => "strict",
            SubsetMode::Inclusive => "inclusive",
        })
    }
}

/// Orients a distinct non-crossing pair: returns sides `h` of `p` and `h′` of `q`
/// with `h ∪ h′ = {1..d}` and `h ∩ h′ ≠ ∅`. Such sides are unique.
pub fn orient(p: Partition, q: Partition) -> Result<(Side, Side)> {
    if is_crossing(p, q)? {
        return Err(Error::Crossing(p.to_string(), q.to_string()));
    }
    let full = Side::full(p.d);
    for h in p.sides() {
        for hp in q.sides() {
            if h.union(hp) == full && h.intersects(hp) {
                return Ok((h, hp));
            }
        }
    }
    Err(Error::NoOrientation(p.to_string(), q.to_string()))
}

/// Sides `h″` between `h̄′` and `h`, where `(h, h′)` is the orientation of `(p, q)`.
///
/// Returned as `(partition, side)` pairs, smallest side first.
pub fn chain_range(p: Partition, q: Partition, mode: SubsetMode) -> Result<Vec<(Partition, Side)>> {
    let (h, hp) = orient(p, q)?;
    let low = hp.complement(p.d);
    let free = h.minus(low);
    let mut out = Vec::new();
    let mut sub = free.bits();
    loop {
        let mid = low.union(Side(sub));
        let endpoint = mid == low || mid == h;
        if !(endpoint && mode == SubsetMode::Strict) {
            out.push((Partition::new(p.d, mid)?, mid));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free.bits();
    }
    out.sort_by_key(|&(_, s)| s);
    Ok(out)
}

/// A permutation of `{1, …, d}`; `images[i - 1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(d: u8) -> Permutation {
        Permutation { images: (1..=d).collect() }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Permutation> {
        let d = images.len() as u8;
        let mut seen = images.clone();
        seen.sort_unstable();
        if seen != (1..=d).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("{images:?} is not a permutation")));
        }
        Ok(Permutation { images })
    }

    /// The transposition exchanging `i` and `j`.
    pub fn transposition(d: u8, i: u8, j: u8) -> Permutation {
        let mut p = Permutation::identity(d);
        p.images.swap(i as usize - 1, j as usize - 1);
        p
    }

    /// Every element of `S_d`, in lexicographic order of images.
    pub fn all(d: u8) -> Vec<Permutation> {
        (1..=d)
            .permutations(d as usize)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn d(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize - 1] = i as u8 + 1;
        }
        Permutation { images }
    }

    pub fn act_side(&self, s: Side) -> Side {
        Side(s.elems().iter().fold(0, |acc, &e| acc | 1 << (self.apply(e) - 1)))
    }
}

/// Image of a partition under `σ`, re-canonicalized.
pub fn act(sigma: &Permutation, p: Partition) -> Partition {
    Partition::new(p.d, sigma.act_side(p.canonical())).expect("image of a proper side is proper")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(d: u8, e: &[u8]) -> Partition {
        Partition::new(d, Side::from_elems(e)).unwrap()
    }

    #[test]
    fn counts() {
        for d in 1..=6u8 {
            assert_eq!(enumerate_partitions(d).unwrap().len(), (1usize << (d - 1)) - 1);
        }
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn crossing_examples() {
        assert!(is_crossing(part(4, &[1, 2]), part(4, &[2, 3])).unwrap());
        assert!(!is_crossing(part(4, &[1]), part(4, &[1, 2])).unwrap());
        let ps = enumerate_partitions(3).unwrap();
        for p in &ps {
            assert!(!is_crossing(*p, *p).unwrap());
            for q in &ps {
                assert!(!is_crossing(*p, *q).unwrap());
            }
        }
        assert!(is_crossing(part(3, &[1]), part(4, &[1])).is_err());
    }

    #[test]
    fn chain_examples() {
        let p = part(4, &[1, 2, 3]);
        let q = part(4, &[3, 4]);
        let inc: Vec<Side> =
            chain_range(p, q, SubsetMode::Inclusive).unwrap().into_iter().map(|x| x.1).collect();
        assert_eq!(inc, vec![Side::from_elems(&[1, 2]), Side::from_elems(&[1, 2, 3])]);
        assert!(chain_range(p, q, SubsetMode::Strict).unwrap().is_empty());

        let inc: Vec<Side> = chain_range(part(3, &[1, 2]), part(3, &[2, 3]), SubsetMode::Inclusive)
            .unwrap()
            .into_iter()
            .map(|x| x.1)
            .collect();
        assert_eq!(inc, vec![Side::from_elems(&[1]), Side::from_elems(&[1, 2])]);

        let mids = chain_range(part(5, &[1, 2, 3, 4]), part(5, &[3, 4, 5]), SubsetMode::Strict).unwrap();
        let sides: Vec<Side> = mids.into_iter().map(|x| x.1).collect();
        assert_eq!(sides, vec![Side::from_elems(&[1, 2, 3]), Side::from_elems(&[1, 2, 4])]);
    }

    #[test]
    fn chain_rejects_crossing() {
        assert!(chain_range(part(4, &[1, 2]), part(4, &[1, 3]), SubsetMode::Strict).is_err());
    }

    #[test]
    fn action_examples() {
        let p = part(3, &[1]);
        assert_eq!(act(&Permutation::identity(3), p), p);
        let s = Permutation::transposition(3, 1, 2);
        assert_eq!(act(&s, p), part(3, &[2]));
        let orbit: std::collections::BTreeSet<Partition> =
            Permutation::all(3).iter().map(|g| act(g, p)).collect();
        assert_eq!(orbit.len(), 3);
    }

    #[test]
    fn action_is_compatible_with_composition() {
        for d in 1..=4u8 {
            let group = Permutation::all(d);
            for p in enumerate_partitions(d).unwrap() {
                for s in &group {
                    for t in &group {
                        assert_eq!(act(&s.compose(t), p), act(s, act(t, p)));
                    }
                }
            }
        }
    }

    #[test]
    fn proper_subset_examples() {
        assert!(proper_subsets(Side::from_elems(&[1])).is_empty());
        assert_eq!(
            proper_subsets(Side::from_elems(&[1, 2])),
            vec![Side::from_elems(&[1]), Side::from_elems(&[2])]
        );
        assert_eq!(proper_subsets(Side::from_elems(&[1, 2, 3])).len(), 6);
    }

    #[test]
    fn serialization_round_trip() {
        let p = part(4, &[1, 3]);
        assert_eq!(p.to_string(), "[1,3]|d=4");
        assert_eq!("[1,3]|d=4".parse::<Partition>().unwrap(), p);
        assert_eq!("[2,4]|d=4".parse::<Partition>().unwrap(), p);
        assert!("[1,2]|d=2".parse::<Partition>().is_err());
    }
}
