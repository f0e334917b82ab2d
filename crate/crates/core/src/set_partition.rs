//! Set partitions of `[m]` in restricted-growth canonical form, the
//! refinement-product (join) monoid, linear partitions, FitzGerald
//! decomposition into atoms `e_{i,j}`, and double partitions.
//!
//! Points are 1-based in every public constructor, accessor and in the text
//! format (`1,4|2,5,7|3|6`). The assignment array is 0-based: entry `p` is the
//! block index of point `p + 1`, blocks numbered by their minimum element.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parallel;
use crate::union_find::UnionFind;

/// Largest ground set the byte-sized block labels can hold.
pub const MAX_GROUND_SIZE: usize = 255;

/// Largest `m` accepted by [`enumerate_partitions`].
pub const MAX_ENUMERATION_SIZE: usize = 16;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    assignment: Vec<u8>,
}

impl SetPartition {
    /// Canonicalize a list of 1-based blocks covering `[m]`.
    pub fn from_blocks<B: AsRef<[usize]>>(blocks: &[B], m: usize) -> Result<Self> {
        check_ground(m)?;
        let mut raw = vec![0usize; m];
        let mut seen = vec![false; m];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::MalformedPartition(format!("block {} is empty", b + 1)));
            }
            for &x in block {
                if x == 0 || x > m {
                    return Err(Error::MalformedPartition(format!(
                        "element {x} outside [1, {m}]"
                    )));
                }
                if seen[x - 1] {
                    return Err(Error::MalformedPartition(format!(
                        "element {x} occurs more than once"
                    )));
                }
                seen[x - 1] = true;
                raw[x - 1] = b;
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedPartition(format!("element {} is missing", p + 1)));
        }
        Ok(Self::from_labels(&raw))
    }

    /// Canonicalize an arbitrary labelling: points with equal labels share a block.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut map = std::collections::HashMap::with_capacity(labels.len());
        let mut assignment = Vec::with_capacity(labels.len());
        for l in labels {
            let next = map.len() as u8;
            assignment.push(*map.entry(*l).or_insert(next));
        }
        SetPartition { assignment }
    }

    /// Build from a 0-based assignment that is already in restricted-growth form.
    pub fn from_rgs(assignment: Vec<u8>) -> Result<Self> {
        check_ground(assignment.len())?;
        let mut max: i32 = -1;
        for &a in &assignment {
            if a as i32 > max + 1 {
                return Err(Error::MalformedPartition(format!(
                    "{assignment:?} is not a restricted growth string"
                )));
            }
            max = max.max(a as i32);
        }
        Ok(SetPartition { assignment })
    }

    pub(crate) fn from_rgs_unchecked(assignment: Vec<u8>) -> Self {
        SetPartition { assignment }
    }

    /// Relabel a 0-based labelling given as small integers (fast path).
    pub(crate) fn canonical_from_bytes(labels: &[u8]) -> Self {
        let mut map = [u8::MAX; 256];
        let mut next = 0u8;
        let assignment = labels
            .iter()
            .map(|&l| {
                let slot = &mut map[l as usize];
                if *slot == u8::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        SetPartition { assignment }
    }

    /// Relabel arbitrary small integer labels (for example union-find roots).
    pub(crate) fn canonical_from_indices(labels: &[usize]) -> Self {
        let size = labels.iter().copied().max().map_or(0, |x| x + 1);
        let mut map = vec![u8::MAX; size];
        let mut next = 0u8;
        let assignment = labels
            .iter()
            .map(|&l| {
                if map[l] == u8::MAX {
                    map[l] = next;
                    next += 1;
                }
                map[l]
            })
            .collect();
        SetPartition { assignment }
    }

    /// The partition into singletons (the unity of the join monoid).
    pub fn unity(m: usize) -> Result<Self> {
        check_ground(m)?;
        Ok(SetPartition {
            assignment: (0..m as u8).collect(),
        })
    }

    /// The one-block partition.
    pub fn full(m: usize) -> Result<Self> {
        check_ground(m)?;
        Ok(SetPartition {
            assignment: vec![0; m],
        })
    }

    /// `e_A`: the block `A` plus singletons.
    pub fn atom(m: usize, a: &[usize]) -> Result<Self> {
        check_ground(m)?;
        if a.is_empty() {
            return Err(Error::IndexOutOfRange("atom needs a nonempty set".into()));
        }
        if let Some(&x) = a.iter().find(|&&x| x == 0 || x > m) {
            return Err(Error::IndexOutOfRange(format!("{x} outside [1, {m}]")));
        }
        let min = *a.iter().min().unwrap();
        let labels: Vec<usize> = (1..=m)
            .map(|x| if a.contains(&x) { min } else { x })
            .collect();
        Ok(Self::from_labels(&labels))
    }

    /// `e_{i,j}` with `i != j`.
    pub fn tie(m: usize, i: usize, j: usize) -> Result<Self> {
        Self::atom(m, &[i, j])
    }

    pub fn ground_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.assignment.iter().map(|&a| a as usize + 1).max().unwrap_or(0)
    }

    pub fn assignment(&self) -> &[u8] {
        &self.assignment
    }

    /// Block index of 1-based point `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.assignment[x - 1] as usize
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.assignment[x - 1] == self.assignment[y - 1]
    }

    /// Blocks as sorted 1-based point lists, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (p, &a) in self.assignment.iter().enumerate() {
            out[a as usize].push(p + 1);
        }
        out
    }

    pub fn is_unity(&self) -> bool {
        self.num_blocks() == self.ground_size()
    }

    /// Finest common coarsening (the product by refinement).
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        self.check_same(other)?;
        Ok(self.join_unchecked(other))
    }

    pub(crate) fn join_unchecked(&self, other: &SetPartition) -> SetPartition {
        let m = self.ground_size();
        let mut uf = UnionFind::new(m);
        uf.union_labels(&self.assignment, 0);
        uf.union_labels(&other.assignment, 0);
        let roots: Vec<u8> = (0..m).map(|p| uf.find(p) as u8).collect();
        SetPartition::canonical_from_bytes(&roots)
    }

    /// `self ⪯ other`: every block of `other` is a union of blocks of `self`.
    pub fn finer_than(&self, other: &SetPartition) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.finer_than_unchecked(other))
    }

    pub(crate) fn finer_than_unchecked(&self, other: &SetPartition) -> bool {
        let mut image = [u8::MAX; 256];
        for (&a, &b) in self.assignment.iter().zip(&other.assignment) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }

    /// Every block is an interval of consecutive integers.
    pub fn is_linear(&self) -> bool {
        // in RGS form a linear partition is a nondecreasing string with unit steps
        self.assignment
            .windows(2)
            .all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// FitzGerald decomposition: for each block `{i_1 < ... < i_t}` in canonical
    /// order, the atoms `e_{i_1,i_2}, ..., e_{i_{t-1},i_t}`.
    pub fn fitzgerald_decompose(&self) -> Vec<(usize, usize)> {
        self.blocks()
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
            .collect()
    }

    /// Evaluate a word of atoms `e_{i,j}` under join.
    pub fn from_ties(m: usize, ties: &[(usize, usize)]) -> Result<SetPartition> {
        check_ground(m)?;
        let mut uf = UnionFind::new(m);
        for &(i, j) in ties {
            if i == 0 || j == 0 || i > m || j > m {
                return Err(Error::IndexOutOfRange(format!("e{{{i},{j}}} in [1, {m}]")));
            }
            uf.union(i - 1, j - 1);
        }
        let roots: Vec<u8> = (0..m).map(|p| uf.find(p) as u8).collect();
        Ok(SetPartition::canonical_from_bytes(&roots))
    }

    /// Restriction to the 1-based points listed, renumbered `1..=points.len()`.
    pub fn restrict(&self, points: &[usize]) -> SetPartition {
        let labels: Vec<u8> = points.iter().map(|&x| self.assignment[x - 1]).collect();
        SetPartition::canonical_from_bytes(&labels)
    }

    fn check_same(&self, other: &SetPartition) -> Result<()> {
        if self.ground_size() != other.ground_size() {
            return Err(Error::SizeMismatch {
                left: self.ground_size(),
                right: other.ground_size(),
            });
        }
        Ok(())
    }
}

fn check_ground(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::MalformedPartition("empty ground set".into()));
    }
    if m > MAX_GROUND_SIZE {
        return Err(Error::BoundExceeded {
            size: m,
            bound: MAX_GROUND_SIZE,
        });
    }
    Ok(())
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        for (b, block) in blocks.iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (k, x) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `1,4|2,5,7|3|6`; the ground size is the largest element.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s, |tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad element {tok:?}")))
        })?;
        let m = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::from_blocks(&blocks, m)
    }
}

/// Split `a,b|c` into blocks, ignoring whitespace.
pub(crate) fn parse_blocks<T>(
    s: &str,
    mut item: impl FnMut(&str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty partition text".into()));
    }
    compact
        .split('|')
        .map(|block| {
            if block.is_empty() {
                return Err(Error::Parse(format!("empty block in {s:?}")));
            }
            block.split(',').map(&mut item).collect()
        })
        .collect()
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Restricted-growth-string enumeration of the partitions of `[m]`, in
/// lexicographic order of the assignment arrays.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    rgs: Vec<u8>,
    prefix_max: Vec<u8>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl PartitionIter {
    /// Completions of a fixed restricted-growth prefix.
    pub fn with_prefix(m: usize, prefix: &[u8]) -> Result<Self> {
        check_ground(m)?;
        if prefix.len() > m {
            return Err(Error::OutsideDomain("prefix longer than ground set".into()));
        }
        let mut rgs = vec![0u8; m];
        rgs[..prefix.len()].copy_from_slice(prefix);
        let mut prefix_max = vec![0u8; m];
        let mut max = 0u8;
        for p in 0..m {
            if p < prefix.len() && ((p == 0 && rgs[0] != 0) || (p > 0 && rgs[p] > max + 1)) {
                return Err(Error::MalformedPartition(format!(
                    "prefix {prefix:?} is not a restricted growth string"
                )));
            }
            max = max.max(rgs[p]);
            prefix_max[p] = max;
        }
        Ok(PartitionIter {
            rgs,
            prefix_max,
            fixed: prefix.len().max(1),
            started: false,
            done: false,
        })
    }

    /// Advance and expose the current assignment without allocating.
    pub fn advance(&mut self) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.rgs);
        }
        let m = self.rgs.len();
        let mut p = m;
        while p > self.fixed {
            p -= 1;
            if self.rgs[p] <= self.prefix_max[p - 1] {
                self.rgs[p] += 1;
                self.prefix_max[p] = self.prefix_max[p - 1].max(self.rgs[p]);
                for q in p + 1..m {
                    self.rgs[q] = 0;
                    self.prefix_max[q] = self.prefix_max[p];
                }
                return Some(&self.rgs);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for PartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.advance().map(|a| SetPartition::from_rgs_unchecked(a.to_vec()))
    }
}

/// All partitions of `[m]`, each once, in restricted-growth lexicographic order.
pub fn enumerate_partitions(m: usize) -> Result<PartitionIter> {
    if m > MAX_ENUMERATION_SIZE {
        return Err(Error::BoundExceeded {
            size: m,
            bound: MAX_ENUMERATION_SIZE,
        });
    }
    PartitionIter::with_prefix(m, &[])
}

/// Linear partitions of `[m]` in the same lexicographic order (`2^{m-1}` of them).
pub fn enumerate_linear(m: usize) -> Result<impl Iterator<Item = SetPartition>> {
    check_ground(m)?;
    if m > 63 {
        return Err(Error::BoundExceeded { size: m, bound: 63 });
    }
    let steps = m - 1;
    Ok((0u64..(1u64 << steps)).map(move |mask| {
        let mut a = Vec::with_capacity(m);
        a.push(0u8);
        for s in 0..steps {
            // the first step is the most significant bit
            let bit = (mask >> (steps - 1 - s)) & 1;
            let last = *a.last().unwrap();
            a.push(last + bit as u8);
        }
        SetPartition::from_rgs_unchecked(a)
    }))
}

/// Count the partitions of `[m]` whose assignment satisfies `pred`, splitting
/// the enumeration by restricted-growth prefixes across threads.
pub fn count_partitions_where<F>(m: usize, pred: F) -> Result<u64>
where
    F: Fn(&[u8]) -> bool + Sync,
{
    if m > MAX_ENUMERATION_SIZE {
        return Err(Error::BoundExceeded {
            size: m,
            bound: MAX_ENUMERATION_SIZE,
        });
    }
    check_ground(m)?;
    let split = m.min(6);
    let prefixes: Vec<Vec<u8>> = {
        let mut it = PartitionIter::with_prefix(split, &[])?;
        let mut v = Vec::new();
        while let Some(a) = it.advance() {
            v.push(a.to_vec());
        }
        v
    };
    let counts = parallel::map(&prefixes, |prefix| {
        let mut it = PartitionIter::with_prefix(m, prefix).expect("valid prefix");
        let mut c = 0u64;
        while let Some(a) = it.advance() {
            if pred(a) {
                c += 1;
            }
        }
        c
    });
    Ok(counts.into_iter().sum())
}

/// A pair `(I, R)` of partitions of the same set with `I ⪯ R`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DoublePartition {
    fine: SetPartition,
    coarse: SetPartition,
}

impl DoublePartition {
    pub fn new(fine: SetPartition, coarse: SetPartition) -> Result<Self> {
        if !fine.finer_than(&coarse)? {
            return Err(Error::NotRefinement(format!("{fine} vs {coarse}")));
        }
        Ok(DoublePartition { fine, coarse })
    }

    pub fn unity(m: usize) -> Result<Self> {
        let u = SetPartition::unity(m)?;
        Ok(DoublePartition {
            fine: u.clone(),
            coarse: u,
        })
    }

    pub fn fine(&self) -> &SetPartition {
        &self.fine
    }

    pub fn coarse(&self) -> &SetPartition {
        &self.coarse
    }

    /// Componentwise join.
    pub fn join(&self, other: &DoublePartition) -> Result<DoublePartition> {
        Ok(DoublePartition {
            fine: self.fine.join(&other.fine)?,
            coarse: self.coarse.join(&other.coarse)?,
        })
    }
}

impl fmt::Display for DoublePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.fine, self.coarse)
    }
}

/// Brute-force enumeration of the double partitions of `[m]`.
pub fn enumerate_double_partitions(m: usize) -> Result<Vec<DoublePartition>> {
    let all: Vec<SetPartition> = enumerate_partitions(m)?.collect();
    let mut out = Vec::new();
    for i in &all {
        for r in &all {
            if i.finer_than_unchecked(r) {
                out.push(DoublePartition {
                    fine: i.clone(),
                    coarse: r.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{bell, binomial, stirling2};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_numbers_blocks_by_minimum() {
        let q = SetPartition::from_blocks(&[vec![2, 5], vec![1], vec![3, 4]], 5).unwrap();
        assert_eq!(q.assignment(), &[0, 1, 2, 2, 1]);
        let u = SetPartition::from_blocks(&[vec![3], vec![1], vec![2]], 3).unwrap();
        assert_eq!(u, SetPartition::unity(3).unwrap());
        let fig = SetPartition::from_blocks(&[vec![1, 4], vec![2, 5, 7], vec![3], vec![6]], 7)
            .unwrap();
        assert_eq!(fig.to_string(), "1,4|2,5,7|3|6");
        // element order inside blocks is irrelevant
        let again = SetPartition::from_blocks(&[vec![6], vec![7, 5, 2], vec![4, 1], vec![3]], 7)
            .unwrap();
        assert_eq!(fig, again);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        for (blocks, m) in [
            (vec![vec![1, 2], vec![2, 3]], 3),
            (vec![vec![1], vec![3]], 3),
            (vec![vec![1, 4]], 3),
            (vec![vec![1, 2], vec![]], 2),
        ] {
            assert!(matches!(
                SetPartition::from_blocks(&blocks, m),
                Err(Error::MalformedPartition(_))
            ));
        }
        assert!(SetPartition::unity(0).is_err());
    }

    #[test]
    fn join_examples() {
        assert_eq!(p("1,2|3").join(&p("1|2,3")).unwrap(), p("1,2,3"));
        let q = p("1,3|2|4");
        assert_eq!(q.join(&SetPartition::unity(4).unwrap()).unwrap(), q);
        let e = |i, j| SetPartition::tie(4, i, j).unwrap();
        let a = e(1, 2).join(&e(2, 3)).unwrap();
        assert_eq!(a, e(1, 2).join(&e(1, 3)).unwrap());
        assert_eq!(a, e(2, 3).join(&e(1, 3)).unwrap());
        assert!(matches!(
            p("1|2").join(&p("1|2|3")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn atoms() {
        assert_eq!(SetPartition::atom(4, &[1, 3]).unwrap(), p("1,3|2|4"));
        assert!(SetPartition::atom(4, &[2]).unwrap().is_unity());
        assert_eq!(SetPartition::atom(3, &[1, 2, 3]).unwrap(), p("1,2,3"));
        assert!(SetPartition::atom(3, &[]).is_err());
        assert!(SetPartition::atom(3, &[4]).is_err());
    }

    #[test]
    fn finer_than_examples() {
        assert!(p("1,2|3").finer_than(&p("1,2,3")).unwrap());
        assert!(!p("1,2,3").finer_than(&p("1,2|3")).unwrap());
        assert!(!p("1,2|3").finer_than(&p("1,3|2")).unwrap());
    }

    #[test]
    fn fitzgerald_examples() {
        let k = SetPartition::atom(4, &[1, 3, 4]).unwrap();
        assert_eq!(k.fitzgerald_decompose(), vec![(1, 3), (3, 4)]);
        assert!(SetPartition::unity(5).unwrap().fitzgerald_decompose().is_empty());
    }

    #[test]
    fn fitzgerald_round_trip_exhaustive() {
        for m in 1..=6 {
            for q in enumerate_partitions(m).unwrap() {
                let w = q.fitzgerald_decompose();
                assert_eq!(SetPartition::from_ties(m, &w).unwrap(), q);
                // consecutive-within-block shape
                for &(i, j) in &w {
                    assert!(i < j && q.same_block(i, j));
                    assert!((i + 1..j).all(|x| !q.same_block(i, x)));
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(1).unwrap().count(), 1);
        assert_eq!(enumerate_partitions(3).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(8).unwrap().count(), 4140);
        for m in 1..=8 {
            let all: Vec<_> = enumerate_partitions(m).unwrap().collect();
            assert_eq!(BigUint::from(all.len()), bell(m));
            for k in 1..=m {
                let c = all.iter().filter(|q| q.num_blocks() == k).count();
                assert_eq!(BigUint::from(c), stirling2(m, k));
            }
            assert!(all.windows(2).all(|w| w[0].assignment() < w[1].assignment()));
        }
        assert!(enumerate_partitions(MAX_ENUMERATION_SIZE + 1).is_err());
    }

    #[test]
    fn brute_force_partition_count_m3() {
        // independent oracle: all maps [3] -> [3] modulo relabelling
        let mut seen = std::collections::HashSet::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    seen.insert(SetPartition::from_labels(&[a, b, c]));
                }
            }
        }
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn linear_partitions() {
        assert!(p("1|2|3,4,5,6|7,8|9").is_linear());
        assert!(!p("1,3|2").is_linear());
        for m in 1..=8 {
            let lin: Vec<_> = enumerate_linear(m).unwrap().collect();
            assert_eq!(lin.len(), 1 << (m - 1));
            assert!(lin.iter().all(|q| q.is_linear()));
            let filtered: Vec<_> = enumerate_partitions(m)
                .unwrap()
                .filter(|q| q.is_linear())
                .collect();
            assert_eq!(lin, filtered);
            for k in 1..=m {
                let c = lin.iter().filter(|q| q.num_blocks() == k).count();
                assert_eq!(BigUint::from(c), binomial(m - 1, k - 1));
            }
        }
        assert_eq!(enumerate_linear(6).unwrap().count(), 32);
    }

    #[test]
    fn linear_partitions_generated_by_adjacent_ties() {
        for m in 1..=7 {
            let mut set = std::collections::BTreeSet::new();
            let mut frontier = vec![SetPartition::unity(m).unwrap()];
            set.insert(frontier[0].clone());
            while let Some(x) = frontier.pop() {
                for i in 1..m {
                    let y = x.join(&SetPartition::tie(m, i, i + 1).unwrap()).unwrap();
                    if set.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
            let lin: std::collections::BTreeSet<_> = enumerate_linear(m).unwrap().collect();
            assert_eq!(set, lin);
        }
    }

    #[test]
    fn join_laws_exhaustive_small() {
        for m in 1..=4 {
            let all: Vec<_> = enumerate_partitions(m).unwrap().collect();
            let u = SetPartition::unity(m).unwrap();
            for a in &all {
                assert_eq!(a.join(a).unwrap(), *a);
                assert_eq!(a.join(&u).unwrap(), *a);
                assert!(u.finer_than(a).unwrap());
                for b in &all {
                    let ab = a.join(b).unwrap();
                    assert_eq!(ab, b.join(a).unwrap());
                    assert_eq!(a.finer_than(b).unwrap(), ab == *b);
                    if a.finer_than(b).unwrap() && b.finer_than(a).unwrap() {
                        assert_eq!(a, b);
                    }
                    for c in &all {
                        assert_eq!(ab.join(c).unwrap(), a.join(&b.join(c).unwrap()).unwrap());
                        if a.finer_than(b).unwrap() && b.finer_than(c).unwrap() {
                            assert!(a.finer_than(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fitzgerald_relations_hold() {
        for m in 2..=6 {
            let e = |i, j| SetPartition::tie(m, i, j).unwrap();
            for i in 1..=m {
                for j in i + 1..=m {
                    assert_eq!(e(i, j).join(&e(i, j)).unwrap(), e(i, j));
                    for r in 1..=m {
                        for s in r + 1..=m {
                            assert_eq!(e(i, j).join(&e(r, s)).unwrap(), e(r, s).join(&e(i, j)).unwrap());
                        }
                    }
                    for k in j + 1..=m {
                        let a = e(i, j).join(&e(j, k)).unwrap();
                        assert_eq!(a, e(i, j).join(&e(i, k)).unwrap());
                        assert_eq!(a, e(j, k).join(&e(i, k)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_count_matches_sequential() {
        let seq = enumerate_partitions(9).unwrap().filter(|q| q.num_blocks() == 3).count() as u64;
        let par = count_partitions_where(9, |a| a.iter().max() == Some(&2)).unwrap();
        assert_eq!(seq, par);
        assert_eq!(count_partitions_where(3, |_| true).unwrap(), 5);
    }

    #[test]
    fn double_partitions_count() {
        // sum_k S(m,k) b_k
        for m in 1..=5 {
            let expected = (1..=m).fold(BigUint::from(0u8), |acc, k| acc + stirling2(m, k) * bell(k));
            assert_eq!(BigUint::from(enumerate_double_partitions(m).unwrap().len()), expected);
        }
        let d = DoublePartition::new(p("1|2|3"), p("1,2|3")).unwrap();
        assert!(DoublePartition::new(p("1,2|3"), p("1|2|3")).is_err());
        assert_eq!(d.to_string(), "1|2|3 ; 1,2|3");
    }

    fn arb_partition(max_m: usize) -> impl Strategy<Value = SetPartition> {
        (1..=max_m).prop_flat_map(|m| {
            proptest::collection::vec(0usize..m, m).prop_map(|l| SetPartition::from_labels(&l))
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(q in arb_partition(12)) {
            let back: SetPartition = q.to_string().parse().unwrap();
            prop_assert_eq!(&back, &q);
            let spaced = q.to_string().replace('|', " | ").replace(',', " , ");
            prop_assert_eq!(spaced.parse::<SetPartition>().unwrap(), q.clone());
            prop_assert_eq!(SetPartition::from_blocks(&q.blocks(), q.ground_size()).unwrap(), q);
        }

        #[test]
        fn join_laws_random(labels in proptest::collection::vec((0usize..10, 0usize..10, 0usize..10), 3..14)) {
            let a = SetPartition::from_labels(&labels.iter().map(|t| t.0).collect::<Vec<_>>());
            let b = SetPartition::from_labels(&labels.iter().map(|t| t.1).collect::<Vec<_>>());
            let c = SetPartition::from_labels(&labels.iter().map(|t| t.2).collect::<Vec<_>>());
            let ab = a.join(&b).unwrap();
            prop_assert_eq!(&ab, &b.join(&a).unwrap());
            prop_assert_eq!(ab.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
            prop_assert!(a.finer_than(&ab).unwrap() && b.finer_than(&ab).unwrap());
            prop_assert_eq!(a.finer_than(&b).unwrap(), ab == b);
        }
    }
}
