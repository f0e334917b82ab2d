//! Elements of the partition monoid `C_n`: set partitions of the `2n` points
//! `1..n` (top row) and `1'..n'` (bottom row), the concatenation product, the
//! generators `L_i`, `H_i`, `E_{i,j}` and classification predicates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set_partition::{parse_blocks, SetPartition, MAX_GROUND_SIZE};
use crate::union_find::UnionFind;

/// Largest strand count a [`Diagram`] can hold.
pub const MAX_STRANDS: usize = MAX_GROUND_SIZE / 2;

/// A 1-based point of a diagram: `Top(k)` is `k`, `Bottom(k)` is `k'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Top(usize),
    Bottom(usize),
}

impl Point {
    pub fn index(self) -> usize {
        match self {
            Point::Top(k) | Point::Bottom(k) => k,
        }
    }

    pub fn is_top(self) -> bool {
        matches!(self, Point::Top(_))
    }

    /// Position in the 0-based internal layout (`k -> k-1`, `k' -> n+k-1`).
    fn internal(self, n: usize) -> usize {
        match self {
            Point::Top(k) => k - 1,
            Point::Bottom(k) => n + k - 1,
        }
    }

    fn from_internal(p: usize, n: usize) -> Point {
        if p < n {
            Point::Top(p + 1)
        } else {
            Point::Bottom(p - n + 1)
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Top(k) => write!(f, "{k}"),
            Point::Bottom(k) => write!(f, "{k}'"),
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Point> {
        let (digits, bottom) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let k: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad point {s:?}")))?;
        if k == 0 {
            return Err(Error::Parse("points are numbered from 1".into()));
        }
        Ok(if bottom { Point::Bottom(k) } else { Point::Top(k) })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    partition: SetPartition,
}

/// Which of the named generators to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    L,
    H,
    E,
}

/// Result of [`Diagram::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFlags {
    pub is_brauer: bool,
    pub is_planar: bool,
    pub is_permutation: bool,
    pub up_brackets: usize,
    pub down_brackets: usize,
}

impl Diagram {
    /// Wrap a partition of `2n` points in the internal layout.
    pub fn new(n: usize, partition: SetPartition) -> Result<Self> {
        check_strands(n)?;
        if partition.ground_size() != 2 * n {
            return Err(Error::SizeMismatch {
                left: 2 * n,
                right: partition.ground_size(),
            });
        }
        Ok(Diagram { n, partition })
    }

    pub fn from_blocks<B: AsRef<[Point]>>(n: usize, blocks: &[B]) -> Result<Self> {
        check_strands(n)?;
        let mut internal = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = Vec::with_capacity(block.as_ref().len());
            for &pt in block.as_ref() {
                if pt.index() == 0 || pt.index() > n {
                    return Err(Error::MalformedPartition(format!(
                        "point {pt} outside n = {n}"
                    )));
                }
                b.push(pt.internal(n) + 1);
            }
            internal.push(b);
        }
        Ok(Diagram {
            n,
            partition: SetPartition::from_blocks(&internal, 2 * n)?,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_strands(n)?;
        let labels: Vec<usize> = (0..2 * n).map(|p| p % n).collect();
        Ok(Diagram {
            n,
            partition: SetPartition::from_labels(&labels),
        })
    }

    /// `L_i`: the crossing of strands `i` and `i+1`.
    pub fn l(n: usize, i: usize) -> Result<Self> {
        check_adjacent(n, i)?;
        let labels: Vec<usize> = (0..2 * n)
            .map(|p| {
                let k = p % n + 1;
                if p >= n && (k == i || k == i + 1) {
                    // bottom k' joins the top of the other strand
                    if k == i {
                        i + 1
                    } else {
                        i
                    }
                } else {
                    k
                }
            })
            .collect();
        Ok(Diagram {
            n,
            partition: SetPartition::from_labels(&labels),
        })
    }

    /// `H_i`: brackets `{i, i+1}` and `{i', (i+1)'}`.
    pub fn h(n: usize, i: usize) -> Result<Self> {
        check_adjacent(n, i)?;
        let labels: Vec<usize> = (0..2 * n)
            .map(|p| {
                let k = p % n + 1;
                let bottom = p >= n;
                if k == i || k == i + 1 {
                    if bottom {
                        n + i
                    } else {
                        i
                    }
                } else {
                    k
                }
            })
            .collect();
        Ok(Diagram {
            n,
            partition: SetPartition::from_labels(&labels),
        })
    }

    /// `E_{i,j}`: the block `{i, j, i', j'}` and lines elsewhere; `E_{i,i}` is the identity.
    pub fn e(n: usize, i: usize, j: usize) -> Result<Self> {
        check_strands(n)?;
        for x in [i, j] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange(format!("E index {x} outside [1, {n}]")));
            }
        }
        let labels: Vec<usize> = (0..2 * n)
            .map(|p| {
                let k = p % n + 1;
                if k == j {
                    i
                } else {
                    k
                }
            })
            .collect();
        Ok(Diagram {
            n,
            partition: SetPartition::from_labels(&labels),
        })
    }

    pub fn generator(n: usize, kind: GeneratorKind, i: usize, j: Option<usize>) -> Result<Self> {
        match (kind, j) {
            (GeneratorKind::L, None) => Self::l(n, i),
            (GeneratorKind::H, None) => Self::h(n, i),
            (GeneratorKind::E, Some(j)) => Self::e(n, i, j),
            (GeneratorKind::E, None) => Self::e(n, i, i + 1),
            (kind, Some(_)) => Err(Error::IndexOutOfRange(format!(
                "{kind:?} takes a single index"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn same_block(&self, a: Point, b: Point) -> bool {
        self.partition
            .same_block(a.internal(self.n) + 1, b.internal(self.n) + 1)
    }

    /// Block index of a point, blocks numbered by minimum internal index.
    pub fn block_of(&self, a: Point) -> usize {
        self.partition.block_of(a.internal(self.n) + 1)
    }

    pub fn num_blocks(&self) -> usize {
        self.partition.num_blocks()
    }

    /// Blocks in canonical order (top points before bottom points).
    pub fn blocks(&self) -> Vec<Vec<Point>> {
        self.partition
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(|p| Point::from_internal(p - 1, self.n)).collect())
            .collect()
    }

    /// Restriction to the top row, as a partition of `[n]`.
    pub fn top(&self) -> SetPartition {
        let points: Vec<usize> = (1..=self.n).collect();
        self.partition.restrict(&points)
    }

    /// Restriction to the bottom row, as a partition of `[n]`.
    pub fn bottom(&self) -> SetPartition {
        let points: Vec<usize> = (self.n + 1..=2 * self.n).collect();
        self.partition.restrict(&points)
    }

    /// Concatenation: `self` on top of `other`, middle row fused, loops dropped.
    pub fn concat(&self, other: &Diagram) -> Result<Diagram> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &Diagram) -> Diagram {
        let n = self.n;
        // points of self keep their index; points of other shift by n, so
        // self's bottom row and other's top row share the middle range n..2n
        let mut uf = UnionFind::new(3 * n);
        uf.union_labels(self.partition.assignment(), 0);
        uf.union_labels(other.partition.assignment(), n);
        let labels: Vec<usize> = (0..n)
            .chain(2 * n..3 * n)
            .map(|p| uf.find(p))
            .collect();
        Diagram {
            n,
            partition: SetPartition::canonical_from_indices(&labels),
        }
    }

    /// Brackets within the top row as pairs `a < b`, ordered by `a`.
    pub fn up_brackets(&self) -> Vec<(usize, usize)> {
        self.row_pairs(true)
    }

    /// Brackets within the bottom row as pairs `a < b` of unprimed indices.
    pub fn down_brackets(&self) -> Vec<(usize, usize)> {
        self.row_pairs(false)
    }

    /// Two-point blocks joining `top` to `bottom'`, ordered by `top`.
    pub fn lines(&self) -> Vec<(usize, usize)> {
        self.blocks()
            .into_iter()
            .filter_map(|b| match b.as_slice() {
                [Point::Top(a), Point::Bottom(c)] => Some((*a, *c)),
                _ => None,
            })
            .collect()
    }

    fn row_pairs(&self, top: bool) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .blocks()
            .into_iter()
            .filter_map(|b| match b.as_slice() {
                [Point::Top(a), Point::Top(c)] if top => Some((*a, *c)),
                [Point::Bottom(a), Point::Bottom(c)] if !top => Some((*a, *c)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_brauer(&self) -> bool {
        self.blocks().iter().all(|b| b.len() == 2)
    }

    pub fn is_permutation(&self) -> bool {
        self.blocks()
            .iter()
            .all(|b| b.len() == 2 && b[0].is_top() && !b[1].is_top())
    }

    /// Brauer and noncrossing in the cyclic order `1, ..., n, n', ..., 1'`.
    pub fn is_planar(&self) -> bool {
        if !self.is_brauer() {
            return false;
        }
        let n = self.n;
        let position = |pt: Point| match pt {
            Point::Top(k) => k - 1,
            Point::Bottom(k) => 2 * n - k,
        };
        let mut partner = vec![0usize; 2 * n];
        for b in self.blocks() {
            let (x, y) = (position(b[0]), position(b[1]));
            partner[x] = y;
            partner[y] = x;
        }
        let mut stack = Vec::with_capacity(n);
        for p in 0..2 * n {
            if partner[p] > p {
                stack.push(p);
            } else if stack.pop() != Some(partner[p]) {
                return false;
            }
        }
        true
    }

    pub fn classify(&self) -> DiagramFlags {
        DiagramFlags {
            is_brauer: self.is_brauer(),
            is_planar: self.is_planar(),
            is_permutation: self.is_permutation(),
            up_brackets: self.up_brackets().len(),
            down_brackets: self.down_brackets().len(),
        }
    }

    /// Parse the primed text format with an explicit strand count.
    pub fn parse_with_n(s: &str, n: usize) -> Result<Self> {
        let blocks = parse_blocks(s, |tok| tok.parse::<Point>())?;
        Self::from_blocks(n, &blocks)
    }
}

fn check_strands(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::MalformedPartition("a diagram needs n >= 1".into()));
    }
    if n > MAX_STRANDS {
        return Err(Error::BoundExceeded {
            size: n,
            bound: MAX_STRANDS,
        });
    }
    Ok(())
}

fn check_adjacent(n: usize, i: usize) -> Result<()> {
    check_strands(n)?;
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange(format!(
            "generator index {i} outside [1, {}]",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (k, pt) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{pt}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(n={}, {self})", self.n)
    }
}

impl FromStr for Diagram {
    type Err = Error;

    /// Parses `1,5|2,3|4,3'|...`; `n` is the largest index mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks(s, |tok| tok.parse::<Point>())?;
        let n = blocks.iter().flatten().map(|p| p.index()).max().unwrap_or(0);
        Self::from_blocks(n, &blocks)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    n: usize,
    blocks: Vec<Vec<i64>>,
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            n: d.n,
            blocks: d
                .blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|pt| match *pt {
                            Point::Top(k) => k as i64,
                            Point::Bottom(k) => -(k as i64),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        let blocks: Vec<Vec<Point>> = j
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| match x {
                        0 => Err(Error::Parse("point 0 in JSON diagram".into())),
                        x if x > 0 => Ok(Point::Top(x as usize)),
                        x => Ok(Point::Bottom(x.unsigned_abs() as usize)),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Diagram::from_blocks(j.n, &blocks)
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        Diagram::try_from(j).map_err(serde::de::Error::custom)
    }
}
