//! Permutations of `[n]` and their diagrams.
//!
//! The diagram of `p` has the lines `{i, p(i)'}`, so the diagram product of
//! `p` then `q` is the diagram of `x -> q(p(x))` ([`Permutation::then`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Point};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    // 0-based images
    image: Vec<usize>,
}

impl Permutation {
    /// From 1-based images `[p(1), ..., p(n)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::OutsideDomain(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            image: images.into_iter().map(|x| x - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// The adjacent transposition `(i i+1)`.
    pub fn transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(format!("transposition {i} in n = {n}")));
        }
        let mut p = Self::identity(n);
        p.image.swap(i - 1, i);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `p(x)` for 1-based `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "permutation size mismatch");
        Permutation {
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    pub fn inversions(&self) -> usize {
        let v = &self.image;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn to_diagram(&self) -> Diagram {
        let n = self.n();
        let blocks: Vec<[Point; 2]> = (1..=n)
            .map(|i| [Point::Top(i), Point::Bottom(self.apply(i))])
            .collect();
        Diagram::from_blocks(n, &blocks).expect("permutation diagram is well formed")
    }

    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        if !d.is_permutation() {
            return Err(Error::OutsideDomain(format!("{d} is not a permutation diagram")));
        }
        let mut images = vec![0; d.n()];
        for (t, b) in d.lines() {
            images[t - 1] = b;
        }
        Self::new(images)
    }

    /// Indices `a_1, ..., a_m` with `L_{a_1} * ... * L_{a_m}` equal to the
    /// diagram of `self`; `m` is the inversion count.
    pub fn l_word(&self) -> Vec<usize> {
        let mut rest = self.image.clone();
        let mut word = Vec::with_capacity(self.inversions());
        // peel a right descent a off the front: p = s_a then p'
        while let Some(a) = (0..rest.len().saturating_sub(1)).find(|&a| rest[a] > rest[a + 1]) {
            rest.swap(a, a + 1);
            word.push(a + 1);
        }
        word
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// All permutations of `[n]` in lexicographic order of their image arrays.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { image: cur.clone() });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}
