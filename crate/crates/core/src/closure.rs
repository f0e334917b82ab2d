//! Breadth-first closure of a generator set with right-Cayley edges.
//!
//! Elements are discovered level by level; within a level, products are taken
//! element by element in discovery order and generator by generator in the
//! given order. The parallel path computes each level's products on the rayon
//! pool and merges them in that same order, so both paths build identical
//! tables.

use std::collections::HashMap;
use std::hash::Hash;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::parallel;
use crate::set_partition::{DoublePartition, SetPartition};

/// Default element budget for [`closure`].
pub const DEFAULT_LIMIT: usize = 5_000_000;

/// A monoid element with a total product. Operands always share a carrier;
/// mismatched sizes are a programming error and panic.
pub trait MonoidElement: Clone + Eq + Hash + Send + Sync {
    fn mul(&self, other: &Self) -> Self;
}

impl MonoidElement for Diagram {
    fn mul(&self, other: &Self) -> Self {
        self.concat(other).expect("diagram strand counts differ")
    }
}

impl MonoidElement for SetPartition {
    fn mul(&self, other: &Self) -> Self {
        self.join(other).expect("ground sets differ")
    }
}

impl MonoidElement for DoublePartition {
    fn mul(&self, other: &Self) -> Self {
        self.join(other).expect("ground sets differ")
    }
}

#[derive(Debug, Clone)]
pub struct MonoidTable<T> {
    labels: Vec<String>,
    elements: Vec<T>,
    index: HashMap<T, u32>,
    edges: Vec<Vec<u32>>,
}

impl<T: MonoidElement> PartialEq for MonoidTable<T> {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.elements == other.elements && self.edges == other.edges
    }
}

impl<T: MonoidElement> Eq for MonoidTable<T> {}

impl<T: MonoidElement> MonoidTable<T> {
    fn start(identity: T, labels: Vec<String>) -> Self {
        let mut index = HashMap::new();
        index.insert(identity.clone(), 0);
        MonoidTable {
            labels,
            elements: vec![identity],
            index,
            edges: Vec::new(),
        }
    }

    fn insert(&mut self, x: T, limit: usize) -> Result<u32> {
        if let Some(&i) = self.index.get(&x) {
            return Ok(i);
        }
        if self.elements.len() >= limit {
            return Err(Error::BudgetExceeded {
                reached: self.elements.len(),
            });
        }
        let i = self.elements.len() as u32;
        self.index.insert(x.clone(), i);
        self.elements.push(x);
        Ok(i)
    }

    /// Table of an explicitly listed submonoid (identity first) with edges for
    /// `gens`; fails if some product leaves the list.
    pub fn from_elements(elements: Vec<T>, gens: &[(String, T)]) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, x) in elements.iter().enumerate() {
            if index.insert(x.clone(), i as u32).is_some() {
                return Err(Error::OutsideDomain("duplicate element".into()));
            }
        }
        let edges = elements
            .iter()
            .map(|x| {
                gens.iter()
                    .map(|(label, g)| {
                        index.get(&x.mul(g)).copied().ok_or_else(|| {
                            Error::OutsideDomain(format!("not closed under {label}"))
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonoidTable {
            labels: gens.iter().map(|g| g.0.clone()).collect(),
            elements,
            index,
            edges,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Elements in discovery order; element 0 is the identity.
    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &T) -> bool {
        self.index.contains_key(x)
    }

    /// `edges()[i][g]` is the index of `element(i) * generator(g)`.
    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn right_multiply(&self, i: usize, g: usize) -> usize {
        self.edges[i][g] as usize
    }

    /// Indices of the invertible elements: those with some power equal to the identity.
    pub fn units(&self) -> Vec<usize> {
        let one = &self.elements[0];
        (0..self.len())
            .filter(|&i| {
                let x = &self.elements[i];
                let mut seen = std::collections::HashSet::new();
                let mut p = x.clone();
                loop {
                    if p == *one {
                        return true;
                    }
                    if !seen.insert(p.clone()) {
                        return false;
                    }
                    p = p.mul(x);
                }
            })
            .collect()
    }
}

/// Sequential reference closure.
pub fn closure_sequential<T: MonoidElement>(
    identity: T,
    gens: &[(String, T)],
    limit: usize,
) -> Result<MonoidTable<T>> {
    let mut table = MonoidTable::start(identity, gens.iter().map(|g| g.0.clone()).collect());
    let mut i = 0;
    while i < table.elements.len() {
        let x = table.elements[i].clone();
        let mut row = Vec::with_capacity(gens.len());
        for (_, g) in gens {
            row.push(table.insert(x.mul(g), limit)?);
        }
        table.edges.push(row);
        i += 1;
    }
    Ok(table)
}

/// Closure that expands each BFS level in parallel when the `parallel`
/// feature is on; the table is identical to [`closure_sequential`].
pub fn closure<T: MonoidElement>(
    identity: T,
    gens: &[(String, T)],
    limit: usize,
) -> Result<MonoidTable<T>> {
    if !parallel::is_parallel() {
        return closure_sequential(identity, gens, limit);
    }
    let mut table = MonoidTable::start(identity, gens.iter().map(|g| g.0.clone()).collect());
    let mut level = 0..1;
    while !level.is_empty() {
        let frontier = &table.elements[level.clone()];
        let products: Vec<Vec<T>> = parallel::map(frontier, |x| {
            gens.iter().map(|(_, g)| x.mul(g)).collect()
        });
        let next_start = table.elements.len();
        for row in products {
            let mut edge_row = Vec::with_capacity(gens.len());
            for y in row {
                edge_row.push(table.insert(y, limit)?);
            }
            table.edges.push(edge_row);
        }
        level = next_start..table.elements.len();
    }
    Ok(table)
}

#[derive(Serialize, Deserialize)]
struct TableRepr<T> {
    labels: Vec<String>,
    elements: Vec<T>,
    edges: Vec<Vec<u32>>,
}

impl<T: MonoidElement + Serialize> Serialize for MonoidTable<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Ref<'a, T> {
            labels: &'a [String],
            elements: &'a [T],
            edges: &'a [Vec<u32>],
        }
        Ref {
            labels: &self.labels,
            elements: &self.elements,
            edges: &self.edges,
        }
        .serialize(s)
    }
}

impl<'de, T: MonoidElement + DeserializeOwned> Deserialize<'de> for MonoidTable<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TableRepr::<T>::deserialize(d)?;
        let len = repr.elements.len();
        if repr.edges.len() != len {
            return Err(D::Error::custom("edge table does not match element list"));
        }
        let mut index = HashMap::with_capacity(len);
        for (i, x) in repr.elements.iter().enumerate() {
            if index.insert(x.clone(), i as u32).is_some() {
                return Err(D::Error::custom("duplicate element in table"));
            }
        }
        for row in &repr.edges {
            if row.len() != repr.labels.len() || row.iter().any(|&t| t as usize >= len) {
                return Err(D::Error::custom("edge row out of range"));
            }
        }
        Ok(MonoidTable {
            labels: repr.labels,
            elements: repr.elements,
            index,
            edges: repr.edges,
        })
    }
}
