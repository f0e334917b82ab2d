//! Ramified diagrams `(I, R)` with `I` finer than `R`, their componentwise
//! product, the tied generators and the monoids built from them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::brauer::normal_form_with_pairing;
use crate::closure::{closure, MonoidElement, MonoidTable, DEFAULT_LIMIT};
use crate::diagram::{Diagram, Point};
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::set_partition::SetPartition;
use crate::word::{Token, Word};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ramified {
    i: Diagram,
    r: Diagram,
}

/// Up and down brackets of `I` inside one block of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockBalance {
    pub up: usize,
    pub down: usize,
}

/// Per-block bracket counts, blocks of `R` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub blocks: Vec<BlockBalance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamifiedFlags {
    pub balanced: bool,
    pub boxed: bool,
    pub report: BalanceReport,
}

/// Which tied generator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RamifiedKind {
    LTilde,
    HTilde,
    ETilde,
    FTilde,
}

impl Ramified {
    pub fn new(i: Diagram, r: Diagram) -> Result<Self> {
        if i.n() != r.n() {
            return Err(Error::SizeMismatch {
                left: i.n(),
                right: r.n(),
            });
        }
        if !i.partition().finer_than_unchecked(r.partition()) {
            return Err(Error::NotRefinement(format!("{i} ; {r}")));
        }
        Ok(Ramified { i, r })
    }

    /// `D -> (D, D)`.
    pub fn embed(d: Diagram) -> Self {
        Ramified { i: d.clone(), r: d }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::embed(Diagram::identity(n)?))
    }

    pub fn l_tilde(n: usize, i: usize) -> Result<Self> {
        Ok(Self::embed(Diagram::l(n, i)?))
    }

    pub fn h_tilde(n: usize, i: usize) -> Result<Self> {
        Ok(Self::embed(Diagram::h(n, i)?))
    }

    /// `(1, E_{i,j})`.
    pub fn e_tilde(n: usize, i: usize, j: usize) -> Result<Self> {
        Ok(Ramified {
            i: Diagram::identity(n)?,
            r: Diagram::e(n, i, j)?,
        })
    }

    /// `(H_i, E_i)` where `E_i = E_{i,i+1}`.
    pub fn f_tilde(n: usize, i: usize) -> Result<Self> {
        Ok(Ramified {
            i: Diagram::h(n, i)?,
            r: Diagram::e(n, i, i + 1)?,
        })
    }

    pub fn generator(n: usize, kind: RamifiedKind, i: usize, j: Option<usize>) -> Result<Self> {
        match (kind, j) {
            (RamifiedKind::LTilde, None) => Self::l_tilde(n, i),
            (RamifiedKind::HTilde, None) => Self::h_tilde(n, i),
            (RamifiedKind::ETilde, None) => {
                if i == 0 || i >= n {
                    return Err(Error::IndexOutOfRange(format!("E{i} in n = {n}")));
                }
                Self::e_tilde(n, i, i + 1)
            }
            (RamifiedKind::ETilde, Some(j)) => Self::e_tilde(n, i, j),
            (RamifiedKind::FTilde, None) => Self::f_tilde(n, i),
            (kind, Some(_)) => Err(Error::IndexOutOfRange(format!(
                "{kind:?} takes a single index"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.i.n()
    }

    pub fn fine(&self) -> &Diagram {
        &self.i
    }

    pub fn coarse(&self) -> &Diagram {
        &self.r
    }

    pub fn rproduct(&self, other: &Ramified) -> Result<Ramified> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let i = self.i.concat_unchecked(&other.i);
        let r = self.r.concat_unchecked(&other.r);
        assert!(
            i.partition().finer_than_unchecked(r.partition()),
            "product broke the refinement I <= R"
        );
        Ok(Ramified { i, r })
    }

    pub fn report(&self) -> BalanceReport {
        let mut blocks = vec![BlockBalance { up: 0, down: 0 }; self.r.num_blocks()];
        for (a, _) in self.i.up_brackets() {
            blocks[self.r.block_of(Point::Top(a))].up += 1;
        }
        for (a, _) in self.i.down_brackets() {
            blocks[self.r.block_of(Point::Bottom(a))].down += 1;
        }
        BalanceReport { blocks }
    }

    pub fn is_balanced(&self) -> bool {
        self.report().blocks.iter().all(|b| b.up == b.down)
    }

    /// `R` restricted to the top row is linear and joins each `i` with `i'`.
    pub fn is_boxed(&self) -> bool {
        let n = self.n();
        self.r.top().is_linear()
            && (1..=n).all(|k| self.r.same_block(Point::Top(k), Point::Bottom(k)))
    }

    pub fn flags(&self) -> RamifiedFlags {
        let report = self.report();
        RamifiedFlags {
            balanced: report.blocks.iter().all(|b| b.up == b.down),
            boxed: self.is_boxed(),
            report,
        }
    }

    /// Parse `I ; R` with an explicit strand count.
    pub fn parse_with_n(s: &str, n: usize) -> Result<Self> {
        let (i, r) = split_pair(s)?;
        Self::new(Diagram::parse_with_n(i, n)?, Diagram::parse_with_n(r, n)?)
    }
}

fn split_pair(s: &str) -> Result<(&str, &str)> {
    s.split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected `I ; R`, got {s:?}")))
}

impl MonoidElement for Ramified {
    fn mul(&self, other: &Self) -> Self {
        self.rproduct(other).expect("ramified strand counts differ")
    }
}

impl fmt::Display for Ramified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.i, self.r)
    }
}

impl fmt::Debug for Ramified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ramified(n={}, {self})", self.n())
    }
}

impl FromStr for Ramified {
    type Err = Error;

    /// `n` is the largest index on either side.
    fn from_str(s: &str) -> Result<Self> {
        let (i, r) = split_pair(s)?;
        let i: Diagram = i.parse()?;
        let r: Diagram = r.parse()?;
        let n = i.n().max(r.n());
        Self::parse_with_n(s, n)
    }
}

#[derive(Serialize, Deserialize)]
struct RamifiedJson {
    #[serde(rename = "I")]
    i: Diagram,
    #[serde(rename = "R")]
    r: Diagram,
}

impl Serialize for Ramified {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RamifiedJson {
            i: self.i.clone(),
            r: self.r.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ramified {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RamifiedJson::deserialize(d)?;
        Ramified::new(j.i, j.r).map_err(serde::de::Error::custom)
    }
}

/// Generated monoids of ramified diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `{L~_i, E~_i}`
    RS,
    /// `{L~_i, H~_i, E~_i, F~_i}`
    RBr,
    /// `{L~_i, E~_i, F~_i}`
    BBr,
    /// Boxed elements of `bBr_n` with planar `I`, with edges for `{E~_i, F~_i}`.
    BJ,
    /// `{E~_i, F~_i}`
    TJImage,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::RS,
        Family::RBr,
        Family::BBr,
        Family::BJ,
        Family::TJImage,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Family::RS => "RS",
            Family::RBr => "RBr",
            Family::BBr => "bBr",
            Family::BJ => "bJ",
            Family::TJImage => "tJ",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s {
            "RS" | "TS" | "TSn" => Ok(Family::RS),
            "RBr" | "Q" | "Qn" => Ok(Family::RBr),
            "bBr" | "W" | "Wn" => Ok(Family::BBr),
            "bJ" => Ok(Family::BJ),
            "tJ" | "tJn" | "tJimage" => Ok(Family::TJImage),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// Labelled generators of a family, `L` then `H` then `E` then `F`.
pub fn family_generators(family: Family, n: usize) -> Result<Vec<(String, Ramified)>> {
    let (l, h, e, f) = match family {
        Family::RS => (true, false, true, false),
        Family::RBr => (true, true, true, true),
        Family::BBr => (true, false, true, true),
        Family::BJ | Family::TJImage => (false, false, true, true),
    };
    let mut out = Vec::new();
    for (on, kind, name) in [
        (l, RamifiedKind::LTilde, "L"),
        (h, RamifiedKind::HTilde, "H"),
        (e, RamifiedKind::ETilde, "E"),
        (f, RamifiedKind::FTilde, "F"),
    ] {
        if on {
            for i in 1..n {
                out.push((format!("{name}{i}"), Ramified::generator(n, kind, i, None)?));
            }
        }
    }
    Ok(out)
}

pub fn build_family(family: Family, n: usize) -> Result<MonoidTable<Ramified>> {
    build_family_with_limit(family, n, DEFAULT_LIMIT)
}

pub fn build_family_with_limit(
    family: Family,
    n: usize,
    limit: usize,
) -> Result<MonoidTable<Ramified>> {
    let id = Ramified::identity(n)?;
    match family {
        Family::BJ => {
            let bbr = closure(id, &family_generators(Family::BBr, n)?, limit)?;
            let kept: Vec<Ramified> = bbr
                .elements()
                .iter()
                .filter(|a| a.is_boxed() && a.fine().is_planar())
                .cloned()
                .collect();
            MonoidTable::from_elements(kept, &family_generators(Family::BJ, n)?)
        }
        other => closure(id, &family_generators(other, n)?, limit),
    }
}

/// Classical diagram monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagramFamily {
    /// `{L_i}`
    Symmetric,
    /// `{H_i}`
    Jones,
    /// `{L_i, H_i}`
    Brauer,
}

impl FromStr for DiagramFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "Sn" => Ok(DiagramFamily::Symmetric),
            "J" | "Jn" => Ok(DiagramFamily::Jones),
            "Br" | "Brn" => Ok(DiagramFamily::Brauer),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

impl DiagramFamily {
    pub fn id(&self) -> &'static str {
        match self {
            DiagramFamily::Symmetric => "S",
            DiagramFamily::Jones => "J",
            DiagramFamily::Brauer => "Br",
        }
    }
}

pub fn diagram_family_generators(family: DiagramFamily, n: usize) -> Result<Vec<(String, Diagram)>> {
    let mut out = Vec::new();
    if matches!(family, DiagramFamily::Symmetric | DiagramFamily::Brauer) {
        for i in 1..n {
            out.push((format!("L{i}"), Diagram::l(n, i)?));
        }
    }
    if matches!(family, DiagramFamily::Jones | DiagramFamily::Brauer) {
        for i in 1..n {
            out.push((format!("H{i}"), Diagram::h(n, i)?));
        }
    }
    Ok(out)
}

pub fn build_diagram_family(family: DiagramFamily, n: usize, limit: usize) -> Result<MonoidTable<Diagram>> {
    closure(Diagram::identity(n)?, &diagram_family_generators(family, n)?, limit)
}

fn l_tokens(p: &Permutation) -> Vec<Token> {
    p.l_word().into_iter().map(Token::S).collect()
}

/// Evaluate a word under `s -> L~`, `t -> H~`, `e -> E~`, `f -> F~`.
pub fn eval_ramified(w: &Word, n: usize) -> Result<Ramified> {
    let mut acc = Ramified::identity(n)?;
    for t in w.tokens() {
        let g = match *t {
            Token::S(i) => Ramified::l_tilde(n, i)?,
            Token::T(i) => Ramified::h_tilde(n, i)?,
            Token::E(i) => Ramified::generator(n, RamifiedKind::ETilde, i, None)?,
            Token::Tie(i, j) => Ramified::e_tilde(n, i, j)?,
            Token::F(i) => Ramified::f_tilde(n, i)?,
            other => return Err(Error::UnboundToken(other.to_string())),
        };
        acc = acc.rproduct(&g)?;
    }
    Ok(acc)
}

/// Factor `(I, R)` with Brauer `I` as `r * T_1 * T_3 * ... * T_{2k-1} * r'` where
/// `r`, `r'` are words in `s` and extended ties and each `T` is `t` or `f`.
///
/// Within each block of `R`, up brackets are paired with down brackets so the
/// paired ones share an `f`; the leftover down brackets fill the remaining
/// slots in increasing order.
pub fn factor_ramified_brauer(a: &Ramified) -> Result<Word> {
    let (i, r) = (a.fine(), a.coarse());
    if !i.is_brauer() {
        return Err(Error::NotBrauer(i.to_string()));
    }
    let up = i.up_brackets();
    let down = i.down_brackets();
    let k = up.len();

    let mut slot_of_down: Vec<Option<usize>> = vec![None; down.len()];
    let mut used = vec![false; k];
    for (slot, &(ua, _)) in up.iter().enumerate() {
        let block = r.block_of(Point::Top(ua));
        if let Some(d) = (0..down.len())
            .find(|&d| slot_of_down[d].is_none() && r.block_of(Point::Bottom(down[d].0)) == block)
        {
            slot_of_down[d] = Some(slot);
            used[slot] = true;
        }
    }
    let mut free = (0..k).filter(|&s| !used[s]);
    for slot in slot_of_down.iter_mut().filter(|s| s.is_none()) {
        *slot = free.next();
    }
    let mut down_by_slot = vec![(0, 0); k];
    for (d, slot) in slot_of_down.iter().enumerate() {
        down_by_slot[slot.expect("every down bracket has a slot")] = down[d];
    }

    let nf = normal_form_with_pairing(i, &up, &down_by_slot);
    // conjugate R so that I becomes H_1 H_3 ... H_{2k-1}
    let r0 = nf
        .s
        .inverse()
        .to_diagram()
        .concat_unchecked(r)
        .concat_unchecked(&nf.s_prime.inverse().to_diagram());

    let mut word = l_tokens(&nf.s);
    for (p, q) in representative_ties(&r0.top(), k) {
        word.push(Token::Tie(p, q));
    }
    for slot in 0..k {
        let p = 2 * slot + 1;
        if r0.same_block(Point::Top(p), Point::Bottom(p)) {
            word.push(Token::F(p));
        } else {
            word.push(Token::T(p));
        }
    }
    for (p, q) in representative_ties(&r0.bottom(), k) {
        word.push(Token::Tie(p, q));
    }
    word.extend(l_tokens(&nf.s_prime));
    Ok(Word(word))
}

/// Ties joining one representative per bracket (its left end `2i-1`, the first
/// `k` brackets sitting at `{2i-1, 2i}`) and every line end, along `row`.
fn representative_ties(row: &SetPartition, k: usize) -> Vec<(usize, usize)> {
    let labels: Vec<usize> = (1..=row.ground_size())
        .map(|p| {
            if p <= 2 * k && p % 2 == 0 {
                usize::MAX - p
            } else {
                row.block_of(p)
            }
        })
        .collect();
    SetPartition::from_labels(&labels).fitzgerald_decompose()
}

/// `(I, R) = s E F s'` for balanced `(I, R)` with Brauer `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancedFactorization {
    pub s: Permutation,
    pub ties: Word,
    pub tangles: Word,
    pub s_prime: Permutation,
}

impl BalancedFactorization {
    pub fn s_word(&self) -> Word {
        Word(l_tokens(&self.s))
    }

    pub fn s_prime_word(&self) -> Word {
        Word(l_tokens(&self.s_prime))
    }

    pub fn to_word(&self) -> Word {
        self.s_word()
            .concat(&self.ties)
            .concat(&self.tangles)
            .concat(&self.s_prime_word())
    }
}

pub fn factor_balanced(a: &Ramified) -> Result<BalancedFactorization> {
    let (i, r) = (a.fine(), a.coarse());
    if !i.is_brauer() {
        return Err(Error::NotBrauer(i.to_string()));
    }
    if !a.is_balanced() {
        return Err(Error::Unbalanced(a.to_string()));
    }
    let n = a.n();
    struct Group {
        up: Vec<(usize, usize)>,
        down: Vec<(usize, usize)>,
        lines: Vec<(usize, usize)>,
    }
    let mut groups: Vec<Group> = (0..r.num_blocks())
        .map(|_| Group {
            up: Vec::new(),
            down: Vec::new(),
            lines: Vec::new(),
        })
        .collect();
    for b in i.up_brackets() {
        groups[r.block_of(Point::Top(b.0))].up.push(b);
    }
    for b in i.down_brackets() {
        groups[r.block_of(Point::Bottom(b.0))].down.push(b);
    }
    for l in i.lines() {
        groups[r.block_of(Point::Top(l.0))].lines.push(l);
    }
    // bracketed blocks by their first up bracket, then the rest by first line
    groups.sort_by_key(|g| match (g.up.first(), g.lines.first()) {
        (Some(&(a, _)), _) => (0, a),
        (None, Some(&(c, _))) => (1, c),
        (None, None) => (2, 0),
    });

    let mut s_images = vec![0usize; n];
    let mut s_prime_images = vec![0usize; n];
    let mut ties = Vec::new();
    let mut tangles = Vec::new();
    let mut offset = 0;
    for g in &groups {
        let size = 2 * g.up.len() + g.lines.len();
        for (idx, (&(ua, ub), &(da, db))) in g.up.iter().zip(&g.down).enumerate() {
            let slot = offset + 2 * idx + 1;
            s_images[ua - 1] = slot;
            s_images[ub - 1] = slot + 1;
            s_prime_images[slot - 1] = da;
            s_prime_images[slot] = db;
            tangles.push(Token::F(slot));
        }
        for (idx, &(top, bottom)) in g.lines.iter().enumerate() {
            let slot = offset + 2 * g.up.len() + idx + 1;
            s_images[top - 1] = slot;
            s_prime_images[slot - 1] = bottom;
        }
        for idx in 1..size {
            ties.push(Token::E(offset + idx));
        }
        offset += size;
    }
    Ok(BalancedFactorization {
        s: Permutation::new(s_images)?,
        ties: Word(ties),
        tangles: Word(tangles),
        s_prime: Permutation::new(s_prime_images)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_partition::enumerate_partitions;
    use std::collections::HashSet;

    fn ram(s: &str) -> Ramified {
        s.parse().unwrap()
    }

    #[test]
    fn construction_validates_refinement() {
        assert!(Ramified::new(
            Diagram::e(2, 1, 2).unwrap(),
            Diagram::identity(2).unwrap()
        )
        .is_err());
        let a = ram("1,1'|2,2' ; 1,2,1',2'");
        assert_eq!(a, Ramified::e_tilde(2, 1, 2).unwrap());
        assert_eq!(a.to_string(), "1,1'|2,2' ; 1,2,1',2'");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(
            j,
            r#"{"I":{"n":2,"blocks":[[1,-1],[2,-2]]},"R":{"n":2,"blocks":[[1,2,-1,-2]]}}"#
        );
        assert_eq!(serde_json::from_str::<Ramified>(&j).unwrap(), a);
        assert!(serde_json::from_str::<Ramified>(
            r#"{"I":{"n":2,"blocks":[[1,2,-1,-2]]},"R":{"n":2,"blocks":[[1,-1],[2,-2]]}}"#
        )
        .is_err());
    }

    #[test]
    fn generator_shapes() {
        let f = Ramified::f_tilde(3, 1).unwrap();
        assert_eq!(f.fine(), &Diagram::h(3, 1).unwrap());
        assert_eq!(f.coarse(), &Diagram::e(3, 1, 2).unwrap());
        let e13 = Ramified::e_tilde(3, 1, 3).unwrap();
        assert_eq!(e13.to_string(), "1,1'|2,2'|3,3' ; 1,3,1',3'|2,2'");
        assert_eq!(Ramified::identity(3).unwrap(), Ramified::embed(Diagram::identity(3).unwrap()));
        let h = Ramified::h_tilde(3, 1).unwrap();
        assert_eq!(h.rproduct(&f).unwrap(), h);
        assert_eq!(f.rproduct(&h).unwrap(), h);
        assert!(Ramified::generator(3, RamifiedKind::ETilde, 3, None).is_err());
    }

    #[test]
    fn conjugating_ties_by_crossings_permutes_indices() {
        let n = 4;
        for i in 1..n {
            let l = Ramified::l_tilde(n, i).unwrap();
            let s = Permutation::transposition(n, i).unwrap();
            for j in 1..=n {
                for k in j + 1..=n {
                    let lhs = l.rproduct(&Ramified::e_tilde(n, j, k).unwrap()).unwrap();
                    let rhs = Ramified::e_tilde(n, s.apply(j), s.apply(k))
                        .unwrap()
                        .rproduct(&l)
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let all: Vec<Diagram> = enumerate_partitions(4)
            .unwrap()
            .map(|p| Diagram::new(2, p).unwrap())
            .collect();
        for a in &all {
            for b in &all {
                assert_eq!(
                    Ramified::embed(a.clone())
                        .rproduct(&Ramified::embed(b.clone()))
                        .unwrap(),
                    Ramified::embed(a.concat(b).unwrap())
                );
            }
        }
    }

    #[test]
    fn flags_examples() {
        let f = Ramified::f_tilde(3, 2).unwrap().flags();
        assert!(f.balanced && f.boxed);
        assert!(f.report.blocks.iter().any(|b| b.up == 1 && b.down == 1));
        let p = Ramified::embed(Diagram::l(3, 1).unwrap()).flags();
        assert!(p.balanced && !p.boxed);
        assert!(p.report.blocks.iter().all(|b| b.up == 0 && b.down == 0));
        assert!(Ramified::identity(3).unwrap().flags().boxed);
        assert!(!Ramified::h_tilde(2, 1).unwrap().is_balanced());
        // R joining 1 and 3 on top but not 2 is not linear
        assert!(!Ramified::e_tilde(3, 1, 3).unwrap().is_boxed());
    }

    /// All ramified pairs over a set of diagrams, for filters and counts.
    fn ramified_over(diagrams: &[Diagram]) -> Vec<Ramified> {
        let n = diagrams[0].n();
        let coarse: Vec<Diagram> = enumerate_partitions(2 * n)
            .unwrap()
            .map(|p| Diagram::new(n, p).unwrap())
            .collect();
        let mut out = Vec::new();
        for i in diagrams {
            for r in &coarse {
                if let Ok(a) = Ramified::new(i.clone(), r.clone()) {
                    out.push(a);
                }
            }
        }
        out
    }

    fn brauer(n: usize) -> Vec<Diagram> {
        enumerate_partitions(2 * n)
            .unwrap()
            .map(|p| Diagram::new(n, p).unwrap())
            .filter(|d| d.is_brauer())
            .collect()
    }

    #[test]
    fn family_sizes_small() {
        assert_eq!(build_family(Family::RS, 3).unwrap().len(), 30);
        assert_eq!(build_family(Family::RBr, 2).unwrap().len(), 6);
        assert_eq!(build_family(Family::RBr, 3).unwrap().len(), 75);
        assert_eq!(build_family(Family::BBr, 3).unwrap().len(), 48);
        assert_eq!(build_family(Family::TJImage, 4).unwrap().len(), 35);
        assert_eq!(build_family(Family::BJ, 4).unwrap().len(), 35);
        assert_eq!(build_family(Family::RS, 1).unwrap().len(), 1);
    }

    #[test]
    fn rbr_is_all_pairs_over_brauer_and_bbr_is_the_balanced_part() {
        for n in 1..=3 {
            let everything: HashSet<Ramified> = ramified_over(&brauer(n)).into_iter().collect();
            let rbr: HashSet<Ramified> =
                build_family(Family::RBr, n).unwrap().elements().iter().cloned().collect();
            assert_eq!(rbr, everything);
            let balanced: HashSet<Ramified> =
                rbr.iter().filter(|a| a.is_balanced()).cloned().collect();
            let bbr: HashSet<Ramified> =
                build_family(Family::BBr, n).unwrap().elements().iter().cloned().collect();
            assert_eq!(balanced, bbr);
        }
    }

    #[test]
    fn unbalanced_examples_exist_at_n2() {
        let rbr = build_family(Family::RBr, 2).unwrap();
        let unbalanced: Vec<_> = rbr.elements().iter().filter(|a| !a.is_balanced()).collect();
        // H~_1 and its tied coarsening with separate top and bottom blocks
        assert_eq!(unbalanced.len(), 1);
        assert_eq!(*unbalanced[0], Ramified::h_tilde(2, 1).unwrap());
    }

    #[test]
    fn tj_image_is_boxed_planar_part_of_bbr() {
        for n in 1..=4 {
            let bj: HashSet<Ramified> =
                build_family(Family::BJ, n).unwrap().elements().iter().cloned().collect();
            let tj: HashSet<Ramified> =
                build_family(Family::TJImage, n).unwrap().elements().iter().cloned().collect();
            assert_eq!(bj, tj);
        }
    }

    #[test]
    fn rs_elements_are_permutations_with_compatible_coarsenings() {
        for n in 1..=4 {
            let rs = build_family(Family::RS, n).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(
                num_bigint::BigUint::from(rs.len()),
                num_bigint::BigUint::from(fact) * crate::counting::bell(n)
            );
            for a in rs.elements() {
                assert!(a.fine().is_permutation());
                // every R block is a union of lines
                let r = a.coarse();
                for (t, b) in a.fine().lines() {
                    assert!(r.same_block(Point::Top(t), Point::Bottom(b)));
                }
            }
        }
    }

    #[test]
    fn units_are_embedded_permutations() {
        for n in 1..=4 {
            let t = build_family(Family::RBr, n).unwrap();
            let units = t.units();
            assert_eq!(units.len(), (1..=n).product::<usize>());
            for u in units {
                let a = t.element(u);
                assert!(a.fine().is_permutation());
                assert_eq!(a.fine(), a.coarse());
            }
        }
    }

    #[test]
    fn monotonicity_exhaustive_n2() {
        let all = ramified_over(
            &enumerate_partitions(4)
                .unwrap()
                .map(|p| Diagram::new(2, p).unwrap())
                .collect::<Vec<_>>(),
        );
        for a in &all {
            for b in &all {
                let c = a.rproduct(b).unwrap();
                assert!(c.fine().partition().finer_than(c.coarse().partition()).unwrap());
            }
        }
    }

    #[test]
    fn partition_monoid_embeds_through_ties() {
        for n in 2..=5 {
            let mut images = HashSet::new();
            for p in enumerate_partitions(n).unwrap() {
                let img = p
                    .fitzgerald_decompose()
                    .iter()
                    .fold(Ramified::identity(n).unwrap(), |acc, &(i, j)| {
                        acc.rproduct(&Ramified::e_tilde(n, i, j).unwrap()).unwrap()
                    });
                assert!(images.insert(img.clone()));
                // multiplicative on a sample of pairs
                let q = SetPartition::tie(n, 1, n).unwrap();
                let joined = p.join(&q).unwrap();
                let joined_img = joined
                    .fitzgerald_decompose()
                    .iter()
                    .fold(Ramified::identity(n).unwrap(), |acc, &(i, j)| {
                        acc.rproduct(&Ramified::e_tilde(n, i, j).unwrap()).unwrap()
                    });
                assert_eq!(
                    img.rproduct(&Ramified::e_tilde(n, 1, n).unwrap()).unwrap(),
                    joined_img
                );
            }
        }
    }

    #[test]
    fn factor_ramified_brauer_round_trips() {
        for n in 1..=3 {
            for a in build_family(Family::RBr, n).unwrap().elements() {
                let w = factor_ramified_brauer(a).unwrap();
                assert_eq!(eval_ramified(&w, n).unwrap(), *a, "{a} -> {w}");
            }
        }
        let d: Diagram = "1,2|3,3'|1',2'".parse().unwrap();
        let w = factor_ramified_brauer(&Ramified::embed(d.clone())).unwrap();
        assert!(w.tokens().iter().all(|t| !matches!(t, Token::F(_) | Token::Tie(..))));
        let merged = Ramified::new(d.clone(), "1,2,1',2'|3,3'".parse().unwrap()).unwrap();
        let w = factor_ramified_brauer(&merged).unwrap();
        assert_eq!(w.tokens().iter().filter(|t| matches!(t, Token::F(_))).count(), 1);
        assert!(factor_ramified_brauer(&Ramified::e_tilde(2, 1, 2).unwrap()).is_ok());
        let nb = Ramified::embed(Diagram::e(2, 1, 2).unwrap());
        assert!(matches!(factor_ramified_brauer(&nb), Err(Error::NotBrauer(_))));
    }

    #[test]
    fn factor_balanced_round_trips() {
        for n in 1..=3 {
            for a in build_family(Family::BBr, n).unwrap().elements() {
                let fz = factor_balanced(a).unwrap();
                assert_eq!(eval_ramified(&fz.to_word(), n).unwrap(), *a, "{a}");
                assert!(fz.ties.tokens().iter().all(|t| matches!(t, Token::E(_))));
                assert!(fz.tangles.tokens().iter().all(|t| matches!(t, Token::F(_))));
            }
        }
        let id = factor_balanced(&Ramified::identity(3).unwrap()).unwrap();
        assert!(id.to_word().is_empty());
        let f1 = factor_balanced(&Ramified::f_tilde(2, 1).unwrap()).unwrap();
        assert!(f1.s.is_identity() && f1.s_prime.is_identity());
        assert_eq!(f1.ties.to_string(), "e1");
        assert_eq!(f1.tangles.to_string(), "f1");
        assert!(matches!(
            factor_balanced(&Ramified::h_tilde(2, 1).unwrap()),
            Err(Error::Unbalanced(_))
        ));
    }
}
