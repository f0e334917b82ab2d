//! Monoid presentations as data: the relation catalog, evaluation of words
//! under generator assignments, relation checking, tie saturation and the
//! word problem through faithful images.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::closure::MonoidElement;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::parallel;
use crate::ramified::{eval_ramified, Ramified};
use crate::set_partition::{DoublePartition, SetPartition};
use crate::word::{expand_ties, Token, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PresentationName {
    Sn,
    Jn,
    Brn,
    Pn,
    DPn,
    TSn,
    Qn,
    Wn,
    #[serde(rename = "tJn")]
    TJn,
}

impl PresentationName {
    pub const ALL: [PresentationName; 9] = [
        PresentationName::Sn,
        PresentationName::Jn,
        PresentationName::Brn,
        PresentationName::Pn,
        PresentationName::DPn,
        PresentationName::TSn,
        PresentationName::Qn,
        PresentationName::Wn,
        PresentationName::TJn,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            PresentationName::Sn => "Sn",
            PresentationName::Jn => "Jn",
            PresentationName::Brn => "Brn",
            PresentationName::Pn => "Pn",
            PresentationName::DPn => "DPn",
            PresentationName::TSn => "TSn",
            PresentationName::Qn => "Qn",
            PresentationName::Wn => "Wn",
            PresentationName::TJn => "tJn",
        }
    }

    /// Whether `t` is a generator (or, where `s` and `e` are both present,
    /// an extended tie) of this presentation.
    pub fn allows(&self, t: &Token) -> bool {
        use PresentationName::*;
        matches!(
            (self, t),
            (Sn | Brn | TSn | Qn | Wn, Token::S(_))
                | (Jn | Brn | Qn, Token::T(_))
                | (TSn | Qn | Wn | TJn, Token::E(_))
                | (TSn | Qn | Wn | Pn, Token::Tie(..))
                | (Qn | Wn | TJn, Token::F(_))
                | (DPn, Token::A(..) | Token::B(..))
        )
    }
}

impl fmt::Display for PresentationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PresentationName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresentationName::ALL
            .iter()
            .copied()
            .find(|p| p.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub label: String,
    pub indices: Vec<usize>,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, Serialize)]
pub struct Presentation {
    pub name: PresentationName,
    pub n: usize,
    pub generators: Vec<Token>,
    pub relations: Vec<Relation>,
    /// Consequences of the defining relations, checked but not defining.
    pub derived: Vec<Relation>,
}

impl Presentation {
    /// All defining relations followed by the derived ones.
    pub fn all_relations(&self) -> impl Iterator<Item = (&Relation, bool)> {
        self.relations
            .iter()
            .map(|r| (r, false))
            .chain(self.derived.iter().map(|r| (r, true)))
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.relations.iter().map(|r| r.label.as_str()).collect()
    }
}

struct Rels {
    out: Vec<Relation>,
}

impl Rels {
    fn new() -> Self {
        Rels { out: Vec::new() }
    }

    fn eq(&mut self, label: &str, indices: &[usize], lhs: Vec<Token>, rhs: Vec<Token>) {
        self.out.push(Relation {
            label: label.to_string(),
            indices: indices.to_vec(),
            lhs: Word(lhs),
            rhs: Word(rhs),
        });
    }

    /// `a = b = c = ...` as the pairs `(a, b), (a, c), ...`.
    fn chain(&mut self, label: &str, indices: &[usize], sides: Vec<Vec<Token>>) {
        let (first, rest) = sides.split_first().expect("chain needs sides");
        for side in rest {
            self.eq(label, indices, first.clone(), side.clone());
        }
    }
}

fn singles(n: usize) -> impl Iterator<Item = usize> {
    1..n
}

fn ordered_pairs(n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if keep(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn far(n: usize) -> Vec<(usize, usize)> {
    ordered_pairs(n, |i, j| i.abs_diff(j) > 1)
}

fn adjacent(n: usize) -> Vec<(usize, usize)> {
    ordered_pairs(n, |i, j| i.abs_diff(j) == 1)
}

fn symmetric_relations(r: &mut Rels, n: usize) {
    use Token::S;
    for i in singles(n) {
        r.eq("S1", &[i], vec![S(i), S(i)], vec![]);
    }
    for (i, j) in far(n) {
        r.eq("S2", &[i, j], vec![S(i), S(j)], vec![S(j), S(i)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("S3", &[i, j], vec![S(i), S(j), S(i)], vec![S(j), S(i), S(j)]);
    }
}

fn jones_relations(r: &mut Rels, n: usize) {
    use Token::T;
    for i in singles(n) {
        r.eq("T1", &[i], vec![T(i), T(i)], vec![T(i)]);
    }
    for (i, j) in far(n) {
        r.eq("T2", &[i, j], vec![T(i), T(j)], vec![T(j), T(i)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("T3", &[i, j], vec![T(i), T(j), T(i)], vec![T(i)]);
    }
}

fn brauer_relations(r: &mut Rels, n: usize) {
    use Token::{S, T};
    for i in singles(n) {
        r.chain("Br1", &[i], vec![vec![T(i), S(i)], vec![S(i), T(i)], vec![T(i)]]);
    }
    for (i, j) in far(n) {
        r.eq("Br2", &[i, j], vec![T(i), S(j)], vec![S(j), T(i)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("Br3", &[i, j], vec![S(i), T(j), T(i)], vec![S(j), T(i)]);
        r.eq("Br3", &[i, j], vec![T(i), T(j), S(i)], vec![T(i), S(j)]);
    }
}

fn brauer_derived(r: &mut Rels, n: usize) {
    use Token::{S, T};
    for (i, j) in adjacent(n) {
        r.eq("SitjSi", &[i, j], vec![S(i), T(j), S(i)], vec![S(j), T(i), S(j)]);
        r.eq("tiSjti", &[i, j], vec![T(i), S(j), T(i)], vec![T(i)]);
        r.chain(
            "SiSjti",
            &[i, j],
            vec![vec![S(i), S(j), T(i)], vec![T(j), S(i), S(j)], vec![T(j), T(i)]],
        );
    }
}

/// (P1)-(P3) over the generators `make(i, j)`, `1 <= i < j <= n`.
fn partition_relations(r: &mut Rels, n: usize, make: impl Fn(usize, usize) -> Vec<Token>) {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    for &(i, j) in &pairs {
        let e = make(i, j);
        r.eq("P1", &[i, j], [e.clone(), e.clone()].concat(), e);
    }
    for &(i, j) in &pairs {
        for &(p, q) in &pairs {
            let (a, b) = (make(i, j), make(p, q));
            r.eq("P2", &[i, j, p, q], [a.clone(), b.clone()].concat(), [b, a].concat());
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (ij, jk, ik) = (make(i, j), make(j, k), make(i, k));
                r.chain(
                    "P3",
                    &[i, j, k],
                    vec![
                        [ij.clone(), jk.clone()].concat(),
                        [ij, ik.clone()].concat(),
                        [jk, ik].concat(),
                    ],
                );
            }
        }
    }
}

fn tie_relations(r: &mut Rels, n: usize) {
    use Token::E;
    for i in singles(n) {
        r.eq("Ei2", &[i], vec![E(i), E(i)], vec![E(i)]);
    }
    for (i, j) in ordered_pairs(n, |_, _| true) {
        r.eq("EiEj", &[i, j], vec![E(i), E(j)], vec![E(j), E(i)]);
    }
}

fn tied_symmetric_relations(r: &mut Rels, n: usize) {
    use Token::{E, S};
    tie_relations(r, n);
    for (i, j) in adjacent(n) {
        r.eq("TSn1", &[i, j], vec![E(i), S(j), S(i)], vec![S(j), S(i), E(j)]);
    }
    for (i, j) in ordered_pairs(n, |i, j| i.abs_diff(j) != 1) {
        r.eq("TSn2", &[i, j], vec![S(i), E(j)], vec![E(j), S(i)]);
    }
    for (i, j) in adjacent(n) {
        r.chain(
            "TSn3",
            &[i, j],
            vec![vec![E(i), E(j), S(i)], vec![E(j), S(i), E(j)], vec![S(i), E(i), E(j)]],
        );
    }
}

/// (Fi2)-(FiFjFi), shared by Q_n, W_n and tJ_n.
fn tangle_core_relations(r: &mut Rels, n: usize) {
    use Token::{E, F};
    for i in singles(n) {
        r.eq("Fi2", &[i], vec![F(i), F(i)], vec![F(i)]);
    }
    for (i, j) in far(n) {
        r.eq("FiFj", &[i, j], vec![F(i), F(j)], vec![F(j), F(i)]);
    }
    for i in singles(n) {
        r.chain("EiFi", &[i], vec![vec![E(i), F(i)], vec![F(i), E(i)], vec![F(i)]]);
    }
    for (i, j) in ordered_pairs(n, |_, _| true) {
        r.eq("EiFj", &[i, j], vec![E(i), F(j)], vec![F(j), E(i)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("FiFjFi", &[i, j], vec![F(i), F(j), F(i)], vec![E(j), F(i), E(j)]);
    }
}

fn q_relations(r: &mut Rels, n: usize) {
    use Token::{E, F, S, T};
    tangle_core_relations(r, n);
    for i in singles(n) {
        r.chain("Eiti", &[i], vec![vec![E(i), T(i)], vec![T(i), E(i)], vec![T(i)]]);
    }
    for (i, j) in far(n) {
        r.eq("Eitj", &[i, j], vec![E(i), T(j)], vec![T(j), E(i)]);
    }
    for (i, j) in far(n) {
        r.eq("Fitj", &[i, j], vec![F(i), T(j)], vec![T(j), F(i)]);
    }
    for (i, j) in far(n) {
        r.eq("FiSj", &[i, j], vec![F(i), S(j)], vec![S(j), F(i)]);
    }
    for (i, j) in adjacent(n) {
        r.chain(
            "FjEi",
            &[i, j],
            vec![vec![F(i), E(j)], vec![E(j), F(i)], vec![E(j), T(i), E(j)]],
        );
    }
    for i in singles(n) {
        r.chain("SiFi", &[i], vec![vec![S(i), F(i)], vec![F(i), S(i)], vec![F(i)]]);
    }
    for (i, j) in adjacent(n) {
        r.eq("SiFjSi", &[i, j], vec![S(i), F(j), S(i)], vec![S(j), F(i), S(j)]);
    }
    for i in singles(n) {
        r.chain("Fiti", &[i], vec![vec![F(i), T(i)], vec![T(i), F(i)], vec![T(i)]]);
    }
}

fn q_derived(r: &mut Rels, n: usize) {
    use Token::{E, F, S, T};
    for (i, j) in adjacent(n) {
        r.eq("FiFj", &[i, j], vec![F(i), F(j)], vec![E(j), T(i), T(j), E(i)]);
        r.eq("Fitj", &[i, j], vec![F(i), T(j)], vec![E(j), T(i), T(j)]);
        r.eq("Fitj", &[i, j], vec![T(i), F(j)], vec![T(i), T(j), E(i)]);
        r.eq("Eitj", &[i, j], vec![E(i), T(j)], vec![F(j), S(i), T(j)]);
        r.eq("Eitj", &[i, j], vec![T(i), E(j)], vec![T(i), S(j), F(i)]);
        r.eq("FiSjFi", &[i, j], vec![F(i), S(j), F(i)], vec![E(j), T(i), E(j)]);
        r.eq("SiEjSi", &[i, j], vec![S(i), E(j), S(i)], vec![S(j), E(i), S(j)]);
        r.eq("FiFjEi", &[i, j], vec![F(i), F(j), E(i)], vec![F(i), F(j)]);
        r.eq("EiFjFi", &[i, j], vec![E(i), F(j), F(i)], vec![F(j), F(i)]);
        r.eq("SiSjFi", &[i, j], vec![F(i), S(j), S(i)], vec![S(j), S(i), F(j)]);
    }
}

fn w_relations(r: &mut Rels, n: usize) {
    use Token::{E, F, S};
    for i in singles(n) {
        r.eq("tSiEi", &[i], vec![S(i), E(i)], vec![E(i), S(i)]);
    }
    for (i, j) in far(n) {
        r.eq("tSiEj", &[i, j], vec![S(i), E(j)], vec![E(j), S(i)]);
    }
    for (i, j) in adjacent(n) {
        r.chain(
            "tEiEjSi",
            &[i, j],
            vec![vec![E(i), E(j), S(i)], vec![S(i), E(i), E(j)], vec![E(j), S(i), E(j)]],
        );
    }
    for (i, j) in adjacent(n) {
        r.eq("tEiSjSi", &[i, j], vec![E(i), S(j), S(i)], vec![S(j), S(i), E(j)]);
    }
    for i in singles(n) {
        r.chain("tSiFi", &[i], vec![vec![S(i), F(i)], vec![F(i), S(i)], vec![F(i)]]);
    }
    for (i, j) in far(n) {
        r.eq("tSiFj", &[i, j], vec![S(i), F(j)], vec![F(j), S(i)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tFiFjSj", &[i, j], vec![F(i), F(j), S(i)], vec![E(j), F(i), S(j)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tSjFiFj", &[i, j], vec![S(j), F(i), F(j)], vec![S(i), F(j), E(i)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tFiSjFicasetBrn", &[i, j], vec![F(i), S(j), F(i)], vec![E(j), F(i), E(j)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tSiFjSi", &[i, j], vec![S(i), F(j), S(i)], vec![S(j), F(i), S(j)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tSiSjFi", &[i, j], vec![S(i), S(j), F(i)], vec![F(j), S(i), S(j)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tEiSjFi", &[i, j], vec![E(i), S(j), F(i)], vec![S(j), F(i), E(j)]);
    }
    for (i, j) in adjacent(n) {
        r.eq("tFiSjEi", &[i, j], vec![F(i), S(j), E(i)], vec![E(j), F(i), S(j)]);
    }
}

fn adjacent_generators(n: usize, make: fn(usize) -> Token) -> Vec<Token> {
    singles(n).map(make).collect()
}

/// The presentation `name` on `n` strands with every admissible index
/// instantiation of its relations.
pub fn catalog(name: PresentationName, n: usize) -> Result<Presentation> {
    use PresentationName::*;
    if n == 0 {
        return Err(Error::IndexOutOfRange("presentations need n >= 1".into()));
    }
    let mut rels = Rels::new();
    let mut derived = Rels::new();
    let mut generators = Vec::new();
    match name {
        Sn => {
            generators = adjacent_generators(n, Token::S);
            symmetric_relations(&mut rels, n);
        }
        Jn => {
            generators = adjacent_generators(n, Token::T);
            jones_relations(&mut rels, n);
        }
        Brn => {
            generators.extend(adjacent_generators(n, Token::S));
            generators.extend(adjacent_generators(n, Token::T));
            symmetric_relations(&mut rels, n);
            jones_relations(&mut rels, n);
            brauer_relations(&mut rels, n);
            brauer_derived(&mut derived, n);
        }
        Pn => {
            for i in 1..=n {
                for j in i + 1..=n {
                    generators.push(Token::Tie(i, j));
                }
            }
            partition_relations(&mut rels, n, |i, j| vec![Token::Tie(i, j)]);
        }
        DPn => {
            for i in 1..=n {
                for j in i + 1..=n {
                    generators.push(Token::A(i, j));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    generators.push(Token::B(i, j));
                }
            }
            partition_relations(&mut rels, n, |i, j| vec![Token::A(i, j)]);
            partition_relations(&mut rels, n, |i, j| vec![Token::B(i, j)]);
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect();
            for &(i, j) in &pairs {
                for &(p, q) in &pairs {
                    rels.eq(
                        "EqPDoubP",
                        &[i, j, p, q],
                        vec![Token::A(i, j), Token::B(p, q)],
                        vec![Token::B(p, q), Token::A(i, j)],
                    );
                }
            }
            for &(i, j) in &pairs {
                rels.eq(
                    "EqPDoubP",
                    &[i, j],
                    vec![Token::A(i, j), Token::B(i, j)],
                    vec![Token::A(i, j)],
                );
            }
        }
        TSn => {
            generators.extend(adjacent_generators(n, Token::S));
            generators.extend(adjacent_generators(n, Token::E));
            symmetric_relations(&mut rels, n);
            // the extended ties are words in s and e
            let mut ext = Rels::new();
            partition_relations(&mut ext, n, |i, j| {
                expand_ties(&Word(vec![tie_token(i, j)]), n)
                    .expect("indices in range")
                    .0
            });
            rels.out
                .extend(ext.out.into_iter().filter(|r| r.label != "P3"));
            tied_symmetric_relations(&mut rels, n);
        }
        Qn => {
            for make in [Token::S, Token::T, Token::E, Token::F] {
                generators.extend(adjacent_generators(n, make));
            }
            jones_relations(&mut rels, n);
            symmetric_relations(&mut rels, n);
            brauer_relations(&mut rels, n);
            tied_symmetric_relations(&mut rels, n);
            q_relations(&mut rels, n);
            brauer_derived(&mut derived, n);
            q_derived(&mut derived, n);
        }
        Wn => {
            for make in [Token::S, Token::E, Token::F] {
                generators.extend(adjacent_generators(n, make));
            }
            symmetric_relations(&mut rels, n);
            tie_relations(&mut rels, n);
            tangle_core_relations(&mut rels, n);
            w_relations(&mut rels, n);
        }
        TJn => {
            generators.extend(adjacent_generators(n, Token::E));
            generators.extend(adjacent_generators(n, Token::F));
            tie_relations(&mut rels, n);
            tangle_core_relations(&mut rels, n);
        }
    }
    Ok(Presentation {
        name,
        n,
        generators,
        relations: rels.out,
        derived: derived.out,
    })
}

fn tie_token(i: usize, j: usize) -> Token {
    if j == i + 1 {
        Token::E(i)
    } else {
        Token::Tie(i, j)
    }
}

/// Images of generators in some monoid.
pub trait Assignment: Sync {
    type Element: MonoidElement + fmt::Display;

    fn identity(&self) -> Result<Self::Element>;
    fn image(&self, t: &Token) -> Result<Self::Element>;
}

/// `s_i -> L_i`, `t_i -> H_i`.
#[derive(Debug, Clone, Copy)]
pub struct DiagramAssignment {
    pub n: usize,
}

impl Assignment for DiagramAssignment {
    type Element = Diagram;

    fn identity(&self) -> Result<Diagram> {
        Diagram::identity(self.n)
    }

    fn image(&self, t: &Token) -> Result<Diagram> {
        match *t {
            Token::S(i) => Diagram::l(self.n, i),
            Token::T(i) => Diagram::h(self.n, i),
            other => Err(Error::UnboundToken(other.to_string())),
        }
    }
}

/// `s -> L~`, `t -> H~`, `e -> E~`, `f -> F~`, extended ties to `E~_{i,j}`.
#[derive(Debug, Clone, Copy)]
pub struct RamifiedAssignment {
    pub n: usize,
}

impl Assignment for RamifiedAssignment {
    type Element = Ramified;

    fn identity(&self) -> Result<Ramified> {
        Ramified::identity(self.n)
    }

    fn image(&self, t: &Token) -> Result<Ramified> {
        eval_ramified(&Word(vec![*t]), self.n)
    }
}

/// `e_{i,j}` (and `e_i`) to the atom joining `i` and `j`.
#[derive(Debug, Clone, Copy)]
pub struct PartitionAssignment {
    pub n: usize,
}

impl Assignment for PartitionAssignment {
    type Element = SetPartition;

    fn identity(&self) -> Result<SetPartition> {
        SetPartition::unity(self.n)
    }

    fn image(&self, t: &Token) -> Result<SetPartition> {
        match *t {
            Token::Tie(i, j) => SetPartition::tie(self.n, i, j),
            Token::E(i) => SetPartition::tie(self.n, i, i + 1),
            other => Err(Error::UnboundToken(other.to_string())),
        }
    }
}

/// `a_{i,j} -> (e_{i,j}, e_{i,j})`, `b_{i,j} -> (1, e_{i,j})`.
#[derive(Debug, Clone, Copy)]
pub struct DoubleAssignment {
    pub n: usize,
}

impl Assignment for DoubleAssignment {
    type Element = DoublePartition;

    fn identity(&self) -> Result<DoublePartition> {
        DoublePartition::unity(self.n)
    }

    fn image(&self, t: &Token) -> Result<DoublePartition> {
        match *t {
            Token::A(i, j) => {
                let e = SetPartition::tie(self.n, i, j)?;
                DoublePartition::new(e.clone(), e)
            }
            Token::B(i, j) => {
                DoublePartition::new(SetPartition::unity(self.n)?, SetPartition::tie(self.n, i, j)?)
            }
            other => Err(Error::UnboundToken(other.to_string())),
        }
    }
}

/// Left-to-right product of the images; the empty word gives the identity.
pub fn eval_word<A: Assignment>(w: &Word, a: &A) -> Result<A::Element> {
    let mut acc = a.identity()?;
    for t in w.tokens() {
        acc = acc.mul(&a.image(t)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub label: String,
    pub indices: Vec<usize>,
    pub status: CheckStatus,
    pub derived: bool,
    pub lhs_image: Option<String>,
    pub rhs_image: Option<String>,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Evaluate both sides of every relation (defining and derived).
pub fn verify_presentation<A: Assignment>(p: &Presentation, a: &A) -> Vec<RelationCheck> {
    let rels: Vec<(&Relation, bool)> = p.all_relations().collect();
    parallel::map(&rels, |&(r, derived)| {
        let (status, lhs_image, rhs_image) = match (eval_word(&r.lhs, a), eval_word(&r.rhs, a)) {
            (Ok(x), Ok(y)) if x == y => (CheckStatus::Pass, None, None),
            (Ok(x), Ok(y)) => (
                CheckStatus::Fail,
                Some(x.to_string()),
                Some(y.to_string()),
            ),
            (Err(e), _) | (_, Err(e)) => (CheckStatus::Error, Some(e.to_string()), None),
        };
        RelationCheck {
            label: r.label.clone(),
            indices: r.indices.clone(),
            status,
            derived,
            lhs_image,
            rhs_image,
        }
    })
}

/// Verify `catalog(name, n)` under its canonical assignment.
pub fn verify_catalog(name: PresentationName, n: usize) -> Result<Vec<RelationCheck>> {
    use PresentationName::*;
    let p = catalog(name, n)?;
    Ok(match name {
        Sn | Jn | Brn => verify_presentation(&p, &DiagramAssignment { n }),
        Pn => verify_presentation(&p, &PartitionAssignment { n }),
        DPn => verify_presentation(&p, &DoubleAssignment { n }),
        TSn | Qn | Wn | TJn => verify_presentation(&p, &RamifiedAssignment { n }),
    })
}

fn check_alphabet(name: PresentationName, n: usize, w: &Word) -> Result<()> {
    if let Some(t) = w.tokens().iter().find(|t| !name.allows(t)) {
        return Err(Error::UnboundToken(format!("{t} is not a generator of {name}")));
    }
    w.check_range(n)
}

/// Decide `u = v` in the presented monoid by comparing faithful images.
pub fn word_equal(name: PresentationName, n: usize, u: &Word, v: &Word) -> Result<bool> {
    use PresentationName::*;
    check_alphabet(name, n, u)?;
    check_alphabet(name, n, v)?;
    match name {
        Sn | Jn | Brn => {
            let a = DiagramAssignment { n };
            Ok(eval_word(u, &a)? == eval_word(v, &a)?)
        }
        Pn => {
            let a = PartitionAssignment { n };
            Ok(eval_word(u, &a)? == eval_word(v, &a)?)
        }
        DPn => {
            let a = DoubleAssignment { n };
            Ok(eval_word(u, &a)? == eval_word(v, &a)?)
        }
        TSn | Qn | Wn | TJn => Ok(eval_ramified(u, n)? == eval_ramified(v, n)?),
    }
}

/// Set `e_i = 1` and `f_i = t_i`.
pub fn overline(w: &Word) -> Word {
    w.overline()
}

/// Ties that may cross `letter` unchanged (after relabelling for `s`).
fn transport(gap: &SetPartition, letter: Token, n: usize) -> SetPartition {
    match letter {
        Token::S(k) => {
            let labels: Vec<u8> = (1..=n)
                .map(|x| {
                    let y = if x == k {
                        k + 1
                    } else if x == k + 1 {
                        k
                    } else {
                        x
                    };
                    gap.assignment()[y - 1]
                })
                .collect();
            SetPartition::canonical_from_bytes(&labels)
        }
        Token::T(k) => {
            let keep_pair = gap.same_block(k, k + 1);
            let labels: Vec<usize> = (1..=n)
                .map(|x| {
                    if x == k || x == k + 1 {
                        if keep_pair {
                            n + k
                        } else {
                            n + x
                        }
                    } else {
                        gap.block_of(x)
                    }
                })
                .collect();
            SetPartition::canonical_from_indices(&labels)
        }
        _ => gap.clone(),
    }
}

/// `t_k` may become `f_k` when some strand `x` outside `{k, k+1}` is tied
/// to the cap above and to the cup below.
fn upgradable(left: &SetPartition, right: &SetPartition, k: usize, n: usize) -> bool {
    let touches = |g: &SetPartition, x: usize| g.same_block(x, k) || g.same_block(x, k + 1);
    (1..=n)
        .filter(|&x| x != k && x != k + 1)
        .any(|x| touches(left, x) && touches(right, x))
}

/// Tie saturation `u -> u^e`: wrap every `t_i`, `f_i` in `e_i`, spread
/// every tie through the word as far as the commutation rules allow,
/// upgrade `t_k` to `f_k` where both sides tie its arcs to a common strand,
/// and repeat until nothing changes.
pub fn tie_saturate(w: &Word, n: usize) -> Result<Word> {
    w.check_range(n)?;
    let mut letters = Vec::new();
    let mut gaps = vec![SetPartition::unity(n)?];
    for &t in w.tokens() {
        match t {
            Token::E(i) => {
                let last = gaps.last_mut().unwrap();
                *last = last.join(&SetPartition::tie(n, i, i + 1)?)?;
            }
            Token::Tie(i, j) => {
                let last = gaps.last_mut().unwrap();
                *last = last.join(&SetPartition::tie(n, i, j)?)?;
            }
            Token::S(_) | Token::T(_) | Token::F(_) => {
                letters.push(t);
                gaps.push(SetPartition::unity(n)?);
            }
            other => return Err(Error::UnboundToken(other.to_string())),
        }
    }
    for (p, t) in letters.iter().enumerate() {
        if let Token::T(k) | Token::F(k) = *t {
            let e = SetPartition::tie(n, k, k + 1)?;
            gaps[p] = gaps[p].join(&e)?;
            gaps[p + 1] = gaps[p + 1].join(&e)?;
        }
    }
    loop {
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..letters.len() {
                let rightward = gaps[p + 1].join(&transport(&gaps[p], letters[p], n))?;
                let leftward = gaps[p].join(&transport(&rightward, letters[p], n))?;
                if rightward != gaps[p + 1] || leftward != gaps[p] {
                    changed = true;
                    gaps[p + 1] = rightward;
                    gaps[p] = leftward;
                }
            }
        }
        let mut upgraded = false;
        for p in 0..letters.len() {
            if let Token::T(k) = letters[p] {
                if upgradable(&gaps[p], &gaps[p + 1], k, n) {
                    letters[p] = Token::F(k);
                    upgraded = true;
                }
            }
        }
        if !upgraded {
            break;
        }
    }
    let mut out = Vec::new();
    for (p, gap) in gaps.iter().enumerate() {
        out.extend(gap.fitzgerald_decompose().into_iter().map(|(i, j)| tie_token(i, j)));
        if let Some(&t) = letters.get(p) {
            out.push(t);
        }
    }
    Ok(Word(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::closure;
    use crate::counting::{bell, double_factorial_odd, factorial};
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn catalog_shapes() {
        let br = catalog(PresentationName::Brn, 3).unwrap();
        assert_eq!(br.generators.len(), 4);
        // n = 3 has no pair with |i - j| > 1
        let labels: Vec<&str> = br.labels().into_iter().collect();
        assert_eq!(labels, ["Br1", "Br3", "S1", "S3", "T1", "T3"]);
        let br4 = catalog(PresentationName::Brn, 4).unwrap();
        let labels: Vec<&str> = br4.labels().into_iter().collect();
        assert_eq!(labels, ["Br1", "Br2", "Br3", "S1", "S2", "S3", "T1", "T2", "T3"]);

        let p = catalog(PresentationName::Pn, 3).unwrap();
        let gens: Vec<String> = p.generators.iter().map(|t| t.to_string()).collect();
        assert_eq!(gens, ["e{1,2}", "e{1,3}", "e{2,3}"]);
        assert_eq!(p.labels().into_iter().collect::<Vec<_>>(), ["P1", "P2", "P3"]);

        let q = catalog(PresentationName::Qn, 2).unwrap();
        assert!(q.all_relations().all(|(r, _)| r.indices.len() < 2
            || r.indices[0] == r.indices[1]));
        assert!(q.derived.is_empty());

        assert!("Xn".parse::<PresentationName>().is_err());
        assert_eq!("tjn".parse::<PresentationName>().unwrap(), PresentationName::TJn);
    }

    #[test]
    fn relation_sides_use_declared_generators() {
        for name in PresentationName::ALL {
            for n in 1..=5 {
                let p = catalog(name, n).unwrap();
                for (r, _) in p.all_relations() {
                    for t in r.lhs.tokens().iter().chain(r.rhs.tokens()) {
                        assert!(p.generators.contains(t), "{name} {n}: {t} in {}", r.label);
                    }
                }
            }
        }
    }

    #[test]
    fn every_relation_holds_in_the_images() {
        for name in PresentationName::ALL {
            for n in 1..=5 {
                let report = verify_catalog(name, n).unwrap();
                let failed: Vec<_> = report.iter().filter(|c| !c.passed()).collect();
                assert!(failed.is_empty(), "{name} n = {n}: {failed:?}");
            }
        }
    }

    #[test]
    fn mutated_relation_fails() {
        let mut p = catalog(PresentationName::Sn, 3).unwrap();
        p.relations.push(Relation {
            label: "bogus".into(),
            indices: vec![1],
            lhs: word("s1 s1"),
            rhs: word("s1"),
        });
        let report = verify_presentation(&p, &DiagramAssignment { n: 3 });
        let bad: Vec<_> = report.iter().filter(|c| !c.passed()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].label, "bogus");
        assert_eq!(bad[0].status, CheckStatus::Fail);
        assert!(bad[0].lhs_image.is_some() && bad[0].rhs_image.is_some());
        let json = serde_json::to_value(bad[0]).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["indices"], serde_json::json!([1]));
    }

    #[test]
    fn eval_examples() {
        let a = RamifiedAssignment { n: 3 };
        assert_eq!(eval_word(&Word::empty(), &a).unwrap(), Ramified::identity(3).unwrap());
        assert_eq!(
            eval_word(&word("e1"), &a).unwrap(),
            Ramified::new(Diagram::identity(3).unwrap(), Diagram::e(3, 1, 2).unwrap()).unwrap()
        );
        let d = DiagramAssignment { n: 3 };
        assert_eq!(
            eval_word(&word("s1 t2 s1"), &d).unwrap(),
            eval_word(&word("s2 t1 s2"), &d).unwrap()
        );
        assert!(matches!(eval_word(&word("e1"), &d), Err(Error::UnboundToken(_))));
    }

    #[test]
    fn extended_ties_evaluate_to_e_tilde() {
        for n in 2..=5 {
            let a = RamifiedAssignment { n };
            for i in 1..n {
                for j in i + 1..=n {
                    let spelled = crate::word::extended_tie_word(i, j, n).unwrap();
                    let image = eval_word(&spelled, &a).unwrap();
                    assert_eq!(image, Ramified::e_tilde(n, i, j).unwrap());
                    if j > i + 1 {
                        let mut alt = vec![Token::S(i)];
                        alt.extend(crate::word::extended_tie_word(i + 1, j, n).unwrap().0);
                        alt.push(Token::S(i));
                        assert_eq!(eval_word(&Word(alt), &a).unwrap(), image);
                    }
                }
            }
        }
    }

    #[test]
    fn extended_ties_satisfy_partition_relations() {
        for n in 2..=5 {
            let mut r = Rels::new();
            partition_relations(&mut r, n, |i, j| {
                expand_ties(&Word(vec![tie_token(i, j)]), n).unwrap().0
            });
            let a = RamifiedAssignment { n };
            for rel in r.out {
                assert_eq!(
                    eval_word(&rel.lhs, &a).unwrap(),
                    eval_word(&rel.rhs, &a).unwrap(),
                    "{} {:?}",
                    rel.label,
                    rel.indices
                );
            }
        }
    }

    #[test]
    fn ties_commute_with_tangles() {
        for n in 2..=5 {
            let a = RamifiedAssignment { n };
            for i in 1..n {
                for j in i + 1..=n {
                    let e = Ramified::e_tilde(n, i, j).unwrap();
                    for k in 1..n {
                        let f = Ramified::f_tilde(n, k).unwrap();
                        assert_eq!(e.mul(&f), f.mul(&e));
                        let t = a.image(&Token::T(k)).unwrap();
                        if ![i.wrapping_sub(1), i, j - 1, j].contains(&k) {
                            assert_eq!(e.mul(&t), t.mul(&e), "e{{{i},{j}}} t{k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closures_realise_the_sizes() {
        for n in 1..=4usize {
            let q: Vec<(String, Ramified)> = catalog(PresentationName::Qn, n)
                .unwrap()
                .generators
                .iter()
                .map(|t| (t.to_string(), RamifiedAssignment { n }.image(t).unwrap()))
                .collect();
            let table = closure(Ramified::identity(n).unwrap(), &q, 100_000).unwrap();
            assert_eq!(BigUint::from(table.len()), double_factorial_odd(n) * bell(n));

            let ts: Vec<(String, Ramified)> = q
                .iter()
                .filter(|(l, _)| l.starts_with('s') || l.starts_with('e'))
                .cloned()
                .collect();
            let table = closure(Ramified::identity(n).unwrap(), &ts, 100_000).unwrap();
            assert_eq!(BigUint::from(table.len()), factorial(n) * bell(n));
        }
    }

    #[test]
    fn word_problem() {
        let q = PresentationName::Qn;
        assert!(word_equal(q, 3, &word("s1 t2 s1"), &word("s2 t1 s2")).unwrap());
        assert!(word_equal(q, 3, &word("t1 s2"), &word("t1 s2 s1 s1")).unwrap());
        assert!(!word_equal(q, 3, &word("e1 f2"), &word("f2")).unwrap());
        assert!(word_equal(PresentationName::Wn, 3, &word("t1"), &word("t1")).is_err());
        assert!(word_equal(PresentationName::TJn, 3, &word("s1"), &word("1")).is_err());
        assert!(word_equal(q, 3, &word("s3"), &word("1")).is_err());
    }

    #[test]
    fn five_tied_relations_of_one_brauer_relation() {
        let pairs = [
            ("e{1,2} s1 e2 t2 e2 s1 e{1,2}", "e{1,2} s2 e1 t1 e1 s2 e{1,2}"),
            ("e1 e2 s1 e1 e2 t2 e2 s1 e{1,2}", "e1 e2 s2 e1 e2 t1 e1 s2 e{1,2}"),
            ("e{1,2} s1 e2 t2 e1 e2 s1 e1 e2", "e{1,2} s2 e1 t1 e1 e2 s2 e1 e2"),
            ("e{1,2} s1 e2 f2 e2 s1 e{1,2}", "e{1,2} s2 e1 f1 e1 s2 e{1,2}"),
            ("e1 e2 s1 e1 e2 f2 e1 e2 s1 e1 e2", "e1 e2 s2 e1 e2 f1 e1 e2 s2 e1 e2"),
        ];
        for (u, v) in pairs {
            assert!(word_equal(PresentationName::Qn, 3, &word(u), &word(v)).unwrap(), "{u}");
        }
    }

    #[test]
    fn saturation_of_the_ten_strand_example() {
        let u = word("s3 t5 t8 s2 f6 e1 t7 s2 t6");
        let ue = tie_saturate(&u, 10).unwrap();
        assert_eq!(eval_ramified(&ue, 10).unwrap(), eval_ramified(&u, 10).unwrap());
        assert_eq!(ue.overline(), u.overline());
        assert_eq!(tie_saturate(&ue, 10).unwrap(), ue);
    }

    #[test]
    fn saturation_without_tangles_spreads_ties() {
        let u = word("s1 e2 s2");
        let ue = tie_saturate(&u, 3).unwrap();
        assert_eq!(eval_ramified(&ue, 3).unwrap(), eval_ramified(&u, 3).unwrap());
        assert!(ue.tokens().first().unwrap().is_tie());
        assert!(ue.tokens().last().unwrap().is_tie());
    }

    fn arb_q_word(n: usize) -> impl Strategy<Value = Word> {
        let idx = 1..n;
        let token = prop_oneof![
            idx.clone().prop_map(Token::S),
            idx.clone().prop_map(Token::T),
            idx.clone().prop_map(Token::E),
            idx.prop_map(Token::F),
        ];
        proptest::collection::vec(token, 0..14).prop_map(Word)
    }

    proptest! {
        #[test]
        fn saturation_preserves_images(
            (n, u) in (2usize..=5).prop_flat_map(|n| (Just(n), arb_q_word(n)))
        ) {
            let ue = tie_saturate(&u, n).unwrap();
            prop_assert_eq!(eval_ramified(&ue, n).unwrap(), eval_ramified(&u, n).unwrap());
            prop_assert_eq!(ue.overline(), u.overline());
        }

        #[test]
        fn overline_forgets_the_coarse_partition(u in arb_q_word(5)) {
            let full = eval_ramified(&u, 5).unwrap();
            let bar = eval_ramified(&overline(&u), 5).unwrap();
            prop_assert_eq!(bar.fine(), full.fine());
            prop_assert_eq!(bar.coarse(), full.fine());
        }
    }
}
