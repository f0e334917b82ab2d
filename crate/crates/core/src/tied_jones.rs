//! The tied Jones monoid: `f . e` normal forms, descending runs
//! `f_{j,k} = f_k f_{k-1} ... f_j`, gaps, the Catalan-triangle strata and
//! boxed ramified partitions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::counting::binomial;
use crate::diagram::{Diagram, Point};
use crate::error::{Error, Result};
use crate::set_partition::{enumerate_linear, SetPartition};
use crate::word::{Token, Word};

/// A product of descending runs `f_{j_1,k_1} ... f_{j_t,k_t}` with strictly
/// increasing `j`'s and `k`'s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FWord {
    n: usize,
    runs: Vec<(usize, usize)>,
}

impl FWord {
    pub fn new(n: usize, runs: Vec<(usize, usize)>) -> Result<Self> {
        for (p, &(j, k)) in runs.iter().enumerate() {
            if j == 0 || j > k || k >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "run f{{{j},{k}}} needs 1 <= j <= k <= {}",
                    n.saturating_sub(1)
                )));
            }
            if p > 0 {
                let (pj, pk) = runs[p - 1];
                if pj >= j || pk >= k {
                    return Err(Error::Parse(format!(
                        "runs f{{{pj},{pk}}} f{{{j},{k}}} are not strictly increasing"
                    )));
                }
            }
        }
        Ok(FWord { n, runs })
    }

    pub fn empty(n: usize) -> Self {
        FWord { n, runs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    pub fn indices(&self) -> BTreeSet<usize> {
        self.runs.iter().flat_map(|&(j, k)| j..=k).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.runs.iter().any(|&(j, k)| j <= i && i <= k)
    }

    /// `N(f)`: the number of distinct indices.
    pub fn degree(&self) -> usize {
        self.indices().len()
    }

    /// Indices strictly between consecutive runs, increasing.
    pub fn gaps(&self) -> Vec<usize> {
        self.runs
            .windows(2)
            .flat_map(|w| w[0].1 + 1..w[1].0)
            .collect()
    }

    pub fn to_word(&self) -> Word {
        Word(
            self.runs
                .iter()
                .flat_map(|&(j, k)| (j..=k).rev().map(Token::F))
                .collect(),
        )
    }

    /// Parse `f{1,2} f{4,5}` (or `f3` for a single letter run); `1` is empty.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(FWord::empty(n));
        }
        let bad = || Error::Parse(format!("bad run list {s:?}"));
        let mut runs = Vec::new();
        for item in s.split_whitespace().collect::<Vec<_>>().join("").split('f').skip(1) {
            let (j, k) = match item.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                Some(inner) => inner.split_once(',').ok_or_else(bad)?,
                None => (item, item),
            };
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            runs.push((j, k));
        }
        if !s.starts_with('f') {
            return Err(bad());
        }
        FWord::new(n, runs)
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("1");
        }
        for (p, (j, k)) in self.runs.iter().enumerate() {
            if p > 0 {
                f.write_str(" ")?;
            }
            write!(f, "f{{{j},{k}}}")?;
        }
        Ok(())
    }
}

/// Normal form `f . e` with every tie index absent from `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TJNormal {
    pub f: FWord,
    pub e: BTreeSet<usize>,
}

impl TJNormal {
    pub fn new(f: FWord, e: BTreeSet<usize>) -> Result<Self> {
        if let Some(&i) = e.iter().find(|&&i| i == 0 || i >= f.n || f.contains(i)) {
            return Err(Error::IndexOutOfRange(format!("tie e{i} not allowed next to {f}")));
        }
        Ok(TJNormal { f, e })
    }

    pub fn to_word(&self) -> Word {
        let mut w = self.f.to_word();
        w.0.extend(self.e.iter().map(|&i| Token::E(i)));
        w
    }

    /// Parse `f{1,2} f{4,5} | e3 e6`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let (fs, es) = s.split_once('|').unwrap_or((s, ""));
        let f = FWord::parse(fs, n)?;
        let ties: Word = es.parse()?;
        let mut e = BTreeSet::new();
        for t in ties.tokens() {
            match *t {
                Token::E(i) => {
                    e.insert(i);
                }
                other => return Err(Error::Parse(format!("{other} is not a tie"))),
            }
        }
        TJNormal::new(f, e)
    }
}

impl fmt::Display for TJNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | ", self.f)?;
        if self.e.is_empty() {
            return f.write_str("1");
        }
        let ties: Vec<String> = self.e.iter().map(|i| format!("e{i}")).collect();
        f.write_str(&ties.join(" "))
    }
}

fn neighbours(a: usize, b: usize) -> bool {
    a.abs_diff(b) == 1
}

/// One reduction step on a word in the `f`'s: between two consecutive
/// occurrences of `f_i`, no neighbour letter allows `f_i X f_i -> f_i X`, and
/// exactly one neighbour `f_j` allows `f_i A f_j B f_i -> A f_i B` with a new
/// tie `e_j`.
fn reduce_once(letters: &mut Vec<usize>, ties: &mut BTreeSet<usize>) -> bool {
    for p in 0..letters.len() {
        let i = letters[p];
        let Some(q) = (p + 1..letters.len()).find(|&q| letters[q] == i) else {
            continue;
        };
        let between: Vec<usize> = (p + 1..q).filter(|&r| neighbours(letters[r], i)).collect();
        match between[..] {
            [] => {
                letters.remove(q);
                return true;
            }
            [r] => {
                ties.insert(letters[r]);
                letters[r] = i;
                letters.remove(q);
                letters.remove(p);
                return true;
            }
            _ => {}
        }
    }
    false
}

/// Lexicographically least word in the commutation class of `letters`.
fn lex_least(letters: &[usize]) -> Vec<usize> {
    let mut rest = letters.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // a letter can move to the front if nothing before it fails to commute
        let pick = (0..rest.len())
            .filter(|&p| rest[..p].iter().all(|&x| x.abs_diff(rest[p]) > 1))
            .min_by_key(|&p| rest[p])
            .expect("first letter is always available");
        out.push(rest.remove(pick));
    }
    out
}

fn runs_of(letters: &[usize]) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &x in letters {
        match runs.last_mut() {
            Some((j, _)) if *j == x + 1 => *j = x,
            _ => runs.push((x, x)),
        }
    }
    runs
}

/// Normal form of a word in `e_i`, `f_i`.
pub fn tj_normalize(w: &Word, n: usize) -> Result<TJNormal> {
    w.check_range(n)?;
    let mut letters = Vec::new();
    let mut ties = BTreeSet::new();
    for t in w.tokens() {
        match *t {
            Token::F(i) => letters.push(i),
            Token::E(i) => {
                ties.insert(i);
            }
            other => return Err(Error::UnboundToken(format!("{other} is not in tJ_{n}"))),
        }
    }
    while reduce_once(&mut letters, &mut ties) {}
    let f = FWord::new(n, runs_of(&lex_least(&letters)))?;
    ties.retain(|&i| !f.contains(i));
    TJNormal::new(f, ties)
}

/// All run products on `n` strands with `N(f) = k`, in lexicographic order
/// of their run lists.
pub fn enumerate_fwords(n: usize, k: usize) -> Vec<FWord> {
    fn go(
        n: usize,
        k: usize,
        runs: &mut Vec<(usize, usize)>,
        covered: usize,
        out: &mut Vec<FWord>,
    ) {
        if covered == k {
            out.push(FWord { n, runs: runs.clone() });
        }
        let (pj, pk) = runs.last().copied().unwrap_or((0, 0));
        for j in pj + 1..n {
            for kk in (pk + 1).max(j)..n {
                let fresh = kk + 1 - j.max(pk + 1);
                if covered + fresh > k {
                    break;
                }
                runs.push((j, kk));
                go(n, k, runs, covered + fresh, out);
                runs.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), 0, &mut out);
    out
}

/// Every normal form on `n` strands.
pub fn enumerate_normal_forms(n: usize) -> Vec<TJNormal> {
    let mut out = Vec::new();
    for k in 0..=n {
        for f in enumerate_fwords(n, k) {
            let free: Vec<usize> = (1..n).filter(|&i| !f.contains(i)).collect();
            for mask in 0u64..1 << free.len() {
                let e = free
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                out.push(TJNormal { f: f.clone(), e });
            }
        }
    }
    out
}

/// The bijection from `G_n^{k-1}` onto the elements of `G_n^k` that use
/// `f_{n-1}`.
pub fn h_map(b: &FWord) -> Result<FWord> {
    let n = b.n;
    if n < 2 || b.degree() + 1 >= n {
        return Err(Error::OutsideDomain(format!("{b} has no image for n = {n}")));
    }
    let mut runs = b.runs.clone();
    if !b.contains(n - 1) {
        runs.push((n - 1, n - 1));
        return FWord::new(n, runs);
    }
    // position of the run just above the largest gap (or the first run)
    let i = (1..runs.len())
        .rev()
        .find(|&i| runs[i].0 > runs[i - 1].1 + 1)
        .unwrap_or(0);
    for run in &mut runs[i..] {
        run.0 -= 1;
    }
    FWord::new(n, runs)
}

pub fn h_inverse(b: &FWord) -> Result<FWord> {
    let n = b.n;
    if n < 2 || !b.contains(n - 1) {
        return Err(Error::OutsideDomain(format!("{b} does not use f{}", n.saturating_sub(1))));
    }
    let mut runs = b.runs.clone();
    let t = runs.len() - 1;
    if runs[t].0 == n - 1 {
        runs.pop();
        return FWord::new(n, runs);
    }
    let m = (1..=t)
        .rev()
        .find(|&m| runs[m].0 > runs[m - 1].1)
        .unwrap_or(0);
    for run in &mut runs[m..] {
        run.0 += 1;
    }
    FWord::new(n, runs)
}

/// The Catalan triangle `T(n, k)`, `0 <= k <= n`.
pub fn catalan_triangle(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("T({n}, {k}) needs k <= n")));
    }
    Ok(catalan_triangle_rows(n)[n][k].clone())
}

/// Rows `0..=max_n` of the Catalan triangle.
pub fn catalan_triangle_rows(max_n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut row = vec![BigUint::zero(); n + 1];
        row[0] = BigUint::one();
        for k in 1..n {
            row[k] = &row[k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// `B(n, j)`: pairs `(I, R)` with `I` planar Brauer and `R` boxed with `j`
/// blocks, by the closed formula.
pub fn boxed_count(n: usize, j: usize) -> Result<BigUint> {
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("B({n}, {j}) needs 1 <= j <= n")));
    }
    let rows = catalan_triangle_rows(n);
    Ok((j..=n)
        .map(|k| binomial(k - 1, j - 1) * &rows[n][n - k])
        .sum())
}

/// Boxed partition of `[n] ∪ [n']` whose top restriction is `linear`.
pub fn boxed_partition(linear: &SetPartition) -> Result<Diagram> {
    let n = linear.ground_size();
    let blocks: Vec<Vec<Point>> = linear
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&x| Point::Top(x))
                .chain(b.iter().map(|&x| Point::Bottom(x)))
                .collect()
        })
        .collect();
    Diagram::from_blocks(n, &blocks)
}

/// All planar Brauer diagrams on `n` strands.
pub fn planar_brauer_diagrams(n: usize) -> Result<Vec<Diagram>> {
    let mut out = Vec::new();
    for k in 0..=n {
        for f in enumerate_fwords(n, k) {
            let w = f.to_word().overline();
            let mut d = Diagram::identity(n)?;
            for t in w.tokens() {
                if let Token::T(i) = *t {
                    d = d.concat(&Diagram::h(n, i)?)?;
                }
            }
            out.push(d);
        }
    }
    Ok(out)
}

/// `B(n, j)` for `j = 1..=n` by listing planar `I` and boxed `R ⪰ I`.
pub fn boxed_counts_by_enumeration(n: usize) -> Result<Vec<u64>> {
    let planar = planar_brauer_diagrams(n)?;
    let boxed: Vec<(usize, Diagram)> = enumerate_linear(n)?
        .map(|l| Ok((l.num_blocks(), boxed_partition(&l)?)))
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; n + 1];
    for i in &planar {
        for (j, r) in &boxed {
            if i.partition().finer_than(r.partition())? {
                counts[*j] += 1;
            }
        }
    }
    Ok(counts.split_off(1))
}

/// Number of inseparable planar pieces of a planar Brauer diagram.
pub fn separability_degree(d: &Diagram) -> Result<usize> {
    if !d.is_brauer() || !d.is_planar() {
        return Err(Error::NotPlanar(d.to_string()));
    }
    let n = d.n();
    let splits = (1..n)
        .filter(|&m| {
            d.blocks().iter().all(|b| {
                let left = b.iter().any(|p| p.index() <= m);
                let right = b.iter().any(|p| p.index() > m);
                !(left && right)
            })
        })
        .count();
    Ok(splits + usize::from(n > 0))
}

/// `n,j,B` rows of the `B(n, j)` triangle.
pub fn boxed_table_csv(max_n: usize) -> Result<String> {
    let mut out = String::from("n,j,B\n");
    for n in 1..=max_n {
        for j in 1..=n {
            out.push_str(&format!("{n},{j},{}\n", boxed_count(n, j)?));
        }
    }
    Ok(out)
}
