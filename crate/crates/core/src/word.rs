//! Words over the generator alphabets: `s_i`, `t_i`, `e_i`, extended ties
//! `e_{i,j}`, tied tangles `f_i`, and the double-partition atoms `a_{i,j}`,
//! `b_{i,j}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    S(usize),
    T(usize),
    E(usize),
    /// `e_{i,j}` with `i < j`.
    Tie(usize, usize),
    F(usize),
    A(usize, usize),
    B(usize, usize),
}

impl Token {
    /// Extended tie with its indices sorted; `i == j` is rejected.
    pub fn tie(i: usize, j: usize) -> Result<Token> {
        pair(i, j).map(|(i, j)| Token::Tie(i, j))
    }

    pub fn name(&self) -> char {
        match self {
            Token::S(_) => 's',
            Token::T(_) => 't',
            Token::E(_) | Token::Tie(..) => 'e',
            Token::F(_) => 'f',
            Token::A(..) => 'a',
            Token::B(..) => 'b',
        }
    }

    pub fn is_tie(&self) -> bool {
        matches!(self, Token::E(_) | Token::Tie(..))
    }

    /// Largest point index the token touches (`i+1` for adjacent generators).
    pub fn max_point(&self) -> usize {
        match *self {
            Token::S(i) | Token::T(i) | Token::E(i) | Token::F(i) => i + 1,
            Token::Tie(_, j) | Token::A(_, j) | Token::B(_, j) => j,
        }
    }
}

fn pair(i: usize, j: usize) -> Result<(usize, usize)> {
    if i == j || i == 0 || j == 0 {
        return Err(Error::IndexOutOfRange(format!("bad index pair {{{i},{j}}}")));
    }
    Ok((i.min(j), i.max(j)))
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::S(i) => write!(f, "s{i}"),
            Token::T(i) => write!(f, "t{i}"),
            Token::E(i) => write!(f, "e{i}"),
            Token::Tie(i, j) => write!(f, "e{{{i},{j}}}"),
            Token::F(i) => write!(f, "f{i}"),
            Token::A(i, j) => write!(f, "a{{{i},{j}}}"),
            Token::B(i, j) => write!(f, "b{{{i},{j}}}"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Token> {
        let bad = || Error::Parse(format!("bad token {s:?}"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let index = |t: &str| -> Result<usize> {
            match t.parse::<usize>() {
                Ok(0) | Err(_) => Err(bad()),
                Ok(i) => Ok(i),
            }
        };
        if let Some(inner) = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let (i, j) = inner.split_once(',').ok_or_else(bad)?;
            let (i, j) = pair(index(i.trim())?, index(j.trim())?)?;
            return match head {
                'e' => Ok(Token::Tie(i, j)),
                'a' => Ok(Token::A(i, j)),
                'b' => Ok(Token::B(i, j)),
                _ => Err(bad()),
            };
        }
        let i = index(rest)?;
        match head {
            's' => Ok(Token::S(i)),
            't' => Ok(Token::T(i)),
            'e' => Ok(Token::E(i)),
            'f' => Ok(Token::F(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Token {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Token {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Token>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, t: Token) {
        self.0.push(t);
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Delete every tie and replace each `f_i` by `t_i`.
    pub fn overline(&self) -> Word {
        Word(
            self.0
                .iter()
                .filter(|t| !t.is_tie())
                .map(|t| match *t {
                    Token::F(i) => Token::T(i),
                    other => other,
                })
                .collect(),
        )
    }

    /// Check that every index fits on `n` strands.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|t| t.max_point() > n) {
            Some(t) => Err(Error::IndexOutOfRange(format!("{t} does not fit n = {n}"))),
            None => Ok(()),
        }
    }
}

impl From<Vec<Token>> for Word {
    fn from(v: Vec<Token>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Whitespace-separated tokens; `1` or the empty string is the empty word.
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        // allow "e{1, 3}" by gluing brace groups before splitting
        let mut tokens = Vec::new();
        let mut cur = String::new();
        let mut depth = 0;
        for c in s.chars() {
            match c {
                '{' => {
                    depth += 1;
                    cur.push(c);
                }
                '}' => {
                    depth -= 1;
                    cur.push(c);
                }
                c if c.is_whitespace() && depth == 0 => {
                    if !cur.is_empty() {
                        tokens.push(cur.parse()?);
                        cur.clear();
                    }
                }
                c if c.is_whitespace() => {}
                c => cur.push(c),
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced braces in {s:?}")));
        }
        if !cur.is_empty() {
            tokens.push(cur.parse()?);
        }
        Ok(Word(tokens))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `e_{i,j}` spelled in `s` and `e` generators: `e_{i,i+1} = e_i` and
/// `e_{i,j} = s_{j-1} e_{i,j-1} s_{j-1}`.
pub fn extended_tie_word(i: usize, j: usize, n: usize) -> Result<Word> {
    if i == 0 || i >= j || j > n {
        return Err(Error::IndexOutOfRange(format!(
            "extended tie needs 1 <= i < j <= n, got ({i}, {j}, {n})"
        )));
    }
    let mut w = vec![Token::E(i)];
    for m in i + 2..=j {
        let mut next = Vec::with_capacity(w.len() + 2);
        next.push(Token::S(m - 1));
        next.extend(w);
        next.push(Token::S(m - 1));
        w = next;
    }
    Ok(Word(w))
}

/// Replace every `e_{i,j}` by its spelling in `s` and `e`.
pub fn expand_ties(w: &Word, n: usize) -> Result<Word> {
    let mut out = Vec::with_capacity(w.len());
    for t in w.tokens() {
        match *t {
            Token::Tie(i, j) => out.extend(extended_tie_word(i, j, n)?.0),
            other => out.push(other),
        }
    }
    Ok(Word(out))
}
