use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A letter of the doubled alphabet: a base letter or its formal prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub base: u32,
    pub primed: bool,
}

impl Letter {
    pub const fn new(base: u32, primed: bool) -> Self {
        Letter { base, primed }
    }

    /// The involution `x ↦ x'`.
    pub const fn prime(self) -> Self {
        Letter { base: self.base, primed: !self.primed }
    }
}

/// Names of the base letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        for n in &names {
            let mut cs = n.chars();
            let ok = cs.next().is_some_and(|c| c.is_ascii_alphabetic()) && cs.all(|c| c.is_ascii_digit());
            if !ok {
                return Err(Error::Format(format!("invalid letter name {n:?}")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `n` letters named `x, y, z, w`, then `x4, x5, …`.
    pub fn standard(n: usize) -> Self {
        let names = (0..n)
            .map(|i| match i {
                0..=3 => ["x", "y", "z", "w"][i].to_string(),
                _ => format!("x{i}"),
            })
            .collect();
        Alphabet { names }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// All letters of the doubled alphabet in order `x, x', y, y', …`.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.names.len() as u32).flat_map(|b| [Letter::new(b, false), Letter::new(b, true)]).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn letter_name(&self, l: Letter) -> String {
        let base = self.names.get(l.base as usize).cloned().unwrap_or_else(|| format!("?{}", l.base));
        if l.primed {
            base + "'"
        } else {
            base
        }
    }

    /// Grow the alphabet to contain every letter name used in `text`.
    pub fn infer(text: &str) -> Self {
        let mut names: Vec<String> = Vec::new();
        let cs: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < cs.len() {
            if cs[i].is_ascii_alphabetic() {
                let mut n = cs[i].to_string();
                i += 1;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    n.push(cs[i]);
                    i += 1;
                }
                if !names.contains(&n) {
                    names.push(n);
                }
            } else {
                i += 1;
            }
        }
        Alphabet { names }
    }
}

/// One factor of a flattened term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    Letter(Letter),
    Wedge(Box<Term>, Box<Term>),
}

/// A term of the free binary semigroup: a nonempty flattened product of items.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(pub Vec<Item>);

impl Term {
    pub fn letter(l: Letter) -> Self {
        Term(vec![Item::Letter(l)])
    }

    pub fn wedge(u: Term, v: Term) -> Self {
        Term(vec![Item::Wedge(Box::new(u), Box::new(v))])
    }

    pub fn concat(mut self, other: Term) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    /// First letter read left to right.
    pub fn iota(&self) -> Letter {
        match &self.0[0] {
            Item::Letter(l) => *l,
            Item::Wedge(u, _) => u.iota(),
        }
    }

    /// Last letter read left to right.
    pub fn tau(&self) -> Letter {
        match self.0.last().expect("terms are nonempty") {
            Item::Letter(l) => *l,
            Item::Wedge(_, v) => v.tau(),
        }
    }

    pub fn letter_count(&self) -> usize {
        self.0
            .iter()
            .map(|it| match it {
                Item::Letter(_) => 1,
                Item::Wedge(u, v) => u.letter_count() + v.letter_count(),
            })
            .sum()
    }

    /// Number of binary operation nodes.
    pub fn operation_count(&self) -> usize {
        self.letter_count() - 1
    }

    /// Letters plus concatenation nodes; every reduction strictly decreases it.
    pub fn length(&self) -> usize {
        self.0.len() - 1
            + self
                .0
                .iter()
                .map(|it| match it {
                    Item::Letter(_) => 1,
                    Item::Wedge(u, v) => u.length() + v.length(),
                })
                .sum::<usize>()
    }

    pub fn display<'a>(&'a self, a: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayTerm(self, a)
    }
}

struct DisplayTerm<'a>(&'a Term, &'a Alphabet);

impl fmt::Display for DisplayTerm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for it in &self.0 .0 {
            match it {
                Item::Letter(l) => write!(f, "{}", self.1.letter_name(*l))?,
                Item::Wedge(u, v) => write!(f, "({}^{})", u.display(self.1), v.display(self.1))?,
            }
        }
        Ok(())
    }
}

/// A symbol of `Ã = X̄ ∪ (X̄ ∧ X̄)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TildeSym {
    Letter(Letter),
    Wedge(Letter, Letter),
}

impl TildeSym {
    pub fn first(self) -> Letter {
        match self {
            TildeSym::Letter(l) | TildeSym::Wedge(l, _) => l,
        }
    }

    pub fn last(self) -> Letter {
        match self {
            TildeSym::Letter(l) | TildeSym::Wedge(_, l) => l,
        }
    }

    pub fn to_item(self) -> Item {
        match self {
            TildeSym::Letter(l) => Item::Letter(l),
            TildeSym::Wedge(x, y) => Item::Wedge(Box::new(Term::letter(x)), Box::new(Term::letter(y))),
        }
    }

    /// All symbols over the given letters.
    pub fn all(letters: &[Letter]) -> Vec<TildeSym> {
        let mut out: Vec<TildeSym> = letters.iter().map(|&l| TildeSym::Letter(l)).collect();
        for &x in letters {
            for &y in letters {
                out.push(TildeSym::Wedge(x, y));
            }
        }
        out
    }
}

/// A nonempty word over `Ã`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TildeWord(pub Vec<TildeSym>);

impl TildeWord {
    pub fn iota(&self) -> Letter {
        self.0[0].first()
    }

    pub fn tau(&self) -> Letter {
        self.0.last().expect("nonempty").last()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_term(&self) -> Term {
        Term(self.0.iter().map(|s| s.to_item()).collect())
    }

    /// Recognize a term already lying in `Ã⁺`.
    pub fn from_term(t: &Term) -> Option<TildeWord> {
        t.0.iter()
            .map(|it| match it {
                Item::Letter(l) => Some(TildeSym::Letter(*l)),
                Item::Wedge(u, v) => match (&u.0[..], &v.0[..]) {
                    ([Item::Letter(x)], [Item::Letter(y)]) => Some(TildeSym::Wedge(*x, *y)),
                    _ => None,
                },
            })
            .collect::<Option<Vec<_>>>()
            .map(TildeWord)
    }

    pub fn display<'a>(&'a self, a: &'a Alphabet) -> String {
        self.to_term().display(a).to_string()
    }
}

/// The binary operation on `Ã⁺`: `(u ∧ v) = (ιu ∧ vτ)`.
pub fn tilde_wedge(u: &TildeWord, v: &TildeWord) -> TildeWord {
    TildeWord(vec![TildeSym::Wedge(u.iota(), v.tau())])
}

/// Collapse every wedge node to the ∧-letter of its outer letters.
pub fn r0_flatten(t: &Term) -> TildeWord {
    TildeWord(
        t.0.iter()
            .map(|it| match it {
                Item::Letter(l) => TildeSym::Letter(*l),
                Item::Wedge(u, v) => {
                    let (u, v) = (r0_flatten(u), r0_flatten(v));
                    TildeSym::Wedge(u.iota(), v.tau())
                }
            })
            .collect(),
    )
}

/// Parse `term := item+`, `item := letter | "(" term "^" term ")"`, where a letter is an
/// ASCII letter followed by optional digits and an optional `'`. `∧` is accepted for `^`.
pub fn parse_term(text: &str, alphabet: &Alphabet) -> Result<Term> {
    let toks: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { toks: &toks, i: 0, alphabet, len: text.len() };
    let t = p.term()?;
    if p.i < toks.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(t)
}

/// Parse a word over `Ã`; every wedge must have letter arguments.
pub fn parse_tilde_word(text: &str, alphabet: &Alphabet) -> Result<TildeWord> {
    let t = parse_term(text, alphabet)?;
    TildeWord::from_term(&t).ok_or(Error::Syntax { pos: 0, msg: "wedge arguments must be single letters".into() })
}

struct Parser<'a> {
    toks: &'a [(usize, char)],
    i: usize,
    alphabet: &'a Alphabet,
    len: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.len, |t| t.0)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos(), msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.i).map(|t| t.1)
    }

    fn term(&mut self) -> Result<Term> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '(' {
                self.i += 1;
                let u = self.term()?;
                match self.peek() {
                    Some('^') | Some('∧') => self.i += 1,
                    _ => return Err(self.err("expected '^'")),
                }
                let v = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                items.push(Item::Wedge(Box::new(u), Box::new(v)));
            } else if c.is_ascii_alphabetic() {
                let start = self.pos();
                let mut name = c.to_string();
                self.i += 1;
                while let Some(d) = self.peek().filter(|d| d.is_ascii_digit()) {
                    name.push(d);
                    self.i += 1;
                }
                let base = self
                    .alphabet
                    .index_of(&name)
                    .ok_or(Error::Syntax { pos: start, msg: format!("unknown letter {name}") })?;
                let primed = self.peek() == Some('\'');
                if primed {
                    self.i += 1;
                }
                items.push(Item::Letter(Letter::new(base, primed)));
            } else {
                break;
            }
        }
        if items.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok(Term(items))
    }
}
