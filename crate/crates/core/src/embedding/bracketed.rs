use super::alphabet::ArrowAlgebra;
use crate::error::{Error, Result};
use crate::rewriting::{Letter, TildeSym};
use crate::semigroupoid::Arrow;
use serde::{Deserialize, Serialize};

/// A node of a bracketed word. `Floor` is written `[...]` and `Ceil` is written `{...}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BItem {
    Sym(TildeSym),
    Floor(Vec<BItem>),
    Ceil(Vec<BItem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BracketedWord(pub Vec<BItem>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordClass {
    W,
    Right,
    Left,
    /// No leading path, the first floor skips the `L` condition.
    EmptyBar,
    EmptyBarRight,
    /// No trailing path, the last ceiling skips the `R` condition.
    BarEmpty,
    LeftBarEmpty,
}

impl WordClass {
    pub const ALL: [WordClass; 7] = [
        WordClass::W,
        WordClass::Right,
        WordClass::Left,
        WordClass::EmptyBar,
        WordClass::EmptyBarRight,
        WordClass::BarEmpty,
        WordClass::LeftBarEmpty,
    ];

    fn head(self) -> End {
        match self {
            WordClass::Left | WordClass::LeftBarEmpty => End::Wedge,
            WordClass::EmptyBar | WordClass::EmptyBarRight => End::Empty,
            _ => End::Path,
        }
    }

    fn tail(self) -> End {
        match self {
            WordClass::Right | WordClass::EmptyBarRight => End::Wedge,
            WordClass::BarEmpty | WordClass::LeftBarEmpty => End::Empty,
            _ => End::Path,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    /// a path or nothing
    Path,
    /// a non-loop ∧-letter joined to a path or nothing
    Wedge,
    /// nothing, with a bracket group next to it
    Empty,
}

impl BItem {
    pub fn strip_into(&self, out: &mut Vec<TildeSym>) {
        match self {
            BItem::Sym(s) => out.push(*s),
            BItem::Floor(v) | BItem::Ceil(v) => v.iter().for_each(|i| i.strip_into(out)),
        }
    }

    pub fn is_group(&self) -> bool {
        !matches!(self, BItem::Sym(_))
    }

    fn mirror(&self) -> BItem {
        match self {
            BItem::Sym(TildeSym::Wedge(x, y)) => BItem::Sym(TildeSym::Wedge(*y, *x)),
            BItem::Sym(s) => BItem::Sym(*s),
            BItem::Floor(v) => BItem::Ceil(mirror_items(v)),
            BItem::Ceil(v) => BItem::Floor(mirror_items(v)),
        }
    }
}

pub(crate) fn mirror_items(items: &[BItem]) -> Vec<BItem> {
    items.iter().rev().map(BItem::mirror).collect()
}

pub(crate) fn strip_items(items: &[BItem]) -> Vec<TildeSym> {
    let mut out = Vec::new();
    items.iter().for_each(|i| i.strip_into(&mut out));
    out
}

impl BracketedWord {
    pub fn path(w: &[TildeSym]) -> Self {
        BracketedWord(w.iter().map(|&s| BItem::Sym(s)).collect())
    }

    /// The underlying word `w↓`.
    pub fn strip(&self) -> Vec<TildeSym> {
        strip_items(&self.0)
    }

    /// Reverse the word, swap floors with ceilings and flip every ∧-letter.
    pub fn mirror(&self) -> Self {
        BracketedWord(mirror_items(&self.0))
    }

    pub fn bracket_count(&self) -> usize {
        fn count(items: &[BItem]) -> usize {
            items
                .iter()
                .map(|i| match i {
                    BItem::Sym(_) => 0,
                    BItem::Floor(v) | BItem::Ceil(v) => 1 + count(v),
                })
                .sum()
        }
        count(&self.0)
    }

    pub fn display(&self, alg: &ArrowAlgebra) -> String {
        fn go(items: &[BItem], alg: &ArrowAlgebra, out: &mut String) {
            for i in items {
                match i {
                    BItem::Sym(s) => out.push_str(&alg.sym_name(*s)),
                    BItem::Floor(v) => {
                        out.push('[');
                        go(v, alg, out);
                        out.push(']');
                    }
                    BItem::Ceil(v) => {
                        out.push('{');
                        go(v, alg, out);
                        out.push('}');
                    }
                }
            }
        }
        let mut s = String::new();
        go(&self.0, alg, &mut s);
        s
    }

    /// Parse the `display` syntax: letters `a<index>` with optional `'`, ∧-letters
    /// `(x^y)`, floors `[...]` and ceilings `{...}`. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let items = parse_items(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Syntax { pos, msg: format!("unexpected `{}`", chars[pos]) });
        }
        Ok(BracketedWord(items))
    }
}

fn parse_letter(c: &[char], pos: &mut usize) -> Result<Letter> {
    if c.get(*pos) != Some(&'a') {
        return Err(Error::Syntax { pos: *pos, msg: "expected a letter `a<index>`".into() });
    }
    *pos += 1;
    let start = *pos;
    while c.get(*pos).is_some_and(|ch| ch.is_ascii_digit()) {
        *pos += 1;
    }
    let digits: String = c[start..*pos].iter().collect();
    let base =
        digits.parse::<u32>().map_err(|_| Error::Syntax { pos: start, msg: "expected an arrow index".into() })?;
    let primed = c.get(*pos) == Some(&'\'');
    if primed {
        *pos += 1;
    }
    Ok(Letter::new(base, primed))
}

fn parse_items(c: &[char], pos: &mut usize) -> Result<Vec<BItem>> {
    let mut items = Vec::new();
    while let Some(&ch) = c.get(*pos) {
        match ch {
            'a' => items.push(BItem::Sym(TildeSym::Letter(parse_letter(c, pos)?))),
            '(' => {
                *pos += 1;
                let x = parse_letter(c, pos)?;
                if !matches!(c.get(*pos), Some('^') | Some('∧')) {
                    return Err(Error::Syntax { pos: *pos, msg: "expected `^`".into() });
                }
                *pos += 1;
                let y = parse_letter(c, pos)?;
                if c.get(*pos) != Some(&')') {
                    return Err(Error::Syntax { pos: *pos, msg: "expected `)`".into() });
                }
                *pos += 1;
                items.push(BItem::Sym(TildeSym::Wedge(x, y)));
            }
            '[' | '{' => {
                *pos += 1;
                let inner = parse_items(c, pos)?;
                let close = if ch == '[' { ']' } else { '}' };
                if c.get(*pos) != Some(&close) {
                    return Err(Error::Syntax { pos: *pos, msg: format!("expected `{close}`") });
                }
                if inner.is_empty() {
                    return Err(Error::Syntax { pos: *pos, msg: "empty bracket".into() });
                }
                *pos += 1;
                items.push(if ch == '[' { BItem::Floor(inner) } else { BItem::Ceil(inner) });
            }
            _ => break,
        }
    }
    Ok(items)
}

/// The decomposition `p0 B1C1 p1 … BkCk pk` of a bracketed sequence.
struct Form<'a> {
    paths: Vec<Vec<TildeSym>>,
    groups: Vec<(Vec<&'a [BItem]>, Vec<&'a [BItem]>)>,
}

fn split_form(items: &[BItem]) -> Option<Form<'_>> {
    let mut paths = vec![Vec::new()];
    let mut groups: Vec<(Vec<&[BItem]>, Vec<&[BItem]>)> = Vec::new();
    let mut in_groups = false;
    for item in items {
        match item {
            BItem::Sym(s) => {
                if in_groups {
                    paths.push(Vec::new());
                    in_groups = false;
                }
                paths.last_mut().expect("nonempty").push(*s);
            }
            BItem::Floor(v) | BItem::Ceil(v) => {
                if !in_groups {
                    groups.push((Vec::new(), Vec::new()));
                    in_groups = true;
                }
                let g = groups.last_mut().expect("nonempty");
                if let BItem::Floor(_) = item {
                    if !g.1.is_empty() {
                        return None;
                    }
                    g.0.push(v);
                } else {
                    g.1.push(v);
                }
            }
        }
    }
    if in_groups {
        paths.push(Vec::new());
    }
    Some(Form { paths, groups })
}

impl ArrowAlgebra<'_> {
    fn path_or_empty(&self, p: &[TildeSym]) -> bool {
        p.is_empty() || self.is_path(p)
    }

    /// `℘` of a segment at an end of the form, or `None` if the segment has the wrong shape.
    fn end_segment(&self, p: &[TildeSym], end: End, head: bool) -> Option<Vec<TildeSym>> {
        match end {
            End::Path => self.path_or_empty(p).then(|| p.to_vec()),
            End::Empty => p.is_empty().then(Vec::new),
            End::Wedge => {
                let (&w, rest) = if head { p.split_first()? } else { p.split_last()? };
                let TildeSym::Wedge(x, y) = w else { return None };
                if self.is_wedge_loop(w) || !self.path_or_empty(rest) {
                    return None;
                }
                if head {
                    if rest.first().is_some_and(|&r| self.sym_alpha(r) != self.omega(y)) {
                        return None;
                    }
                    let mut out = vec![TildeSym::Wedge(y.prime(), y)];
                    out.extend_from_slice(rest);
                    Some(out)
                } else {
                    if rest.last().is_some_and(|&r| self.sym_omega(r) != self.alpha(x)) {
                        return None;
                    }
                    let mut out = rest.to_vec();
                    out.push(TildeSym::Wedge(x, x.prime()));
                    Some(out)
                }
            }
        }
    }

    fn value(&self, p: &[TildeSym]) -> Option<Arrow> {
        if p.is_empty() {
            None
        } else {
            self.hat_eval(p).ok()
        }
    }

    /// `℘` of `items` read as a member of `class`, or `None` if it is not a member.
    fn analyze(&self, items: &[BItem], class: WordClass) -> Option<Vec<TildeSym>> {
        let form = split_form(items)?;
        let k = form.groups.len();
        let ps = &form.paths;
        if k == 0 {
            let p = &ps[0];
            return match class {
                WordClass::W => self.is_path(p).then(|| p.clone()),
                WordClass::Right => self.end_segment(p, End::Wedge, false),
                WordClass::Left => self.end_segment(p, End::Wedge, true),
                _ => None,
            };
        }
        let head = self.end_segment(&ps[0], class.head(), true)?;
        let tail = self.end_segment(&ps[k], class.tail(), false)?;
        if class.head() == End::Empty && form.groups[0].0.is_empty() {
            return None;
        }
        if class.tail() == End::Empty && form.groups[k - 1].1.is_empty() {
            return None;
        }
        for p in &ps[1..k] {
            if !self.is_path(p) {
                return None;
            }
        }
        for i in 1..=k {
            if let (Some(&o), Some(&a)) = (ps[i - 1].last(), ps[i].first()) {
                if self.sym_omega(o) != self.sym_alpha(a) {
                    return None;
                }
            }
        }
        let seg_value = |i: usize| -> Option<Arrow> {
            if i == 0 {
                self.value(&head)
            } else if i == k {
                self.value(&tail)
            } else {
                self.value(&ps[i])
            }
        };
        for (i, (floors, ceils)) in form.groups.iter().enumerate() {
            let i = i + 1;
            for f in floors {
                let inner = self.analyze(f, WordClass::Right)?;
                let Some(&TildeSym::Wedge(y, x)) = strip_items(f).last() else { return None };
                let v = self.value(&inner)?;
                if !self.is_idempotent_arrow(v) || !self.ctx.arrow_r_related(self.delta(y), v) {
                    return None;
                }
                let skip = i == 1 && class.head() == End::Empty;
                if !skip && !self.ctx.arrow_l_related(self.delta(x), seg_value(i - 1)?) {
                    return None;
                }
            }
            for c in ceils {
                let inner = self.analyze(c, WordClass::Left)?;
                let Some(&TildeSym::Wedge(x, y)) = strip_items(c).first() else { return None };
                let v = self.value(&inner)?;
                if !self.is_idempotent_arrow(v) || !self.ctx.arrow_l_related(self.delta(y), v) {
                    return None;
                }
                let skip = i == k && class.tail() == End::Empty;
                if !skip && !self.ctx.arrow_r_related(self.delta(x), seg_value(i)?) {
                    return None;
                }
            }
        }
        let mut out = head;
        for p in &ps[1..k] {
            out.extend_from_slice(p);
        }
        out.extend(tail);
        Some(out)
    }

    /// Every class the bracketed word belongs to.
    pub fn classify(&self, bw: &BracketedWord) -> Vec<WordClass> {
        WordClass::ALL.into_iter().filter(|&c| self.analyze(&bw.0, c).is_some()).collect()
    }

    pub fn is_member(&self, bw: &BracketedWord, class: WordClass) -> bool {
        self.analyze(&bw.0, class).is_some()
    }

    /// `℘(w)` for `w` read as a member of `class`.
    pub fn wp_as(&self, bw: &BracketedWord, class: WordClass) -> Result<Vec<TildeSym>> {
        self.analyze(&bw.0, class).ok_or(Error::Unclassified)
    }

    /// `℘(w)` using the first class of `W, W^right, W^left, …` that `w` belongs to.
    pub fn wp(&self, bw: &BracketedWord) -> Result<Vec<TildeSym>> {
        WordClass::ALL.into_iter().find_map(|c| self.analyze(&bw.0, c)).ok_or(Error::Unclassified)
    }

    /// `℘̂(w)`; `None` when `℘(w)` is empty.
    pub fn wp_hat(&self, bw: &BracketedWord) -> Result<Option<Arrow>> {
        let p = self.wp(bw)?;
        if p.is_empty() {
            Ok(None)
        } else {
            self.hat_eval(&p).map(Some)
        }
    }
}
