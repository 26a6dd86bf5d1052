use super::alphabet::ArrowAlgebra;
use crate::error::{Error, Result};
use crate::rewriting::{Letter, TildeSym};
use serde::{Deserialize, Serialize};

/// Which side of a ∧-letter an `S22` step rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `(a∧y) ↔ (c∧y)` with `a∘b = c`
    Left,
    /// `(y∧b) ↔ (y∧c)` with `a∘b = c`
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    S1a,
    S1b,
    S21a,
    S21b,
    S22a,
    S22b,
    T3a,
    T3b,
    T4a,
    T4b,
    T5a,
    T5b,
    Ia,
    Ib,
}

impl StepKind {
    pub const ALL: [StepKind; 14] = [
        StepKind::S1a,
        StepKind::S1b,
        StepKind::S21a,
        StepKind::S21b,
        StepKind::S22a,
        StepKind::S22b,
        StepKind::T3a,
        StepKind::T3b,
        StepKind::T4a,
        StepKind::T4b,
        StepKind::T5a,
        StepKind::T5b,
        StepKind::Ia,
        StepKind::Ib,
    ];
}

/// One step of a derivation over the arrow alphabet. Arrow parameters are arrow indices;
/// `pos` indexes the symbol where the rewritten section starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DerivationStep {
    /// `a' → a†`
    S1a { pos: usize },
    /// `a† → a'`
    S1b { pos: usize, a: usize },
    /// `ab → a∘b`
    S21a { pos: usize },
    /// `a∘b → ab`
    S21b { pos: usize, a: usize, b: usize },
    /// `(a∧y) → (a∘b∧y)` or `(y∧b) → (y∧a∘b)`
    S22a { pos: usize, side: Side, a: usize, b: usize },
    /// `(a∘b∧y) → (a∧y)` or `(y∧a∘b) → (y∧b)`
    S22b { pos: usize, side: Side, a: usize, b: usize },
    /// `(x∧y)(x∧z) → (x∧z)`
    T3a { pos: usize },
    /// `(x∧z) → (x∧y)(x∧z)`
    T3b { pos: usize, y: Letter },
    /// `(z∧x)(y∧x) → (z∧x)`
    T4a { pos: usize },
    /// `(z∧x) → (z∧x)(y∧x)`
    T4b { pos: usize, y: Letter },
    /// `x'x → (x'∧x)`
    T5a { pos: usize },
    /// `(x'∧x) → x'x`
    T5b { pos: usize },
    /// `xx'x → x`
    Ia { pos: usize },
    /// `x → xx'x`
    Ib { pos: usize },
}

impl DerivationStep {
    pub fn kind(&self) -> StepKind {
        use DerivationStep::*;
        match self {
            S1a { .. } => StepKind::S1a,
            S1b { .. } => StepKind::S1b,
            S21a { .. } => StepKind::S21a,
            S21b { .. } => StepKind::S21b,
            S22a { .. } => StepKind::S22a,
            S22b { .. } => StepKind::S22b,
            T3a { .. } => StepKind::T3a,
            T3b { .. } => StepKind::T3b,
            T4a { .. } => StepKind::T4a,
            T4b { .. } => StepKind::T4b,
            T5a { .. } => StepKind::T5a,
            T5b { .. } => StepKind::T5b,
            Ia { .. } => StepKind::Ia,
            Ib { .. } => StepKind::Ib,
        }
    }

    pub fn pos(&self) -> usize {
        use DerivationStep::*;
        match *self {
            S1a { pos }
            | S1b { pos, .. }
            | S21a { pos }
            | S21b { pos, .. }
            | S22a { pos, .. }
            | S22b { pos, .. }
            | T3a { pos }
            | T3b { pos, .. }
            | T4a { pos }
            | T4b { pos, .. }
            | T5a { pos }
            | T5b { pos }
            | Ia { pos }
            | Ib { pos } => pos,
        }
    }

    /// Number of symbols the step removes from the word.
    pub fn removed_len(&self) -> usize {
        use DerivationStep::*;
        match self {
            S21a { .. } | T3a { .. } | T4a { .. } | T5a { .. } => 2,
            Ia { .. } => 3,
            _ => 1,
        }
    }
}

fn no_match(msg: impl Into<String>) -> Error {
    Error::NoMatch(msg.into())
}

fn sym_at(w: &[TildeSym], pos: usize) -> Result<TildeSym> {
    w.get(pos).copied().ok_or_else(|| no_match(format!("position {pos} is past the end")))
}

fn unprimed(l: Letter) -> Result<usize> {
    if l.primed {
        Err(no_match("expected an unprimed letter"))
    } else {
        Ok(l.base as usize)
    }
}

fn letter_at(w: &[TildeSym], pos: usize) -> Result<Letter> {
    match sym_at(w, pos)? {
        TildeSym::Letter(l) => Ok(l),
        TildeSym::Wedge(..) => Err(no_match(format!("symbol {pos} is a ∧-letter"))),
    }
}

fn wedge_at(w: &[TildeSym], pos: usize) -> Result<(Letter, Letter)> {
    match sym_at(w, pos)? {
        TildeSym::Wedge(x, y) => Ok((x, y)),
        TildeSym::Letter(_) => Err(no_match(format!("symbol {pos} is a letter"))),
    }
}

impl ArrowAlgebra<'_> {
    fn arrow_letter(&self, i: usize) -> Letter {
        Letter::new(i as u32, false)
    }

    fn composite(&self, a: usize, b: usize) -> Result<usize> {
        let arrows = self.ctx.arrows();
        if a >= arrows.len() || b >= arrows.len() {
            return Err(Error::BadComposition(format!("arrow index {a} or {b} out of range")));
        }
        let c = self
            .ctx
            .compose(arrows[a], arrows[b])
            .map_err(|_| Error::BadComposition(format!("a{a} and a{b} are not consecutive")))?;
        Ok(self.ctx.arrow_index(c).expect("composite is an arrow"))
    }

    fn dagger_index(&self, a: usize) -> usize {
        let d = self.ctx.dagger_arrow(self.ctx.arrows()[a]);
        self.ctx.arrow_index(d).expect("dagger is an arrow")
    }

    /// The symbols the step inserts in place of the section it removes.
    pub fn step_replacement(&self, w: &[TildeSym], step: &DerivationStep) -> Result<Vec<TildeSym>> {
        use DerivationStep::*;
        use TildeSym::{Letter as L, Wedge as W};
        let pos = step.pos();
        if pos + step.removed_len() > w.len() {
            return Err(no_match("section runs past the end of the word"));
        }
        let out = match *step {
            S1a { pos } => {
                let l = letter_at(w, pos)?;
                if !l.primed {
                    return Err(no_match("S1a needs a primed letter"));
                }
                vec![L(self.arrow_letter(self.dagger_index(l.base as usize)))]
            }
            S1b { pos, a } => {
                let c = unprimed(letter_at(w, pos)?)?;
                if a >= self.arrow_count() || self.dagger_index(a) != c {
                    return Err(no_match(format!("a{c} is not the dagger of a{a}")));
                }
                vec![L(Letter::new(a as u32, true))]
            }
            S21a { pos } => {
                let a = unprimed(letter_at(w, pos)?)?;
                let b = unprimed(letter_at(w, pos + 1)?)?;
                vec![L(self.arrow_letter(self.composite(a, b)?))]
            }
            S21b { pos, a, b } => {
                let c = unprimed(letter_at(w, pos)?)?;
                if self.composite(a, b)? != c {
                    return Err(Error::BadComposition(format!("a{a}∘a{b} != a{c}")));
                }
                vec![L(self.arrow_letter(a)), L(self.arrow_letter(b))]
            }
            S22a { pos, side, a, b } => {
                let (x, y) = wedge_at(w, pos)?;
                let c = self.arrow_letter(self.composite(a, b)?);
                match side {
                    Side::Left if unprimed(x)? == a => vec![W(c, y)],
                    Side::Right if unprimed(y)? == b => vec![W(x, c)],
                    _ => return Err(no_match("S22a side letter does not match")),
                }
            }
            S22b { pos, side, a, b } => {
                let (x, y) = wedge_at(w, pos)?;
                let c = self.composite(a, b)?;
                match side {
                    Side::Left if unprimed(x)? == c => vec![W(self.arrow_letter(a), y)],
                    Side::Right if unprimed(y)? == c => vec![W(x, self.arrow_letter(b))],
                    _ => return Err(no_match("S22b side letter does not match")),
                }
            }
            T3a { pos } => {
                let (x1, _) = wedge_at(w, pos)?;
                let (x2, z) = wedge_at(w, pos + 1)?;
                if x1 != x2 {
                    return Err(no_match("T3a first letters differ"));
                }
                vec![W(x2, z)]
            }
            T3b { pos, y } => {
                let (x, z) = wedge_at(w, pos)?;
                self.check_letter(y)?;
                vec![W(x, y), W(x, z)]
            }
            T4a { pos } => {
                let (z, x1) = wedge_at(w, pos)?;
                let (_, x2) = wedge_at(w, pos + 1)?;
                if x1 != x2 {
                    return Err(no_match("T4a last letters differ"));
                }
                vec![W(z, x1)]
            }
            T4b { pos, y } => {
                let (z, x) = wedge_at(w, pos)?;
                self.check_letter(y)?;
                vec![W(z, x), W(y, x)]
            }
            T5a { pos } => {
                let xp = letter_at(w, pos)?;
                let x = letter_at(w, pos + 1)?;
                if xp != x.prime() {
                    return Err(no_match("T5a needs x'x"));
                }
                vec![W(xp, x)]
            }
            T5b { pos } => {
                let (xp, x) = wedge_at(w, pos)?;
                if xp != x.prime() {
                    return Err(no_match("T5b needs (x'∧x)"));
                }
                vec![L(xp), L(x)]
            }
            Ia { pos } => {
                let x = letter_at(w, pos)?;
                if letter_at(w, pos + 1)? != x.prime() || letter_at(w, pos + 2)? != x {
                    return Err(no_match("Ia needs xx'x"));
                }
                vec![L(x)]
            }
            Ib { pos } => {
                let x = letter_at(w, pos)?;
                vec![L(x), L(x.prime()), L(x)]
            }
        };
        Ok(out)
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if (l.base as usize) < self.arrow_count() {
            Ok(())
        } else {
            Err(no_match(format!("letter a{} is not over an arrow", l.base)))
        }
    }

    /// Apply a step to a word over the arrow alphabet.
    pub fn apply_step(&self, w: &[TildeSym], step: &DerivationStep) -> Result<Vec<TildeSym>> {
        let ins = self.step_replacement(w, step)?;
        let pos = step.pos();
        let mut out = w[..pos].to_vec();
        out.extend(ins);
        out.extend_from_slice(&w[pos + step.removed_len()..]);
        Ok(out)
    }

    /// Every applicable step whose result has at most `max_len` symbols.
    pub fn applicable_steps(&self, w: &[TildeSym], max_len: usize) -> Vec<DerivationStep> {
        use DerivationStep::*;
        let mut out = Vec::new();
        let n = w.len();
        let letters = self.letters();
        let arrows = self.ctx.arrows();
        for pos in 0..n {
            match w[pos] {
                TildeSym::Letter(l) => {
                    if l.primed {
                        out.push(S1a { pos });
                    } else {
                        let c = l.base as usize;
                        for a in 0..arrows.len() {
                            if self.dagger_index(a) == c {
                                out.push(S1b { pos, a });
                            }
                        }
                        if n < max_len {
                            for &(a, b) in self.factorizations(c) {
                                out.push(S21b { pos, a, b });
                            }
                        }
                    }
                    if n + 2 <= max_len {
                        out.push(Ib { pos });
                    }
                }
                TildeSym::Wedge(x, y) => {
                    if !x.primed {
                        let a = x.base as usize;
                        for (b, ab) in arrows.iter().enumerate() {
                            if ab.source == arrows[a].target {
                                out.push(S22a { pos, side: Side::Left, a, b });
                            }
                        }
                        for &(a, b) in self.factorizations(x.base as usize) {
                            out.push(S22b { pos, side: Side::Left, a, b });
                        }
                    }
                    if !y.primed {
                        let b = y.base as usize;
                        for (a, aa) in arrows.iter().enumerate() {
                            if aa.target == arrows[b].source {
                                out.push(S22a { pos, side: Side::Right, a, b });
                            }
                        }
                        for &(a, b) in self.factorizations(y.base as usize) {
                            out.push(S22b { pos, side: Side::Right, a, b });
                        }
                    }
                    if n < max_len {
                        for &l in &letters {
                            out.push(T3b { pos, y: l });
                            out.push(T4b { pos, y: l });
                        }
                    }
                    if x == y.prime() {
                        out.push(T5b { pos });
                    }
                }
            }
        }
        for pos in 0..n.saturating_sub(1) {
            let steps = [T3a { pos }, T4a { pos }, T5a { pos }, S21a { pos }];
            out.extend(steps.into_iter().filter(|s| self.step_replacement(w, s).is_ok()));
        }
        for pos in 0..n.saturating_sub(2) {
            if self.step_replacement(w, &Ia { pos }).is_ok() {
                out.push(Ia { pos });
            }
        }
        out.retain(|s| n < max_len || !matches!(s, T5b { .. }));
        out
    }
}
