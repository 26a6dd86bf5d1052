use super::alphabet::ArrowAlgebra;
use super::bracketed::{mirror_items, strip_items, BItem, BracketedWord, WordClass};
use super::steps::DerivationStep;
use crate::error::{Error, Result};
use crate::rewriting::TildeSym;
use serde::Serialize;

/// A lifted step: the new bracketed word and the surgery cases used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lifted {
    pub word: BracketedWord,
    pub cases: Vec<&'static str>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum GroupKind {
    Top,
    Floor,
    Ceil,
}

fn locate(items: &[BItem]) -> Vec<Vec<usize>> {
    fn go(items: &[BItem], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (i, item) in items.iter().enumerate() {
            prefix.push(i);
            match item {
                BItem::Sym(_) => out.push(prefix.clone()),
                BItem::Floor(v) | BItem::Ceil(v) => go(v, prefix, out),
            }
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(items, &mut Vec::new(), &mut out);
    out
}

fn group<'a>(items: &'a [BItem], prefix: &[usize]) -> (&'a [BItem], GroupKind) {
    let mut cur = items;
    let mut kind = GroupKind::Top;
    for &i in prefix {
        match &cur[i] {
            BItem::Floor(v) => {
                cur = v;
                kind = GroupKind::Floor;
            }
            BItem::Ceil(v) => {
                cur = v;
                kind = GroupKind::Ceil;
            }
            BItem::Sym(_) => unreachable!("prefix passes through a symbol"),
        }
    }
    (cur, kind)
}

fn group_mut<'a>(items: &'a mut Vec<BItem>, prefix: &[usize]) -> &'a mut Vec<BItem> {
    let mut cur = items;
    for &i in prefix {
        cur = match &mut cur[i] {
            BItem::Floor(v) | BItem::Ceil(v) => v,
            BItem::Sym(_) => unreachable!("prefix passes through a symbol"),
        };
    }
    cur
}

fn not_covered(msg: &str) -> Error {
    Error::CaseNotCovered(msg.to_string())
}

fn lcp(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Insert `(y∧x)` after the ∧-letter `(z∧x)` at `pos`.
fn t4b_surgery(
    items: &mut Vec<BItem>,
    pos: usize,
    new: TildeSym,
    is_loop: &dyn Fn(TildeSym) -> bool,
) -> Result<&'static str> {
    let paths = locate(items);
    let p = paths.get(pos).ok_or_else(|| not_covered("position out of range"))?;
    let (parent, idx) = (&p[..p.len() - 1], p[p.len() - 1]);
    let (g, kind) = group(items, parent);
    let BItem::Sym(old) = g[idx] else { unreachable!() };
    let item = if is_loop(new) { BItem::Sym(new) } else { BItem::Floor(vec![BItem::Sym(new)]) };
    if is_loop(old) || (kind == GroupKind::Ceil && idx == 0) {
        group_mut(items, parent).insert(idx + 1, item);
        Ok(if is_loop(old) { "T4b-loop" } else { "T4b-ceil-head" })
    } else if kind == GroupKind::Floor && idx + 1 == g.len() {
        let (gp, fi) = (&parent[..parent.len() - 1], parent[parent.len() - 1]);
        group_mut(items, gp).insert(fi + 1, item);
        Ok("T4b-floor-tail")
    } else {
        Err(not_covered("T4b: ∧-letter is neither a loop, a ceiling head nor a floor tail"))
    }
}

/// Splice `⌈(z∧x)u22⌉w2` as the items of `u22` followed by `⌊w2⌋`, if `content` has that shape.
fn split_floor_head(content: &[BItem], rel: &[usize]) -> Option<Vec<BItem>> {
    if rel != [0, 0] || content.len() < 2 {
        return None;
    }
    let BItem::Ceil(u2) = &content[0] else { return None };
    let mut out: Vec<BItem> = u2[1..].to_vec();
    out.push(BItem::Floor(content[1..].to_vec()));
    Some(out)
}

/// Delete the second of the ∧-letters `(y∧x)(z∧x)` at `pos, pos + 1`.
fn t4a_surgery(items: &mut Vec<BItem>, pos: usize, is_loop: &dyn Fn(TildeSym) -> bool) -> Result<&'static str> {
    let paths = locate(items);
    let (Some(p1), Some(p2)) = (paths.get(pos), paths.get(pos + 1)) else {
        return Err(not_covered("position out of range"));
    };
    let c = lcp(p1, p2);
    let u = &p1[..c];
    let (ug, ukind) = group(items, u);
    let (ug, ukind) = (ug.to_vec(), ukind);
    let (i1, i2) = (p1[c], p2[c]);
    if i2 != i1 + 1 {
        return Err(not_covered("T4a: symbols are not in adjacent items"));
    }
    let u1_is_u = p1.len() == c + 1;
    let u2_is_u = p2.len() == c + 1;
    let zx = match &ug[i2] {
        BItem::Sym(s) => Some(*s),
        _ => None,
    };
    match (u1_is_u, u2_is_u) {
        (true, true) => {
            group_mut(items, u).remove(i2);
            Ok("T4a-same-group")
        }
        (true, false) => match &ug[i2] {
            BItem::Floor(w1) if w1.len() == 1 && p2.len() == c + 2 => {
                group_mut(items, u).remove(i2);
                Ok("T4a-drop-floor")
            }
            BItem::Floor(w1) => {
                let spliced = split_floor_head(w1, &p2[c + 1..])
                    .ok_or_else(|| not_covered("T4a: floor after (y∧x) has an unexpected head"))?;
                group_mut(items, u).splice(i2..=i2, spliced);
                Ok("T4a-split-floor")
            }
            _ => Err(not_covered("T4a: ceiling directly after (y∧x)")),
        },
        (false, true) => {
            let zx = zx.expect("direct child is a symbol");
            match &ug[i1] {
                BItem::Floor(_) if is_loop(zx) => {
                    group_mut(items, u).remove(i2);
                    Ok("T4a-loop-after-floor")
                }
                BItem::Ceil(ws) if !is_loop(zx) && i2 + 1 == ug.len() => {
                    if ws.len() == 1 && p1.len() == c + 2 {
                        let yx = ws[0].clone();
                        group_mut(items, u).splice(i1..=i2, [yx]);
                        return Ok("T4a-collapse-ceil");
                    }
                    let BItem::Sym(ab) = ws[0] else {
                        return Err(not_covered("T4a: ceiling does not start with a symbol"));
                    };
                    if ukind != GroupKind::Floor {
                        return Err(not_covered("T4a: word ending in a non-loop is not a floor"));
                    }
                    let mut u0: Vec<BItem> = ug[..i1].to_vec();
                    u0.push(BItem::Sym(ab));
                    let mut repl = vec![BItem::Floor(u0)];
                    repl.extend_from_slice(&ws[1..]);
                    let (gp, fi) = (&u[..u.len() - 1], u[u.len() - 1]);
                    group_mut(items, gp).splice(fi..=fi, repl);
                    Ok("T4a-reopen-floor")
                }
                _ => Err(not_covered("T4a: unexpected item before (z∧x)")),
            }
        }
        (false, false) => match (&ug[i1], &ug[i2]) {
            (BItem::Floor(_), BItem::Floor(wj)) => {
                if wj.len() == 1 && p2.len() == c + 2 {
                    group_mut(items, u).remove(i2);
                    return Ok("T4a-floors-drop");
                }
                let spliced = split_floor_head(wj, &p2[c + 1..])
                    .ok_or_else(|| not_covered("T4a: second floor has an unexpected head"))?;
                group_mut(items, u).splice(i2..=i2, spliced);
                Ok("T4a-floors-split")
            }
            (BItem::Ceil(wa), BItem::Ceil(wb)) if p2.len() == c + 2 && p2[c + 1] == 0 => {
                let mut merged = wa.clone();
                merged.extend_from_slice(&wb[1..]);
                group_mut(items, u).splice(i1..=i2, [BItem::Ceil(merged)]);
                Ok("T4a-ceils-merge")
            }
            _ => Err(not_covered("T4a: unexpected pair of sibling groups")),
        },
    }
}

/// Bracketings of `w` with at most `budget` bracket pairs. A floor must end and a
/// ceiling must start with a non-loop ∧-letter.
fn bracketings(alg: &ArrowAlgebra, w: &[TildeSym], budget: usize) -> Vec<Vec<BItem>> {
    fn go(alg: &ArrowAlgebra, w: &[TildeSym], budget: usize, out: &mut Vec<(Vec<BItem>, usize)>) {
        if w.is_empty() {
            out.push((Vec::new(), 0));
            return;
        }
        let mut rest = Vec::new();
        go(alg, &w[1..], budget, &mut rest);
        for (mut tail, used) in rest {
            tail.insert(0, BItem::Sym(w[0]));
            out.push((tail, used));
        }
        if budget == 0 {
            return;
        }
        let nonloop = |s: TildeSym| matches!(s, TildeSym::Wedge(..)) && !alg.is_wedge_loop(s);
        for m in 1..=w.len() {
            let floor_ok = nonloop(w[m - 1]);
            let ceil_ok = nonloop(w[0]);
            if !floor_ok && !ceil_ok {
                continue;
            }
            let mut inner = Vec::new();
            go(alg, &w[..m], budget - 1, &mut inner);
            for (content, used_in) in inner {
                let mut rest = Vec::new();
                go(alg, &w[m..], budget - 1 - used_in, &mut rest);
                for (tail, used_out) in rest {
                    let used = 1 + used_in + used_out;
                    for (ok, make) in [(floor_ok, true), (ceil_ok, false)] {
                        if !ok {
                            continue;
                        }
                        let g = if make { BItem::Floor(content.clone()) } else { BItem::Ceil(content.clone()) };
                        let mut v = vec![g];
                        v.extend(tail.iter().cloned());
                        out.push((v, used));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    go(alg, w, budget, &mut out);
    out.sort_by_key(|(_, used)| *used);
    out.into_iter().map(|(v, _)| v).collect()
}

impl ArrowAlgebra<'_> {
    fn is_loop_fn(&self) -> impl Fn(TildeSym) -> bool + '_ {
        move |s| self.is_wedge_loop(s)
    }

    /// Primitive steps whose composite is the given `I` step.
    pub fn decompose_i_step(&self, w: &[TildeSym], step: &DerivationStep) -> Result<Vec<DerivationStep>> {
        use DerivationStep::*;
        self.step_replacement(w, step)?;
        let pos = step.pos();
        let TildeSym::Letter(x) = w[pos] else { unreachable!("checked by the step") };
        let a = x.base as usize;
        let arrows = self.ctx.arrows();
        let idx = |arr| self.ctx.arrow_index(arr).expect("arrow");
        let d = idx(self.ctx.dagger_arrow(arrows[a]));
        Ok(match (step, x.primed) {
            (Ia { .. }, false) => vec![S1a { pos: pos + 1 }, S21a { pos }, S21a { pos }],
            (Ia { .. }, true) => vec![S1a { pos }, S1a { pos: pos + 2 }, S21a { pos }, S21a { pos }, S1b { pos, a }],
            (Ib { .. }, false) => {
                let e = idx(self.ctx.compose(arrows[a], arrows[d])?);
                vec![S21b { pos, a: e, b: a }, S21b { pos, a, b: d }, S1b { pos: pos + 1, a }]
            }
            (Ib { .. }, true) => {
                let f = idx(self.ctx.compose(arrows[d], arrows[a])?);
                vec![
                    S1a { pos },
                    S21b { pos, a: f, b: d },
                    S21b { pos, a: d, b: a },
                    S1b { pos, a },
                    S1b { pos: pos + 2, a },
                ]
            }
            _ => return Err(Error::NoMatch("not an I step".into())),
        })
    }

    fn lift_primitive(&self, bw: &BracketedWord, step: &DerivationStep) -> Result<(BracketedWord, &'static str)> {
        use DerivationStep::*;
        let w = bw.strip();
        let mut items = bw.0.clone();
        let case = match *step {
            T4b { pos, y } => {
                let TildeSym::Wedge(_, x) = w[pos] else { unreachable!("checked by the step") };
                t4b_surgery(&mut items, pos, TildeSym::Wedge(y, x), &self.is_loop_fn())?
            }
            T4a { pos } => t4a_surgery(&mut items, pos, &self.is_loop_fn())?,
            T3a { .. } | T3b { .. } => {
                let n = w.len();
                let mirrored_loop = |s: TildeSym| match s {
                    TildeSym::Wedge(p, q) => self.is_wedge_loop(TildeSym::Wedge(q, p)),
                    TildeSym::Letter(_) => false,
                };
                let mut m = mirror_items(&items);
                let case = match *step {
                    T3b { pos, y } => {
                        let TildeSym::Wedge(x, _) = w[pos] else { unreachable!("checked by the step") };
                        match t4b_surgery(&mut m, n - 1 - pos, TildeSym::Wedge(y, x), &mirrored_loop)? {
                            "T4b-loop" => "T3b-loop",
                            "T4b-ceil-head" => "T3b-floor-tail",
                            _ => "T3b-ceil-head",
                        }
                    }
                    T3a { pos } => match t4a_surgery(&mut m, n - 2 - pos, &mirrored_loop)? {
                        "T4a-same-group" => "T3a-same-group",
                        "T4a-drop-floor" => "T3a-drop-ceil",
                        "T4a-split-floor" => "T3a-split-ceil",
                        "T4a-loop-after-floor" => "T3a-loop-before-ceil",
                        "T4a-collapse-ceil" => "T3a-collapse-floor",
                        "T4a-reopen-floor" => "T3a-reopen-ceil",
                        "T4a-floors-drop" => "T3a-ceils-drop",
                        "T4a-floors-split" => "T3a-ceils-split",
                        _ => "T3a-floors-merge",
                    },
                    _ => unreachable!(),
                };
                items = mirror_items(&m);
                case
            }
            _ => {
                let ins = self.step_replacement(&w, step)?;
                let pos = step.pos();
                let r = step.removed_len();
                let paths = locate(&items);
                let parent = &paths[pos][..paths[pos].len() - 1];
                let start = paths[pos][paths[pos].len() - 1];
                for (j, p) in paths[pos..pos + r].iter().enumerate() {
                    if &p[..p.len() - 1] != parent || p[p.len() - 1] != start + j {
                        return Err(not_covered("rewritten section crosses a bracket"));
                    }
                }
                let parent = parent.to_vec();
                group_mut(&mut items, &parent).splice(start..start + r, ins.into_iter().map(BItem::Sym));
                match step.kind() {
                    crate::embedding::StepKind::S1a | crate::embedding::StepKind::S1b => "S1",
                    crate::embedding::StepKind::S21a | crate::embedding::StepKind::S21b => "S21",
                    crate::embedding::StepKind::S22a | crate::embedding::StepKind::S22b => "S22",
                    _ => "T5",
                }
            }
        };
        Ok((BracketedWord(items), case))
    }

    /// Lift a derivation step from `w↓` to a bracketed word in `W` with the same `℘̂`.
    /// `I` steps are lifted through their primitive decomposition.
    pub fn lift_step(&self, bw: &BracketedWord, step: &DerivationStep) -> Result<Lifted> {
        if !self.is_member(bw, WordClass::W) {
            return Err(Error::PreconditionViolated("bracketed word is not in W".into()));
        }
        let w = bw.strip();
        let target = self.apply_step(&w, step)?;
        let before = self.wp_hat(bw)?;
        let steps = match step {
            DerivationStep::Ia { .. } | DerivationStep::Ib { .. } => self.decompose_i_step(&w, step)?,
            _ => vec![*step],
        };
        let mut cur = bw.clone();
        let mut cases = Vec::new();
        for s in &steps {
            let (next, case) = self.lift_primitive(&cur, s)?;
            cases.push(case);
            let expect = self.apply_step(&cur.strip(), s)?;
            if next.strip() != expect {
                return Err(Error::InvarianceViolated(format!("{case}: underlying word changed unexpectedly")));
            }
            if !self.is_member(&next, WordClass::W) {
                return Err(Error::InvarianceViolated(format!("{case}: {} is not in W", next.display(self))));
            }
            let after = self.wp_hat(&next)?;
            if after != before {
                return Err(Error::InvarianceViolated(format!(
                    "{case}: ℘̂ changed from {before:?} to {after:?} at {}",
                    next.display(self)
                )));
            }
            cur = next;
        }
        debug_assert_eq!(cur.strip(), target);
        Ok(Lifted { word: cur, cases })
    }

    /// Search all bracketings of the stepped word with at most `max_brackets` pairs for one
    /// in `W` with the same `℘̂`.
    pub fn lift_step_oracle(
        &self,
        bw: &BracketedWord,
        step: &DerivationStep,
        max_brackets: usize,
    ) -> Result<BracketedWord> {
        let before = self.wp_hat(bw)?;
        let target = self.apply_step(&bw.strip(), step)?;
        for cand in bracketings(self, &target, max_brackets) {
            let cand = BracketedWord(cand);
            debug_assert_eq!(strip_items(&cand.0), target);
            if self.is_member(&cand, WordClass::W) && self.wp_hat(&cand)? == before {
                return Ok(cand);
            }
        }
        Err(Error::NoWitnessInBudget)
    }

    /// All bracketings of `w` in `W` with at most `max_brackets` pairs.
    pub fn w_bracketings(&self, w: &[TildeSym], max_brackets: usize) -> Vec<BracketedWord> {
        bracketings(self, w, max_brackets)
            .into_iter()
            .map(BracketedWord)
            .filter(|b| self.is_member(b, WordClass::W))
            .collect()
    }
}
