use super::term::{Letter, TildeSym, TildeWord};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UpsilonRule {
    /// `xx'x ↔ x`
    I,
    /// `(x∧y)(x∧z) ↔ (x∧z)`
    U3,
    /// `(z∧x)(y∧x) ↔ (z∧x)`
    U4,
    /// `x'x ↔ (x'∧x)`
    U5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// One generating step. `param` is the letter `y` that Υ3/Υ4 erase (forward) or insert (backward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UpsilonStep {
    pub rule: UpsilonRule,
    pub direction: Direction,
    pub position: usize,
    pub param: Option<Letter>,
}

impl UpsilonStep {
    pub fn inverse(self) -> Self {
        let direction = match self.direction {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        };
        UpsilonStep { direction, ..self }
    }
}

fn no_match(step: &UpsilonStep) -> Error {
    Error::NoMatch(format!("{:?} {:?} at {}", step.rule, step.direction, step.position))
}

/// Apply a generating step; fails with `NoMatch` if its side does not occur at the position.
pub fn apply_upsilon_step(w: &TildeWord, step: &UpsilonStep) -> Result<TildeWord> {
    use TildeSym::{Letter as L, Wedge as W};
    let v = &w.0;
    let p = step.position;
    let at = |k: usize| v.get(p + k).copied();
    let param_ok = |y: Letter| step.param.is_none_or(|q| q == y);
    let (len, repl): (usize, Vec<TildeSym>) = match (step.rule, step.direction) {
        (UpsilonRule::I, Direction::Forward) => match (at(0), at(1), at(2)) {
            (Some(L(x)), Some(L(x1)), Some(L(x2))) if x1 == x.prime() && x2 == x => (3, vec![L(x)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::I, Direction::Backward) => match at(0) {
            Some(L(x)) => (1, vec![L(x), L(x.prime()), L(x)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::U3, Direction::Forward) => match (at(0), at(1)) {
            (Some(W(x, y)), Some(W(x2, z))) if x == x2 && param_ok(y) => (2, vec![W(x, z)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::U3, Direction::Backward) => match (at(0), step.param) {
            (Some(W(x, z)), Some(y)) => (1, vec![W(x, y), W(x, z)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::U4, Direction::Forward) => match (at(0), at(1)) {
            (Some(W(z, x)), Some(W(y, x2))) if x == x2 && param_ok(y) => (2, vec![W(z, x)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::U4, Direction::Backward) => match (at(0), step.param) {
            (Some(W(z, x)), Some(y)) => (1, vec![W(z, x), W(y, x)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::U5, Direction::Forward) => match (at(0), at(1)) {
            (Some(L(p1)), Some(L(x))) if p1 == x.prime() => (2, vec![W(p1, x)]),
            _ => return Err(no_match(step)),
        },
        (UpsilonRule::U5, Direction::Backward) => match at(0) {
            Some(W(p1, x)) if p1 == x.prime() => (1, vec![L(p1), L(x)]),
            _ => return Err(no_match(step)),
        },
    };
    let mut out = v[..p].to_vec();
    out.extend(repl);
    out.extend_from_slice(&v[p + len..]);
    Ok(TildeWord(out))
}

fn st(rule: UpsilonRule, direction: Direction, position: usize, param: Option<Letter>) -> UpsilonStep {
    UpsilonStep { rule, direction, position, param }
}

/// Every applicable step with the resulting word, inserted letters drawn from `letters`.
pub fn upsilon_neighbours(w: &TildeWord, letters: &[Letter]) -> Vec<(UpsilonStep, TildeWord)> {
    use TildeSym::Wedge as W;
    let mut out = Vec::new();
    let v = &w.0;
    let mut push = |step: UpsilonStep| {
        if let Ok(r) = apply_upsilon_step(w, &step) {
            out.push((step, r));
        }
    };
    for p in 0..v.len() {
        push(st(UpsilonRule::I, Direction::Forward, p, None));
        push(st(UpsilonRule::I, Direction::Backward, p, None));
        push(st(UpsilonRule::U5, Direction::Forward, p, None));
        push(st(UpsilonRule::U5, Direction::Backward, p, None));
        if let (W(_, y), Some(W(..))) = (v[p], v.get(p + 1)) {
            push(st(UpsilonRule::U3, Direction::Forward, p, Some(y)));
        }
        if let (W(_, _), Some(&W(y, _))) = (v[p], v.get(p + 1)) {
            push(st(UpsilonRule::U4, Direction::Forward, p, Some(y)));
        }
        if matches!(v[p], W(..)) {
            for &y in letters {
                push(st(UpsilonRule::U3, Direction::Backward, p, Some(y)));
                push(st(UpsilonRule::U4, Direction::Backward, p, Some(y)));
            }
        }
    }
    out
}

/// Bounds for [`derivation_search`].
#[derive(Clone, Debug)]
pub struct SearchBounds {
    pub max_steps: usize,
    pub max_len: usize,
    /// Maximum number of visited words before `SearchBudgetExceeded`.
    pub budget: usize,
}

/// A shortest derivation from `u` to `v` using the generating steps, by bidirectional BFS.
/// `Ok(None)` means no derivation exists within the step and length bounds.
pub fn derivation_search(
    u: &TildeWord,
    v: &TildeWord,
    letters: &[Letter],
    bounds: &SearchBounds,
) -> Result<Option<Vec<UpsilonStep>>> {
    if u == v {
        return Ok(Some(Vec::new()));
    }
    type Parents = HashMap<TildeWord, Option<(TildeWord, UpsilonStep)>>;
    let mut fwd: Parents = HashMap::from([(u.clone(), None)]);
    let mut bwd: Parents = HashMap::from([(v.clone(), None)]);
    let mut ff = vec![u.clone()];
    let mut bf = vec![v.clone()];
    let (mut df, mut db) = (0usize, 0usize);
    while df + db < bounds.max_steps && !(ff.is_empty() && bf.is_empty()) {
        let forward = !ff.is_empty() && (bf.is_empty() || ff.len() <= bf.len());
        let (frontier, mine, other) = if forward { (&mut ff, &mut fwd, &bwd) } else { (&mut bf, &mut bwd, &fwd) };
        let mut next = Vec::new();
        let mut meet = None;
        'expand: for w in frontier.iter() {
            for (step, r) in upsilon_neighbours(w, letters) {
                if r.len() > bounds.max_len || mine.contains_key(&r) {
                    continue;
                }
                mine.insert(r.clone(), Some((w.clone(), step)));
                if mine.len() + other.len() > bounds.budget {
                    return Err(Error::SearchBudgetExceeded);
                }
                if other.contains_key(&r) {
                    meet = Some(r);
                    break 'expand;
                }
                next.push(r);
            }
        }
        *frontier = next;
        if forward {
            df += 1;
        } else {
            db += 1;
        }
        if let Some(m) = meet {
            let mut steps = Vec::new();
            let mut cur = m.clone();
            while let Some(Some((prev, s))) = fwd.get(&cur) {
                steps.push(*s);
                cur = prev.clone();
            }
            steps.reverse();
            let mut cur = m;
            while let Some(Some((prev, s))) = bwd.get(&cur) {
                steps.push(s.inverse());
                cur = prev.clone();
            }
            return Ok(Some(steps));
        }
    }
    Ok(None)
}

/// Apply a derivation step by step.
pub fn replay(u: &TildeWord, steps: &[UpsilonStep]) -> Result<TildeWord> {
    steps.iter().try_fold(u.clone(), |w, s| apply_upsilon_step(&w, s))
}
