//! The derived semigroupoid of an extension of a semigroup by an inverse semigroup,
//! its stable arrows and the projection onto them.

use crate::congruence::{is_congruence_over_cs, quotient, Congruence, QuotientMap};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Which inverse of each element serves as `s†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DaggerPolicy {
    #[default]
    Lowest,
    Highest,
}

/// An arrow `(α, s, β)` from `α` to `β` labelled by `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

impl Arrow {
    pub const fn new(source: usize, label: usize, target: usize) -> Self {
        Arrow { source, label, target }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// An E-solid locally inverse `S` with a congruence over completely simple semigroups.
#[derive(Clone, Debug)]
pub struct ExtensionContext {
    pub s: FiniteSemigroup,
    pub rho: Congruence,
    pub t: QuotientMap,
    pub dagger: Vec<usize>,
    t_inverse: Vec<usize>,
    arrows: Vec<Arrow>,
    index: HashMap<Arrow, usize>,
}

impl ExtensionContext {
    pub fn build(s: FiniteSemigroup, rho: Congruence, policy: DaggerPolicy) -> Result<Self> {
        if !s.is_e_solid() {
            return Err(Error::NotESolid);
        }
        if !s.is_locally_inverse() {
            return Err(Error::NotLocallyInverse);
        }
        if rho.order() != s.order() || !is_congruence_over_cs(&s, &rho) {
            return Err(Error::RhoNotOverCS);
        }
        let t = quotient(&s, &rho);
        let dagger = s
            .elements()
            .map(|x| {
                let v = s.inverses_of(x);
                match policy {
                    DaggerPolicy::Lowest => v.first(),
                    DaggerPolicy::Highest => v.last(),
                }
                .expect("regular")
            })
            .collect();
        let tq = &t.quotient;
        let t_inverse: Vec<usize> =
            tq.elements().map(|a| tq.inverses_of(a).first().expect("inverse quotient")).collect();
        let mut arrows = Vec::new();
        for a in tq.elements() {
            for x in s.elements() {
                let sr = t.projection[x];
                let b = tq.mul(a, sr);
                if tq.mul(b, t_inverse[sr]) == a {
                    arrows.push(Arrow::new(a, x, b));
                }
            }
        }
        let index = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        Ok(ExtensionContext { s, rho, t, dagger, t_inverse, arrows, index })
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        self.t.quotient.elements()
    }

    /// `T = S/ρ`.
    pub fn tq(&self) -> &FiniteSemigroup {
        &self.t.quotient
    }

    pub fn rho_of(&self, s: usize) -> usize {
        self.t.projection[s]
    }

    pub fn t_inv(&self, a: usize) -> usize {
        self.t_inverse[a]
    }

    pub fn is_arrow(&self, a: Arrow) -> bool {
        let tq = self.tq();
        let sr = self.rho_of(a.label);
        tq.mul(a.source, sr) == a.target && tq.mul(a.target, self.t_inv(sr)) == a.source
    }

    /// All arrows ordered by source, then label.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, a: Arrow) -> Option<usize> {
        self.index.get(&a).copied()
    }

    pub fn compose(&self, a: Arrow, b: Arrow) -> Result<Arrow> {
        if a.target != b.source {
            return Err(Error::NotConsecutive);
        }
        Ok(Arrow::new(a.source, self.s.mul(a.label, b.label), b.target))
    }

    pub fn arrow_inverses(&self, a: Arrow) -> Vec<Arrow> {
        self.s.inverses_of(a.label).iter().map(|x| Arrow::new(a.target, x, a.source)).collect()
    }

    /// `(α,s,β)† = (β,s†,α)`.
    pub fn dagger_arrow(&self, a: Arrow) -> Arrow {
        Arrow::new(a.target, self.dagger[a.label], a.source)
    }

    /// `(a ⋏ b)`, the unique element of `S(b'b, aa')` in the loop semigroup at `α(a) = ω(b)`.
    pub fn arrow_wedge(&self, a: Arrow, b: Arrow) -> Result<Arrow> {
        if a.source != b.target {
            return Err(Error::NotAdjacent);
        }
        let s = &self.s;
        let e = s.mul(self.dagger[b.label], b.label);
        let f = s.mul(a.label, self.dagger[a.label]);
        let ef = s.mul(e, f);
        let o = a.source;
        let found: Vec<usize> = s
            .idempotents()
            .iter()
            .filter(|&g| {
                s.mul(g, e) == g && s.mul(f, g) == g && s.mul3(e, g, f) == ef && self.is_arrow(Arrow::new(o, g, o))
            })
            .collect();
        match found[..] {
            [g] => Ok(Arrow::new(o, g, o)),
            _ => Err(Error::NonSingletonSandwich { e, f, size: found.len() }),
        }
    }

    /// `ᵖ(α,s,β) = (πα, s, πβ)`.
    pub fn act(&self, pi: usize, a: Arrow) -> Arrow {
        let tq = self.tq();
        let r = Arrow::new(tq.mul(pi, a.source), a.label, tq.mul(pi, a.target));
        debug_assert!(self.is_arrow(r));
        r
    }

    /// The three equivalent stability clauses: `sρ = α⁻¹β`,
    /// `sρ(sρ)⁻¹ = α⁻¹α` and `(sρ)⁻¹sρ = β⁻¹β`.
    pub fn stability_clauses(&self, a: Arrow) -> [bool; 3] {
        let tq = self.tq();
        let sr = self.rho_of(a.label);
        let sri = self.t_inv(sr);
        let ai = self.t_inv(a.source);
        let bi = self.t_inv(a.target);
        [sr == tq.mul(ai, a.target), tq.mul(sr, sri) == tq.mul(ai, a.source), tq.mul(sri, sr) == tq.mul(bi, a.target)]
    }

    pub fn is_stable(&self, a: Arrow) -> Result<bool> {
        let c = self.stability_clauses(a);
        if c[0] == c[1] && c[1] == c[2] {
            Ok(c[0])
        } else {
            Err(Error::Tul3Disagreement(self.arrow_index(a).unwrap_or(usize::MAX)))
        }
    }

    pub fn stable_arrows(&self) -> Result<Vec<Arrow>> {
        let mut out = Vec::new();
        for &a in &self.arrows {
            if self.is_stable(a)? {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// Same endpoints and labels in the natural order.
    pub fn arrow_leq(&self, a: Arrow, b: Arrow) -> bool {
        a.source == b.source && a.target == b.target && self.s.natural_leq(a.label, b.label)
    }

    /// The unique stable arrow below `a`.
    pub fn hat(&self, a: Arrow) -> Result<Arrow> {
        let target = self.tq().mul(self.t_inv(a.source), a.target);
        let below: Vec<usize> =
            self.s.elements().filter(|&x| self.rho_of(x) == target && self.s.natural_leq(x, a.label)).collect();
        match below[..] {
            [x] => {
                let h = Arrow::new(a.source, x, a.target);
                debug_assert!(self.is_arrow(h));
                Ok(h)
            }
            _ => Err(Error::UniquenessFailure(format!(
                "{} labels below {} in class {target}",
                below.len(),
                self.s.name(a.label)
            ))),
        }
    }

    /// Label-level Green's R on arrows: same source and R-related labels.
    pub fn arrow_r_related(&self, a: Arrow, b: Arrow) -> bool {
        a.source == b.source && self.s.green().r_related(a.label, b.label)
    }

    pub fn arrow_l_related(&self, a: Arrow, b: Arrow) -> bool {
        a.target == b.target && self.s.green().l_related(a.label, b.label)
    }

    /// Green's R from the semigroupoid definition: `a = b` or each is the other
    /// composed with an arrow on the right.
    pub fn arrow_r_related_abstract(&self, a: Arrow, b: Arrow) -> bool {
        if a.source != b.source {
            return false;
        }
        if a == b {
            return true;
        }
        let reach = |x: Arrow, y: Arrow| {
            self.arrows
                .iter()
                .any(|&c| c.source == x.target && c.target == y.target && self.compose(x, c).ok() == Some(y))
        };
        reach(a, b) && reach(b, a)
    }

    pub fn arrow_l_related_abstract(&self, a: Arrow, b: Arrow) -> bool {
        if a.target != b.target {
            return false;
        }
        if a == b {
            return true;
        }
        let reach = |x: Arrow, y: Arrow| {
            self.arrows
                .iter()
                .any(|&c| c.target == x.source && c.source == y.source && self.compose(c, x).ok() == Some(y))
        };
        reach(a, b) && reach(b, a)
    }
}

/// Outcome of one structural check over a context.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl ExtensionContext {
    /// Exhaustively check the structural facts about arrows, stability and the hat map.
    pub fn check_lemmas(&self) -> Vec<LemmaCheck> {
        let s = &self.s;
        let tq = self.tq();
        let mut checks = Vec::new();
        let mut run = |name: &'static str, f: &mut dyn FnMut(&mut usize, &mut Vec<String>)| {
            let (mut cases, mut failures) = (0, Vec::new());
            f(&mut cases, &mut failures);
            checks.push(LemmaCheck { name, cases, failures });
        };
        let tleq = |x: usize, y: usize| tq.natural_leq(x, y);

        run("arrow-membership", &mut |n, bad| {
            for a in tq.elements() {
                for x in s.elements() {
                    for b in tq.elements() {
                        *n += 1;
                        let arrow = Arrow::new(a, x, b);
                        let want = tq.green().r_related(a, b) && tleq(tq.mul(self.t_inv(a), b), self.rho_of(x));
                        if self.is_arrow(arrow) != want {
                            bad.push(format!("{arrow:?}"));
                        }
                    }
                }
            }
        });
        run("arrow-idempotent-bounds", &mut |n, bad| {
            for &a in &self.arrows {
                *n += 1;
                let sr = self.rho_of(a.label);
                let sri = self.t_inv(sr);
                let ok = tleq(tq.mul(self.t_inv(a.source), a.source), tq.mul(sr, sri))
                    && tleq(tq.mul(self.t_inv(a.target), a.target), tq.mul(sri, sr));
                if !ok {
                    bad.push(format!("{a:?}"));
                }
            }
        });
        run("stability-clauses-agree", &mut |n, bad| {
            for &a in &self.arrows {
                *n += 1;
                if self.is_stable(a).is_err() {
                    bad.push(format!("{a:?}"));
                }
            }
        });
        run("unique-below-in-class", &mut |n, bad| {
            for a in tq.elements() {
                for b in tq.elements().filter(|&b| tleq(b, a)) {
                    for x in s.elements().filter(|&x| self.rho_of(x) == a) {
                        *n += 1;
                        let c = s.elements().filter(|&y| self.rho_of(y) == b && s.natural_leq(y, x)).count();
                        if c != 1 {
                            bad.push(format!("class {a} >= {b}, element {x}: {c} below"));
                        }
                    }
                }
            }
        });
        run("unique-below-in-r-class", &mut |n, bad| {
            let g = s.green();
            for x in s.elements() {
                for y in s.elements().filter(|&y| s.natural_leq(x, y)) {
                    for b in g.r_class_of(y) {
                        *n += 1;
                        let c = g.r_class_of(x).into_iter().filter(|&a| s.natural_leq(a, b)).count();
                        if c != 1 {
                            bad.push(format!("{x} <= {y}, {b}: {c} candidates"));
                        }
                    }
                }
            }
        });
        run("unique-stable-below", &mut |n, bad| {
            for &a in &self.arrows {
                *n += 1;
                let c =
                    self.arrows.iter().filter(|&&b| self.arrow_leq(b, a) && self.is_stable(b).unwrap_or(false)).count();
                if c != 1 || self.hat(a).is_err() {
                    bad.push(format!("{a:?}: {c} stable arrows below"));
                }
            }
        });
        let stable: Vec<Arrow> = self.arrows.iter().copied().filter(|&a| self.is_stable(a).unwrap_or(false)).collect();
        let st = |a: Arrow| self.is_stable(a).unwrap_or(false);
        run("stable-inverses", &mut |n, bad| {
            for &a in &stable {
                for b in self.arrow_inverses(a) {
                    *n += 1;
                    if !self.is_arrow(b) || !st(b) {
                        bad.push(format!("{a:?} inverse {b:?}"));
                    }
                }
            }
        });
        run("stable-compose-right", &mut |n, bad| {
            for &a in &stable {
                for &b in self.arrows.iter().filter(|b| b.source == a.target) {
                    *n += 1;
                    let ab = self.compose(a, b).expect("consecutive");
                    if !st(ab) || !self.arrow_r_related(a, ab) || !self.arrow_r_related_abstract(a, ab) {
                        bad.push(format!("{a:?} then {b:?}"));
                    }
                }
            }
        });
        run("stable-wedge-left", &mut |n, bad| {
            for &a in &stable {
                for &b in self.arrows.iter().filter(|b| b.source == a.target) {
                    *n += 1;
                    match self.arrow_wedge(b, a) {
                        Ok(w) if st(w) && self.arrow_l_related(a, w) && self.arrow_l_related_abstract(a, w) => {}
                        other => bad.push(format!("{b:?} wedge {a:?}: {other:?}")),
                    }
                }
            }
        });
        run("hat-morphism", &mut |n, bad| {
            let hat = |a: Arrow| self.hat(a).ok();
            for &a in &self.arrows {
                *n += 1;
                if hat(a).and_then(hat) != hat(a) {
                    bad.push(format!("hat not idempotent at {a:?}"));
                }
                for &b in self.arrows.iter().filter(|b| b.source == a.target) {
                    *n += 1;
                    let (ha, hb) = (hat(a), hat(b));
                    let comp = self.compose(a, b).ok().and_then(hat);
                    let comp2 = ha.zip(hb).and_then(|(x, y)| self.compose(x, y).ok());
                    if comp.is_none() || comp != comp2 {
                        bad.push(format!("hat of composite at {a:?}, {b:?}"));
                    }
                    let w = self.arrow_wedge(b, a).ok().and_then(hat);
                    let w2 = ha.zip(hb).and_then(|(x, y)| self.arrow_wedge(y, x).ok());
                    if w.is_none() || w != w2 {
                        bad.push(format!("hat of wedge at {b:?}, {a:?}"));
                    }
                }
            }
        });
        checks
    }
}
