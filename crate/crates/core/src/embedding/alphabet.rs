use crate::error::{Error, Result};
use crate::rewriting::{Letter, TildeSym, TildeWord};
use crate::semigroupoid::{Arrow, ExtensionContext};
use serde::{Deserialize, Serialize};

/// How a primed letter `a'` is sent into the stable subsemigroupoid.
///
/// The two rules agree whenever `(a†)^ = (â)†`. When they differ, only `HatOfDagger`
/// gives `a'` and `a†` the same value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PrimeRule {
    /// `a' ↦ (â)†`
    DaggerOfHat,
    /// `a' ↦ (a†)^`
    #[default]
    HatOfDagger,
}

/// Letters over the arrows of a derived semigroupoid: `Letter::base` is an arrow index.
#[derive(Clone, Debug)]
pub struct ArrowAlgebra<'a> {
    pub ctx: &'a ExtensionContext,
    pub prime_rule: PrimeRule,
    hats: Vec<Arrow>,
    delta: Vec<Arrow>,
    factorizations: Vec<Vec<(usize, usize)>>,
}

impl<'a> ArrowAlgebra<'a> {
    pub fn new(ctx: &'a ExtensionContext, prime_rule: PrimeRule) -> Result<Self> {
        let arrows = ctx.arrows();
        let hats = arrows.iter().map(|&a| ctx.hat(a)).collect::<Result<Vec<_>>>()?;
        let mut delta = Vec::with_capacity(2 * arrows.len());
        for (i, &a) in arrows.iter().enumerate() {
            delta.push(hats[i]);
            delta.push(match prime_rule {
                PrimeRule::DaggerOfHat => ctx.dagger_arrow(hats[i]),
                PrimeRule::HatOfDagger => ctx.hat(ctx.dagger_arrow(a))?,
            });
        }
        let mut factorizations = vec![Vec::new(); arrows.len()];
        for (i, &a) in arrows.iter().enumerate() {
            for (j, &b) in arrows.iter().enumerate() {
                if a.target == b.source {
                    let c = ctx.compose(a, b)?;
                    let k = ctx.arrow_index(c).expect("composites are arrows");
                    factorizations[k].push((i, j));
                }
            }
        }
        Ok(ArrowAlgebra { ctx, prime_rule, hats, delta, factorizations })
    }

    pub fn arrow_count(&self) -> usize {
        self.ctx.arrows().len()
    }

    pub fn letter(&self, a: Arrow) -> Letter {
        Letter::new(self.ctx.arrow_index(a).expect("not an arrow") as u32, false)
    }

    pub fn arrow(&self, l: Letter) -> Arrow {
        self.ctx.arrows()[l.base as usize]
    }

    /// All letters `a, a'` over the arrows.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.arrow_count() as u32).flat_map(|b| [Letter::new(b, false), Letter::new(b, true)]).collect()
    }

    /// Pairs `(a, b)` of arrow indices with `a∘b` equal to arrow `c`.
    pub fn factorizations(&self, c: usize) -> &[(usize, usize)] {
        &self.factorizations[c]
    }

    pub fn alpha(&self, l: Letter) -> usize {
        let a = self.arrow(l);
        if l.primed {
            a.target
        } else {
            a.source
        }
    }

    pub fn omega(&self, l: Letter) -> usize {
        let a = self.arrow(l);
        if l.primed {
            a.source
        } else {
            a.target
        }
    }

    /// `(x∧y)` starts at `α(x)` and ends at `ω(y)`.
    pub fn sym_alpha(&self, s: TildeSym) -> usize {
        self.alpha(s.first())
    }

    pub fn sym_omega(&self, s: TildeSym) -> usize {
        self.omega(s.last())
    }

    pub fn is_wedge_loop(&self, s: TildeSym) -> bool {
        matches!(s, TildeSym::Wedge(x, y) if self.alpha(x) == self.omega(y))
    }

    /// A letter or ∧-loop.
    pub fn is_path_sym(&self, s: TildeSym) -> bool {
        match s {
            TildeSym::Letter(_) => true,
            TildeSym::Wedge(..) => self.is_wedge_loop(s),
        }
    }

    pub fn is_path(&self, w: &[TildeSym]) -> bool {
        !w.is_empty()
            && w.iter().all(|&s| self.is_path_sym(s))
            && w.windows(2).all(|p| self.sym_omega(p[0]) == self.sym_alpha(p[1]))
    }

    pub fn path_endpoints(&self, w: &[TildeSym]) -> Option<(usize, usize)> {
        self.is_path(w).then(|| (self.sym_alpha(w[0]), self.sym_omega(*w.last().expect("nonempty"))))
    }

    pub fn hat(&self, a: Arrow) -> Arrow {
        self.hats[self.ctx.arrow_index(a).expect("not an arrow")]
    }

    /// `aδ = â`, and `a'δ` by the prime rule.
    pub fn delta(&self, l: Letter) -> Arrow {
        self.delta[2 * l.base as usize + l.primed as usize]
    }

    fn sym_value(&self, s: TildeSym) -> Result<Arrow> {
        match s {
            TildeSym::Letter(l) => Ok(self.delta(l)),
            TildeSym::Wedge(x, y) => self.ctx.arrow_wedge(self.delta(x), self.delta(y)),
        }
    }

    /// Evaluate a path in the stable subsemigroupoid.
    pub fn hat_eval(&self, w: &[TildeSym]) -> Result<Arrow> {
        if !self.is_path(w) {
            return Err(Error::NotAPath);
        }
        let mut acc = self.sym_value(w[0])?;
        for &s in &w[1..] {
            acc = self.ctx.compose(acc, self.sym_value(s)?)?;
        }
        Ok(acc)
    }

    pub fn is_idempotent_arrow(&self, a: Arrow) -> bool {
        a.is_loop() && self.ctx.s.is_idempotent(a.label)
    }

    /// `κ(s)`: the one-letter word `(sρ(sρ)⁻¹, s, sρ)` and `sρ`.
    pub fn kappa(&self, s: usize) -> (TildeWord, usize) {
        let sr = self.ctx.rho_of(s);
        let tq = self.ctx.tq();
        let a = Arrow::new(tq.mul(sr, self.ctx.t_inv(sr)), s, sr);
        (TildeWord(vec![TildeSym::Letter(self.letter(a))]), sr)
    }

    /// Replace every letter `a` by `ᵖa`, keeping primes.
    pub fn act_word(&self, pi: usize, w: &TildeWord) -> TildeWord {
        let act = |l: Letter| Letter::new(self.letter(self.ctx.act(pi, self.arrow(l))).base, l.primed);
        TildeWord(
            w.0.iter()
                .map(|&s| match s {
                    TildeSym::Letter(l) => TildeSym::Letter(act(l)),
                    TildeSym::Wedge(x, y) => TildeSym::Wedge(act(x), act(y)),
                })
                .collect(),
        )
    }

    pub fn letter_name(&self, l: Letter) -> String {
        format!("a{}{}", l.base, if l.primed { "'" } else { "" })
    }

    pub fn sym_name(&self, s: TildeSym) -> String {
        match s {
            TildeSym::Letter(l) => self.letter_name(l),
            TildeSym::Wedge(x, y) => format!("({}^{})", self.letter_name(x), self.letter_name(y)),
        }
    }
}
