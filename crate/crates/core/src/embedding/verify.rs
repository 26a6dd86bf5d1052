use super::alphabet::ArrowAlgebra;
use super::bracketed::{BracketedWord, WordClass};
use super::steps::{DerivationStep, StepKind};
use crate::error::{Error, Result};
use crate::rewriting::TildeSym;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationConfig {
    pub trials: usize,
    pub steps_per_trial: usize,
    pub max_len: usize,
}

impl Default for DerivationConfig {
    fn default() -> Self {
        DerivationConfig { trials: 40, steps_per_trial: 25, max_len: 7 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscriptEntry {
    pub step: DerivationStep,
    pub word: String,
    pub cases: Vec<&'static str>,
}

/// A derivation from `κ(s)` with every step lifted.
#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub element: usize,
    pub start: String,
    pub entries: Vec<TranscriptEntry>,
    /// The error that stopped the derivation, if any.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EmbeddingReport {
    pub steps_lifted: usize,
    pub kind_counts: BTreeMap<String, usize>,
    pub case_counts: BTreeMap<String, usize>,
    pub lift_failures: Vec<String>,
    pub separation_failures: Vec<(usize, usize)>,
    pub product_failures: Vec<(usize, usize)>,
    pub transcripts: Vec<Transcript>,
}

impl EmbeddingReport {
    pub fn all_pass(&self) -> bool {
        self.lift_failures.is_empty() && self.separation_failures.is_empty() && self.product_failures.is_empty()
    }
}

impl ArrowAlgebra<'_> {
    /// Pick a step uniformly among kinds that apply, then uniformly within the kind.
    pub fn random_step<R: Rng>(&self, w: &[TildeSym], max_len: usize, rng: &mut R) -> Option<DerivationStep> {
        let mut by_kind: BTreeMap<StepKind, Vec<DerivationStep>> = BTreeMap::new();
        for s in self.applicable_steps(w, max_len) {
            by_kind.entry(s.kind()).or_default().push(s);
        }
        let kinds: Vec<&Vec<DerivationStep>> = by_kind.values().collect();
        let steps = kinds.choose(rng)?;
        steps.choose(rng).copied()
    }

    /// Run a random derivation from `κ(s)`, lifting each step and checking `℘̂` stays put.
    pub fn lifted_derivation<R: Rng>(&self, s: usize, steps: usize, max_len: usize, rng: &mut R) -> Transcript {
        let (k, _) = self.kappa(s);
        let mut cur = BracketedWord::path(&k.0);
        let mut t = Transcript { element: s, start: cur.display(self), entries: Vec::new(), failure: None };
        let expected = Some(self.arrow(k.0[0].first()));
        match self.wp_hat(&cur) {
            Ok(v) if v == expected => {}
            other => {
                t.failure = Some(format!("℘̂(κ({s})) = {other:?}, expected {expected:?}"));
                return t;
            }
        }
        for _ in 0..steps {
            let Some(step) = self.random_step(&cur.strip(), max_len, rng) else { break };
            match self.lift_step(&cur, &step) {
                Ok(l) => {
                    t.entries.push(TranscriptEntry { step, word: l.word.display(self), cases: l.cases });
                    cur = l.word;
                }
                Err(e) => {
                    t.failure = Some(format!("{step:?} on {}: {e}", cur.display(self)));
                    break;
                }
            }
        }
        t
    }

    /// `℘̂(κ(s)) ≠ ℘̂(κ(t))` for distinct `ρ`-related `s, t`.
    pub fn check_separation(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for s in self.ctx.s.elements() {
            for t in self.ctx.s.elements() {
                if s < t && self.ctx.rho.related(s, t) {
                    let v = |x| self.wp_hat(&BracketedWord::path(&self.kappa(x).0 .0));
                    if v(s) == v(t) {
                        bad.push((s, t));
                    }
                }
            }
        }
        bad
    }

    /// `℘̂(ᵉκ(s) ˢᵖκ(t)) = κ(st)` with `e = (sρ·tρ)(sρ·tρ)⁻¹`.
    pub fn check_products(&self) -> Result<Vec<(usize, usize)>> {
        let tq = self.ctx.tq();
        let mut bad = Vec::new();
        for s in self.ctx.s.elements() {
            for t in self.ctx.s.elements() {
                let (ks, sr) = self.kappa(s);
                let (kt, tr) = self.kappa(t);
                let st = tq.mul(sr, tr);
                let e = tq.mul(st, self.ctx.t_inv(st));
                let mut w = self.act_word(e, &ks).0;
                w.extend(self.act_word(sr, &kt).0);
                let (kst, _) = self.kappa(self.ctx.s.mul(s, t));
                let got = self.wp_hat(&BracketedWord::path(&w)).ok().flatten();
                if got != Some(self.arrow(kst.0[0].first())) {
                    bad.push((s, t));
                }
            }
        }
        Ok(bad)
    }

    /// Check the embedding properties: lifted random derivations keep `℘̂`, distinct
    /// `ρ`-related elements separate, and products are respected. Trial `i` draws from its
    /// own generator seeded by `(seed, i)`, so the report does not depend on the thread count.
    pub fn verify_embedding(&self, cfg: &DerivationConfig, seed: u64) -> Result<EmbeddingReport> {
        let n = self.ctx.s.order();
        if n == 0 {
            return Err(Error::EmptySemigroup);
        }
        let transcripts: Vec<Transcript> = (0..cfg.trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let s = rng.gen_range(0..n);
                self.lifted_derivation(s, cfg.steps_per_trial, cfg.max_len, &mut rng)
            })
            .collect();
        let mut rep = EmbeddingReport::default();
        for t in transcripts {
            rep.steps_lifted += t.entries.len();
            for e in &t.entries {
                *rep.kind_counts.entry(format!("{:?}", e.step.kind())).or_default() += 1;
                for c in &e.cases {
                    *rep.case_counts.entry(c.to_string()).or_default() += 1;
                }
            }
            if let Some(f) = &t.failure {
                rep.lift_failures.push(f.clone());
            }
            rep.transcripts.push(t);
        }
        rep.separation_failures = self.check_separation();
        rep.product_failures = self.check_products()?;
        Ok(rep)
    }

    /// Whether the one-letter word over each stable arrow is in `W` with itself as `℘̂`.
    pub fn stable_letters_are_fixed(&self) -> bool {
        self.ctx.arrows().iter().enumerate().all(|(i, &a)| {
            let stable = self.ctx.is_stable(a).unwrap_or(false);
            let w = BracketedWord::path(&[TildeSym::Letter(crate::rewriting::Letter::new(i as u32, false))]);
            !stable || (self.is_member(&w, WordClass::W) && self.wp_hat(&w).ok().flatten() == Some(a))
        })
    }
}
