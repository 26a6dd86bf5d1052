use super::*;
use crate::congruence::Congruence;
use crate::constructors::{brandt, named_small};
use crate::rewriting::{Letter, TildeSym};
use crate::semigroupoid::{DaggerPolicy, ExtensionContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brandt_h() -> ExtensionContext {
    let s = brandt(&named_small("Z2").unwrap(), 2).unwrap();
    let h = Congruence::from_labels(&s, &s.green().h_classes.clone()).unwrap();
    ExtensionContext::build(s, h, DaggerPolicy::Lowest).unwrap()
}

fn b2_times_rect() -> ExtensionContext {
    let b2 = named_small("B2").unwrap();
    let r = named_small("rect2x2").unwrap();
    let s = b2.direct_product(&r);
    let labels: Vec<usize> = s.elements().map(|x| x / r.order()).collect();
    let rho = Congruence::from_labels(&s, &labels).unwrap();
    ExtensionContext::build(s, rho, DaggerPolicy::Lowest).unwrap()
}

#[test]
fn parse_display_round_trip() {
    let ctx = brandt_h();
    let alg = ArrowAlgebra::new(&ctx, PrimeRule::default()).unwrap();
    let text = "a1{(a2^a3')[(a4^a0)]}(a5'^a1)";
    let bw = BracketedWord::parse(text).unwrap();
    assert_eq!(bw.display(&alg), text);
    assert_eq!(bw.bracket_count(), 2);
    assert_eq!(bw.mirror().mirror(), bw);
    assert!(BracketedWord::parse("a1[]").is_err());
    assert!(BracketedWord::parse("(a1a2)").is_err());
}

#[test]
fn kappa_letters_are_fixed_points() {
    for ctx in [brandt_h(), b2_times_rect()] {
        let alg = ArrowAlgebra::new(&ctx, PrimeRule::default()).unwrap();
        assert!(alg.stable_letters_are_fixed());
        assert!(alg.check_separation().is_empty());
        assert!(alg.check_products().unwrap().is_empty());
    }
}

fn find_nonloop_pair(alg: &ArrowAlgebra) -> Option<(Letter, Letter, Letter, Letter)> {
    // (a∧b) a loop, (a∧c) and (d∧c) non-loops
    let letters = alg.letters();
    for &a in &letters {
        for &b in &letters {
            if !alg.is_wedge_loop(TildeSym::Wedge(a, b)) {
                continue;
            }
            for &c in &letters {
                if alg.is_wedge_loop(TildeSym::Wedge(a, c)) {
                    continue;
                }
                for &d in &letters {
                    if !alg.is_wedge_loop(TildeSym::Wedge(d, c)) {
                        return Some((a, b, c, d));
                    }
                }
            }
        }
    }
    None
}

#[test]
fn worked_bracketing_example() {
    let ctx = brandt_h();
    let alg = ArrowAlgebra::new(&ctx, PrimeRule::default()).unwrap();
    let (a, b, c, d) = find_nonloop_pair(&alg).expect("non-loop ∧-letters exist");
    let start = BracketedWord::path(&[TildeSym::Wedge(a, b)]);
    let one = alg.lift_step(&start, &DerivationStep::T3b { pos: 0, y: c }).unwrap();
    let expected_one =
        BracketedWord(vec![BItem::Ceil(vec![BItem::Sym(TildeSym::Wedge(a, c))]), BItem::Sym(TildeSym::Wedge(a, b))]);
    assert_eq!(one.word, expected_one);
    let two = alg.lift_step(&one.word, &DerivationStep::T4b { pos: 0, y: d }).unwrap();
    let expected_two = BracketedWord(vec![
        BItem::Ceil(vec![BItem::Sym(TildeSym::Wedge(a, c)), BItem::Floor(vec![BItem::Sym(TildeSym::Wedge(d, c))])]),
        BItem::Sym(TildeSym::Wedge(a, b)),
    ]);
    assert_eq!(two.word, expected_two);
    assert_eq!(alg.classify(&two.word), vec![WordClass::W]);
    assert_eq!(alg.wp(&two.word).unwrap(), vec![TildeSym::Wedge(a, b)]);
    // and back again
    let back = alg.lift_step(&two.word, &DerivationStep::T4a { pos: 0 }).unwrap();
    assert_eq!(back.word, expected_one);
    let back = alg.lift_step(&back.word, &DerivationStep::T3a { pos: 0 }).unwrap();
    assert_eq!(back.word, start);
}

#[test]
fn non_loop_wedge_is_right_and_left() {
    let ctx = brandt_h();
    let alg = ArrowAlgebra::new(&ctx, PrimeRule::default()).unwrap();
    let (_, _, c, d) = find_nonloop_pair(&alg).unwrap();
    let w = BracketedWord::path(&[TildeSym::Wedge(d, c)]);
    let classes = alg.classify(&w);
    assert!(classes.contains(&WordClass::Right) && classes.contains(&WordClass::Left));
    assert!(!classes.contains(&WordClass::W));
}

#[test]
fn every_step_kind_applies_and_steps_invert() {
    let ctx = b2_times_rect();
    let alg = ArrowAlgebra::new(&ctx, PrimeRule::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (k, _) = alg.kappa(3);
    let mut w = k.0;
    for _ in 0..200 {
        let step = alg.random_step(&w, 6, &mut rng).unwrap();
        let next = alg.apply_step(&w, &step).unwrap();
        assert!(next.len() <= 6);
        w = next;
    }
}

fn run_random(ctx: &ExtensionContext, rule: PrimeRule, seed: u64) -> EmbeddingReport {
    let alg = ArrowAlgebra::new(ctx, rule).unwrap();
    let cfg = DerivationConfig { trials: 30, steps_per_trial: 30, max_len: 7 };
    alg.verify_embedding(&cfg, seed).unwrap()
}

#[test]
fn random_derivations_lift() {
    for ctx in [brandt_h(), b2_times_rect()] {
        let rep = run_random(&ctx, PrimeRule::default(), 11);
        assert!(rep.all_pass(), "{:?}", &rep.lift_failures[..rep.lift_failures.len().min(3)]);
        assert!(rep.steps_lifted > 500);
    }
}

#[test]
fn oracle_finds_witnesses_for_lifted_steps() {
    let ctx = brandt_h();
    let alg = ArrowAlgebra::new(&ctx, PrimeRule::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for s in ctx.s.elements() {
        let (k, _) = alg.kappa(s);
        let mut cur = BracketedWord::path(&k.0);
        for _ in 0..15 {
            let step = alg.random_step(&cur.strip(), 5, &mut rng).unwrap();
            let lifted = alg.lift_step(&cur, &step).unwrap();
            let oracle = alg.lift_step_oracle(&cur, &step, lifted.word.bracket_count().max(2)).unwrap();
            assert_eq!(oracle.strip(), lifted.word.strip());
            assert_eq!(alg.wp_hat(&oracle).unwrap(), alg.wp_hat(&lifted.word).unwrap());
            cur = lifted.word;
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn dagger_of_hat_breaks_s1_when_dagger_and_hat_do_not_commute() {
    use crate::io::{corpus, corpus_contexts, CorpusConfig};
    let entries = corpus(&CorpusConfig::default()).unwrap();
    let mut split = 0;
    for nc in corpus_contexts(&entries, 20, DaggerPolicy::Lowest) {
        let alt = ArrowAlgebra::new(&nc.ctx, PrimeRule::DaggerOfHat).unwrap();
        let fixed = ArrowAlgebra::new(&nc.ctx, PrimeRule::HatOfDagger).unwrap();
        for (i, &a) in nc.ctx.arrows().iter().enumerate() {
            let w = BracketedWord::path(&[TildeSym::Letter(Letter::new(i as u32, true))]);
            let step = DerivationStep::S1a { pos: 0 };
            assert!(fixed.lift_step(&w, &step).is_ok());
            let commute = alt.hat(nc.ctx.dagger_arrow(a)) == nc.ctx.dagger_arrow(alt.hat(a));
            assert_eq!(alt.lift_step(&w, &step).is_ok(), commute, "{} {a:?}", nc.name);
            split += usize::from(!commute);
        }
    }
    assert!(split > 0);
}
