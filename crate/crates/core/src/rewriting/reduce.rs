use super::term::{r0_flatten, Item, Letter, Term, TildeSym, TildeWord};
use crate::error::Result;
use crate::semigroup::FiniteSemigroup;
use std::collections::{HashMap, HashSet};

/// The reduction rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
}

/// Apply one of (R1)–(R5) to a pair of adjacent `Ã`-symbols.
pub fn pair_rule(a: TildeSym, b: TildeSym) -> Option<(Rule, TildeSym)> {
    use TildeSym::{Letter as L, Wedge as W};
    match (a, b) {
        (L(x), W(_, x2)) if x == x2 => Some((Rule::R1, L(x))),
        (W(x, _), L(x2)) if x == x2 => Some((Rule::R2, L(x))),
        (W(x, _), W(x2, z)) if x == x2 => Some((Rule::R3, W(x, z))),
        (W(z, x), W(_, x2)) if x == x2 => Some((Rule::R4, W(z, x))),
        (L(p), L(x)) if p == x.prime() => Some((Rule::R5, W(p, x))),
        _ => None,
    }
}

fn as_sym(it: &Item) -> Option<TildeSym> {
    match it {
        Item::Letter(l) => Some(TildeSym::Letter(*l)),
        Item::Wedge(u, v) => match (&u.0[..], &v.0[..]) {
            ([Item::Letter(x)], [Item::Letter(y)]) => Some(TildeSym::Wedge(*x, *y)),
            _ => None,
        },
    }
}

/// Every term obtained by a single reduction anywhere in `t`.
pub fn one_step_reducts(t: &Term) -> Vec<(Rule, Term)> {
    let mut out = Vec::new();
    let items = &t.0;
    for i in 0..items.len() {
        if i + 1 < items.len() {
            if let (Some(a), Some(b)) = (as_sym(&items[i]), as_sym(&items[i + 1])) {
                if let Some((r, c)) = pair_rule(a, b) {
                    let mut v = items[..i].to_vec();
                    v.push(c.to_item());
                    v.extend_from_slice(&items[i + 2..]);
                    out.push((r, Term(v)));
                }
            }
        }
        if let Item::Wedge(u, w) = &items[i] {
            let replace = |new: Item| {
                let mut v = items.clone();
                v[i] = new;
                Term(v)
            };
            if as_sym(&items[i]).is_none() {
                let c = TildeSym::Wedge(u.iota(), w.tau());
                out.push((Rule::R0, replace(c.to_item())));
            }
            for (r, u2) in one_step_reducts(u) {
                out.push((r, replace(Item::Wedge(Box::new(u2), w.clone()))));
            }
            for (r, w2) in one_step_reducts(w) {
                out.push((r, replace(Item::Wedge(u.clone(), Box::new(w2)))));
            }
        }
    }
    out
}

/// Reduce a word over `Ã` by always rewriting the leftmost redex.
pub fn reduce_tilde(w: &TildeWord) -> TildeWord {
    let mut v = w.0.clone();
    'outer: loop {
        for i in 0..v.len().saturating_sub(1) {
            if let Some((_, c)) = pair_rule(v[i], v[i + 1]) {
                v.splice(i..i + 2, [c]);
                continue 'outer;
            }
        }
        return TildeWord(v);
    }
}

/// The reduced form, computed leftmost-innermost.
pub fn reduce(t: &Term) -> Term {
    reduce_tilde(&r0_flatten(t)).to_term()
}

pub fn is_reduced(t: &Term) -> bool {
    one_step_reducts(t).is_empty()
}

pub fn theta_cs_equal(u: &Term, v: &Term) -> bool {
    reduce_tilde(&r0_flatten(u)) == reduce_tilde(&r0_flatten(v))
}

/// The normal form reached by every maximal reduction sequence from `t`, or `None`
/// if two sequences end in different normal forms.
pub fn unique_normal_form(t: &Term, memo: &mut HashMap<Term, Option<Term>>) -> Option<Term> {
    if let Some(r) = memo.get(t) {
        return r.clone();
    }
    let mut nf: Option<Term> = None;
    let mut ok = true;
    let steps = one_step_reducts(t);
    if steps.is_empty() {
        nf = Some(t.clone());
    }
    for (_, s) in steps {
        match unique_normal_form(&s, memo) {
            None => ok = false,
            Some(n) => match &nf {
                None => nf = Some(n),
                Some(m) if *m != n => ok = false,
                _ => {}
            },
        }
        if !ok {
            break;
        }
    }
    let r = if ok { nf } else { None };
    memo.insert(t.clone(), r.clone());
    r
}

/// The set of all normal forms reachable from `t` over all reduction orders.
pub fn all_normal_forms(t: &Term, memo: &mut HashMap<Term, HashSet<Term>>) -> HashSet<Term> {
    if let Some(s) = memo.get(t) {
        return s.clone();
    }
    let steps = one_step_reducts(t);
    let mut set = HashSet::new();
    if steps.is_empty() {
        set.insert(t.clone());
    } else {
        for (_, s) in steps {
            set.extend(all_normal_forms(&s, memo));
        }
    }
    memo.insert(t.clone(), set.clone());
    set
}

/// All terms with exactly `leaves` letter occurrences over `letters`.
pub fn enumerate_terms(letters: &[Letter], leaves: usize) -> Vec<Term> {
    let mut terms: Vec<Vec<Term>> = vec![Vec::new(); leaves + 1];
    let mut items: Vec<Vec<Item>> = vec![Vec::new(); leaves + 1];
    for n in 1..=leaves {
        let mut its = Vec::new();
        if n == 1 {
            its.extend(letters.iter().map(|&l| Item::Letter(l)));
        }
        for a in 1..n {
            for u in &terms[a] {
                for v in &terms[n - a] {
                    its.push(Item::Wedge(Box::new(u.clone()), Box::new(v.clone())));
                }
            }
        }
        let mut ts: Vec<Term> = its.iter().map(|i| Term(vec![i.clone()])).collect();
        for k in 1..n {
            for head in &items[k] {
                for tail in &terms[n - k] {
                    let mut v = vec![head.clone()];
                    v.extend(tail.0.iter().cloned());
                    ts.push(Term(v));
                }
            }
        }
        items[n] = its;
        terms[n] = ts;
    }
    std::mem::take(&mut terms[leaves])
}

/// Evaluate a term under `x ↦ images[x]`, with wedge nodes read as the sandwich wedge.
pub fn evaluate(s: &FiniteSemigroup, images: &dyn Fn(Letter) -> usize, t: &Term) -> Result<usize> {
    let mut acc: Option<usize> = None;
    for it in &t.0 {
        let v = match it {
            Item::Letter(l) => images(*l),
            Item::Wedge(u, w) => s.wedge(evaluate(s, images, u)?, evaluate(s, images, w)?)?,
        };
        acc = Some(acc.map_or(v, |a| s.mul(a, v)));
    }
    Ok(acc.expect("terms are nonempty"))
}

#[cfg(test)]
mod tests {
    use super::super::term::{parse_term, Alphabet};
    use super::*;

    fn red(s: &str) -> String {
        let a = Alphabet::standard(4);
        let r = reduce(&parse_term(s, &a).unwrap());
        let out = r.display(&a).to_string();
        out
    }

    #[test]
    fn single_rules() {
        assert_eq!(red("x(y^x)"), "x");
        assert_eq!(red("(x^y)x"), "x");
        assert_eq!(red("x'x"), "(x'^x)");
        assert_eq!(red("(x^y)(x^z)"), "(x^z)");
        assert_eq!(red("(z^x)(y^x)"), "(z^x)");
        assert_eq!(red("(xy^z)"), "(x^z)");
        assert_eq!(red("xx'x"), "x");
        assert_eq!(red("xy"), "xy");
    }

    #[test]
    fn counts_of_shapes() {
        let one = [Letter::new(0, false)];
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_terms(&one, n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 31, 154, 820]);
    }

    #[test]
    fn reductions_decrease_length() {
        let a = Alphabet::standard(2);
        for n in 1..=4 {
            for t in enumerate_terms(&a.letters(), n) {
                for (_, s) in one_step_reducts(&t) {
                    assert!(s.length() < t.length());
                }
            }
        }
    }
}
