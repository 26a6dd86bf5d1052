use super::reduce::pair_rule;
use super::term::{Item, Letter, Term, TildeSym};
use std::collections::HashMap;

const LP: u8 = 0xF0;
const WEDGE: u8 = 0xF1;
const RP: u8 = 0xF2;
const CAP: usize = 23;

/// A small term stored as its token string `( ^ )` plus letter codes, for fast
/// exhaustive exploration of reduction orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedTerm {
    len: u8,
    toks: [u8; CAP],
}

fn code(l: Letter) -> Option<u8> {
    let c = l.base.checked_mul(2)? + l.primed as u32;
    (c < LP as u32).then_some(c as u8)
}

fn decode(c: u8) -> Letter {
    Letter::new((c / 2) as u32, c % 2 == 1)
}

fn is_letter(c: u8) -> bool {
    c < LP
}

impl PackedTerm {
    pub fn from_term(t: &Term) -> Option<Self> {
        fn go(t: &Term, out: &mut Vec<u8>) -> Option<()> {
            for it in &t.0 {
                match it {
                    Item::Letter(l) => out.push(code(*l)?),
                    Item::Wedge(u, v) => {
                        out.push(LP);
                        go(u, out)?;
                        out.push(WEDGE);
                        go(v, out)?;
                        out.push(RP);
                    }
                }
            }
            Some(())
        }
        let mut v = Vec::new();
        go(t, &mut v)?;
        Self::from_tokens(&v)
    }

    fn from_tokens(v: &[u8]) -> Option<Self> {
        if v.len() > CAP {
            return None;
        }
        let mut toks = [0; CAP];
        toks[..v.len()].copy_from_slice(v);
        Some(PackedTerm { len: v.len() as u8, toks })
    }

    fn tokens(&self) -> &[u8] {
        &self.toks[..self.len as usize]
    }

    pub fn to_term(&self) -> Term {
        fn seq(t: &[u8], i: &mut usize) -> Term {
            let mut items = Vec::new();
            while *i < t.len() {
                match t[*i] {
                    LP => {
                        *i += 1;
                        let u = seq(t, i);
                        *i += 1;
                        let v = seq(t, i);
                        *i += 1;
                        items.push(Item::Wedge(Box::new(u), Box::new(v)));
                    }
                    WEDGE | RP => break,
                    c => {
                        items.push(Item::Letter(decode(c)));
                        *i += 1;
                    }
                }
            }
            Term(items)
        }
        seq(self.tokens(), &mut 0)
    }

    fn sym_at(t: &[u8], i: usize, end: usize) -> Option<TildeSym> {
        match end - i {
            1 => Some(TildeSym::Letter(decode(t[i]))),
            5 if is_letter(t[i + 1]) && t[i + 2] == WEDGE && is_letter(t[i + 3]) => {
                Some(TildeSym::Wedge(decode(t[i + 1]), decode(t[i + 3])))
            }
            _ => None,
        }
    }

    fn sym_tokens(s: TildeSym) -> Vec<u8> {
        match s {
            TildeSym::Letter(l) => vec![code(l).expect("encodable")],
            TildeSym::Wedge(x, y) => vec![LP, code(x).expect("encodable"), WEDGE, code(y).expect("encodable"), RP],
        }
    }

    /// All one-step reducts, in no particular order.
    pub fn reducts(&self, out: &mut Vec<PackedTerm>) {
        let t = self.tokens();
        let n = t.len();
        let mut close = [0usize; CAP];
        let mut stack = Vec::with_capacity(8);
        for (i, &c) in t.iter().enumerate() {
            if c == LP {
                stack.push(i);
            } else if c == RP {
                close[stack.pop().expect("balanced")] = i;
            }
        }
        let end = |i: usize| if t[i] == LP { close[i] + 1 } else { i + 1 };
        let mut splice = |a: usize, b: usize, mid: &[u8]| {
            let mut v = Vec::with_capacity(n);
            v.extend_from_slice(&t[..a]);
            v.extend_from_slice(mid);
            v.extend_from_slice(&t[b..]);
            out.push(Self::from_tokens(&v).expect("reducts are shorter"));
        };
        for i in 0..n {
            if !(is_letter(t[i]) || t[i] == LP) {
                continue;
            }
            let j = end(i);
            let a = Self::sym_at(t, i, j);
            if t[i] == LP && a.is_none() {
                let first = t[i..j].iter().copied().find(|&c| is_letter(c)).expect("letter");
                let last = t[i..j].iter().rev().copied().find(|&c| is_letter(c)).expect("letter");
                splice(i, j, &[LP, first, WEDGE, last, RP]);
            }
            if j < n && (is_letter(t[j]) || t[j] == LP) {
                let k = end(j);
                if let (Some(a), Some(b)) = (a, Self::sym_at(t, j, k)) {
                    if let Some((_, c)) = pair_rule(a, b) {
                        splice(i, k, &Self::sym_tokens(c));
                    }
                }
            }
        }
    }
}

/// Unique-normal-form check over all reduction orders of packed terms.
/// The memo maps a term to its normal form, or to `None` after a divergence.
pub fn packed_unique_normal_form(
    t: PackedTerm,
    memo: &mut HashMap<PackedTerm, Option<PackedTerm>>,
) -> Option<PackedTerm> {
    if let Some(r) = memo.get(&t) {
        return *r;
    }
    let mut succ = Vec::new();
    t.reducts(&mut succ);
    let r = if succ.is_empty() {
        Some(t)
    } else {
        let mut nf = None;
        let mut ok = true;
        for s in succ {
            match (packed_unique_normal_form(s, memo), nf) {
                (None, _) => ok = false,
                (Some(x), None) => nf = Some(x),
                (Some(x), Some(y)) if x != y => ok = false,
                _ => {}
            }
            if !ok {
                break;
            }
        }
        if ok {
            nf
        } else {
            None
        }
    };
    memo.insert(t, r);
    r
}
