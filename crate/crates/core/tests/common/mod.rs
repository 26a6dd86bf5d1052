//! Brute-force oracles over raw Cayley tables. Nothing here calls the library's own
//! structural predicates.
#![allow(dead_code)]

use esli::FiniteSemigroup;

#[derive(Clone, Debug)]
pub struct Table {
    pub n: usize,
    pub t: Vec<usize>,
}

impl Table {
    pub fn of(s: &FiniteSemigroup) -> Self {
        Table { n: s.order(), t: s.table() }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(f(a, b));
            }
        }
        Table { n, t }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b]
    }

    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&e| self.mul(e, e) == e).collect()
    }

    pub fn is_idem(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn inverses(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.mul(self.mul(a, x), a) == a && self.mul(self.mul(x, a), x) == x).collect()
    }

    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).any(|x| self.mul(self.mul(a, x), a) == a))
    }

    /// `aS¹` as a membership vector.
    pub fn right_ideal(&self, a: usize) -> Vec<bool> {
        let mut v = vec![false; self.n];
        v[a] = true;
        for x in 0..self.n {
            v[self.mul(a, x)] = true;
        }
        v
    }

    pub fn left_ideal(&self, a: usize) -> Vec<bool> {
        let mut v = vec![false; self.n];
        v[a] = true;
        for x in 0..self.n {
            v[self.mul(x, a)] = true;
        }
        v
    }

    pub fn r_rel(&self, a: usize, b: usize) -> bool {
        self.right_ideal(a) == self.right_ideal(b)
    }

    pub fn l_rel(&self, a: usize, b: usize) -> bool {
        self.left_ideal(a) == self.left_ideal(b)
    }

    /// `x ≤ y` iff `x = ey = yf` for idempotents `e, f` (regular semigroups).
    pub fn natural_leq(&self, x: usize, y: usize) -> bool {
        let es = self.idempotents();
        es.iter().any(|&e| self.mul(e, y) == x) && es.iter().any(|&f| self.mul(y, f) == x)
    }

    pub fn idempotents_commute(&self) -> bool {
        let es = self.idempotents();
        es.iter().all(|&e| es.iter().all(|&f| self.mul(e, f) == self.mul(f, e)))
    }

    pub fn is_inverse(&self) -> bool {
        self.is_regular() && self.idempotents_commute()
    }

    /// `e L f R g` implies `e R h L g` for some idempotent `h`.
    pub fn is_e_solid(&self) -> bool {
        let es = self.idempotents();
        for &e in &es {
            for &f in es.iter().filter(|&&f| self.l_rel(e, f)) {
                for &g in es.iter().filter(|&&g| self.r_rel(f, g)) {
                    if !es.iter().any(|&h| self.r_rel(e, h) && self.l_rel(h, g)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every local submonoid `eSe` has commuting idempotents.
    pub fn is_locally_inverse(&self) -> bool {
        let es = self.idempotents();
        es.iter().all(|&e| {
            let local: Vec<usize> =
                es.iter().copied().filter(|&f| self.mul(e, f) == f && self.mul(f, e) == f).collect();
            local.iter().all(|&f| local.iter().all(|&g| self.mul(f, g) == self.mul(g, f)))
        })
    }

    /// Simple (every element lies in every two-sided ideal) and, being finite, completely simple.
    pub fn is_completely_simple_subset(&self, set: &[usize]) -> bool {
        let closed = set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))));
        closed
            && set.iter().all(|&a| {
                set.iter().all(|&b| set.iter().any(|&x| set.iter().any(|&y| self.mul(self.mul(x, b), y) == a)))
            })
    }

    pub fn is_completely_simple(&self) -> bool {
        let all: Vec<usize> = (0..self.n).collect();
        self.is_completely_simple_subset(&all)
    }

    pub fn is_congruence(&self, labels: &[usize]) -> bool {
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if labels[a] != labels[b] {
                    continue;
                }
                for c in 0..self.n {
                    if labels[self.mul(a, c)] != labels[self.mul(b, c)]
                        || labels[self.mul(c, a)] != labels[self.mul(c, b)]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The quotient table on normalized labels `0..k`.
    pub fn quotient(&self, labels: &[usize]) -> Table {
        let norm = normalize(labels);
        let k = norm.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![usize::MAX; k];
        for (a, &l) in norm.iter().enumerate() {
            if rep[l] == usize::MAX {
                rep[l] = a;
            }
        }
        Table::from_fn(k, |x, y| norm[self.mul(rep[x], rep[y])])
    }

    /// Each class containing an idempotent is a completely simple subsemigroup.
    pub fn is_over_cs(&self, labels: &[usize]) -> bool {
        self.idempotents().iter().all(|&e| {
            let class: Vec<usize> = (0..self.n).filter(|&x| labels[x] == labels[e]).collect();
            self.is_completely_simple_subset(&class)
        })
    }

    /// The subsemigroup generated by `seed`.
    pub fn generated(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut list: Vec<usize> = Vec::new();
        for &a in seed {
            if !inside[a] {
                inside[a] = true;
                list.push(a);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let a = list[i];
            for j in 0..list.len() {
                for p in [self.mul(a, list[j]), self.mul(list[j], a)] {
                    if !inside[p] {
                        inside[p] = true;
                        list.push(p);
                    }
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    pub fn restrict(&self, set: &[usize]) -> Table {
        let pos = |x: usize| set.iter().position(|&y| y == x).expect("closed");
        Table::from_fn(set.len(), |a, b| pos(self.mul(set[a], set[b])))
    }
}

/// Relabel classes as `0, 1, …` in order of first occurrence.
pub fn normalize(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let k = map.len();
            *map.entry(l).or_insert(k)
        })
        .collect()
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            if i == 0 && l > 0 {
                break;
            }
            cur.push(l);
            go(i + 1, n, if i == 0 { 0 } else { max.max(l) }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(0, n, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// The meet of all congruences whose quotient is an inverse semigroup.
pub fn least_inverse_by_partitions(t: &Table) -> Vec<usize> {
    let mut meet: Vec<usize> = vec![0; t.n];
    for p in partitions(t.n) {
        if t.is_congruence(&p) && t.quotient(&p).is_inverse() {
            let pairs: Vec<(usize, usize)> = meet.iter().copied().zip(p.iter().copied()).collect();
            let mut ids = std::collections::HashMap::new();
            meet = pairs
                .into_iter()
                .map(|k| {
                    let n = ids.len();
                    *ids.entry(k).or_insert(n)
                })
                .collect();
        }
    }
    normalize(&meet)
}

/// `M⁰({1}; I, Λ; P)` with `p[λ][i] ∈ {0, 1}`: elements `0` and `(i, λ) ↦ 1 + i·|Λ| + λ`.
pub fn rees_zero_trivial(i_size: usize, l_size: usize, p: &[Vec<u8>]) -> Table {
    let n = 1 + i_size * l_size;
    Table::from_fn(n, |a, b| {
        if a == 0 || b == 0 {
            return 0;
        }
        let (i, l) = ((a - 1) / l_size, (a - 1) % l_size);
        let (j, m) = ((b - 1) / l_size, (b - 1) % l_size);
        if p[l][j] == 1 {
            1 + i * l_size + m
        } else {
            0
        }
    })
}
