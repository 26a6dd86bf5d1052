//! Congruences on finite semigroups: generation, quotients, kernels and the
//! least inverse semigroup congruence.

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::subset::{classes_of, normalize_classes, ElementSubset};
use petgraph::unionfind::UnionFind;
use std::collections::HashSet;

/// A compatible partition of a semigroup's carrier, stored as normalized class labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    labels: Vec<usize>,
}

/// A quotient semigroup together with the natural projection.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub congruence: Congruence,
    pub quotient: FiniteSemigroup,
    pub projection: Vec<usize>,
}

impl Congruence {
    /// Validate a labelled partition against `s`.
    pub fn from_labels(s: &FiniteSemigroup, labels: &[usize]) -> Result<Self> {
        if labels.len() != s.order() {
            return Err(Error::Format(format!("{} labels for order {}", labels.len(), s.order())));
        }
        let c = Congruence { labels: normalize_classes(labels) };
        if let Some((a, b, x)) = c.compatibility_witness(s) {
            return Err(Error::NotACongruence { a, b, c: x });
        }
        Ok(c)
    }

    /// The congruence induced by a homomorphism given as an element map.
    pub fn induced_by_map(s: &FiniteSemigroup, map: &[usize]) -> Result<Self> {
        Self::from_labels(s, map)
    }

    pub fn identity(n: usize) -> Self {
        Congruence { labels: (0..n).collect() }
    }

    pub fn universal(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    fn compatibility_witness(&self, s: &FiniteSemigroup) -> Option<(usize, usize, usize)> {
        let reps = self.representatives();
        for a in s.elements() {
            let b = reps[self.labels[a]];
            if a == b {
                continue;
            }
            for c in s.elements() {
                if !self.related(s.mul(c, a), s.mul(c, b)) || !self.related(s.mul(a, c), s.mul(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn class_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.labels)
    }

    pub fn class_of(&self, a: usize) -> Vec<usize> {
        let c = self.labels[a];
        (0..self.labels.len()).filter(|&x| self.labels[x] == c).collect()
    }

    /// Least element of each class, indexed by class label.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_count()];
        for (a, &c) in self.labels.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = a;
            }
        }
        reps
    }

    /// `self ⊆ other` as relations.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        let reps = self.representatives();
        (0..self.labels.len()).all(|a| other.related(a, reps[self.labels[a]]))
    }

    /// Intersection of two congruences.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.labels.len();
        let raw: Vec<usize> = (0..n).map(|a| self.labels[a] * n + other.labels[a]).collect();
        Congruence { labels: normalize_classes(&raw) }
    }

    /// Join of two congruences (the join of equivalences is already compatible).
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.labels.len();
        let mut uf = UnionFind::<usize>::new(n);
        for part in [&self.labels, &other.labels] {
            let mut first = vec![usize::MAX; n];
            for a in 0..n {
                let c = part[a];
                if first[c] == usize::MAX {
                    first[c] = a;
                } else {
                    uf.union(a, first[c]);
                }
            }
        }
        let raw: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
        Congruence { labels: normalize_classes(&raw) }
    }
}

/// Least congruence containing `pairs`.
pub fn congruence_generated(s: &FiniteSemigroup, pairs: &[(usize, usize)]) -> Result<Congruence> {
    let n = s.order();
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::NoSuchElement(a.max(b)));
    }
    let mut uf = UnionFind::<usize>::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for c in 0..n {
                work.push((s.mul(c, a), s.mul(c, b)));
                work.push((s.mul(a, c), s.mul(b, c)));
            }
        }
    }
    let raw: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
    Ok(Congruence { labels: normalize_classes(&raw) })
}

/// The quotient `S/ρ`, with classes numbered by their normalized label.
pub fn quotient(s: &FiniteSemigroup, rho: &Congruence) -> QuotientMap {
    let reps = rho.representatives();
    let m = reps.len();
    let q = FiniteSemigroup::from_fn(m, |x, y| rho.labels[s.mul(reps[x], reps[y])])
        .expect("a quotient by a congruence is associative");
    let names = reps.iter().map(|&r| format!("[{}]", s.name(r))).collect();
    QuotientMap {
        congruence: rho.clone(),
        quotient: q.with_names(names).expect("one name per class"),
        projection: rho.labels.clone(),
    }
}

/// Union of the idempotent classes. Requires an inverse quotient.
pub fn kernel(s: &FiniteSemigroup, rho: &Congruence) -> Result<ElementSubset> {
    let q = quotient(s, rho);
    if !q.quotient.is_inverse() {
        return Err(Error::QuotientNotInverse);
    }
    let e = q.quotient.idempotents();
    Ok(ElementSubset::from_elements(s.order(), s.elements().filter(|&a| e.contains(rho.labels[a]))))
}

/// Inverse quotient whose idempotent classes are completely simple subsemigroups.
pub fn is_congruence_over_cs(s: &FiniteSemigroup, rho: &Congruence) -> bool {
    let q = quotient(s, rho);
    if !q.quotient.is_inverse() {
        return false;
    }
    let classes = rho.classes();
    let idem = q.quotient.idempotents().to_vec();
    idem.into_iter().all(|c| s.induced(&classes[c]).map(|sub| sub.semigroup.is_completely_simple()).unwrap_or(false))
}

/// The least congruence with inverse quotient, by the `(ef, fe)` lifting fixpoint.
pub fn least_inverse_congruence(s: &FiniteSemigroup) -> Result<Congruence> {
    if !s.is_regular() {
        return Err(Error::NotRegular);
    }
    let mut rho = Congruence::identity(s.order());
    loop {
        let q = quotient(s, &rho);
        let qe = q.quotient.idempotents().to_vec();
        let offending = qe.iter().enumerate().find_map(|(i, &x)| {
            qe[i + 1..].iter().find(|&&y| q.quotient.mul(x, y) != q.quotient.mul(y, x)).map(|&y| (x, y))
        });
        let Some((x, y)) = offending else {
            return Ok(rho);
        };
        let lift = |c: usize| {
            s.idempotents()
                .iter()
                .find(|&e| rho.labels[e] == c)
                .expect("idempotent classes of a regular quotient contain idempotents")
        };
        let (e, f) = (lift(x), lift(y));
        let extra = congruence_generated(s, &[(s.mul(e, f), s.mul(f, e))])?;
        rho = rho.join(&extra);
    }
}

/// Every congruence on `s`, as joins of principal congruences. Limited to order `bound`.
pub fn all_congruences(s: &FiniteSemigroup, bound: usize) -> Result<Vec<Congruence>> {
    let n = s.order();
    if n > bound {
        return Err(Error::OrderBound { order: n, bound });
    }
    let mut principals: Vec<Congruence> = Vec::new();
    let mut seen_principal = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = congruence_generated(s, &[(a, b)])?;
            if seen_principal.insert(c.clone()) {
                principals.push(c);
            }
        }
    }
    let identity = Congruence::identity(n);
    let mut seen: HashSet<Congruence> = HashSet::new();
    seen.insert(identity.clone());
    let mut all = vec![identity];
    let mut next = 0;
    while next < all.len() {
        let current = all[next].clone();
        next += 1;
        for p in &principals {
            if p.is_finer_than(&current) {
                continue;
            }
            let j = current.join(p);
            if seen.insert(j.clone()) {
                all.push(j);
            }
        }
    }
    all.sort_by(|a, b| a.class_count().cmp(&b.class_count()).reverse().then(a.labels.cmp(&b.labels)));
    Ok(all)
}

/// Intersection of every congruence with inverse quotient (test oracle).
pub fn least_inverse_congruence_oracle(s: &FiniteSemigroup, bound: usize) -> Result<Congruence> {
    let all = all_congruences(s, bound)?;
    Ok(all
        .iter()
        .filter(|c| quotient(s, c).quotient.is_inverse())
        .fold(Congruence::universal(s.order()), |acc, c| acc.meet(c)))
}
