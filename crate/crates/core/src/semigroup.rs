//! Finite semigroups given by Cayley tables, with Green's relations, inverses,
//! the natural partial order, sandwich sets and the sandwich operation.

use crate::error::{Error, Result};
use crate::subset::{normalize_classes, ElementSubset};
use petgraph::unionfind::UnionFind;
use std::collections::HashMap;
use std::sync::OnceLock;

/// A finite semigroup on the carrier `0..order`, stored as a row-major table
/// where `table[a * order + b] = a * b`.
#[derive(Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Vec<u32>,
    names: Option<Vec<String>>,
    cache: Cache,
}

#[derive(Clone, Default)]
struct Cache {
    idempotents: OnceLock<ElementSubset>,
    inverses: OnceLock<Vec<ElementSubset>>,
    green: OnceLock<GreenData>,
    locally_inverse: OnceLock<bool>,
    wedge: OnceLock<std::result::Result<Vec<u32>, Error>>,
}

impl std::fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("order", &self.order)
            .field("table", &self.table)
            .field("names", &self.names)
            .finish()
    }
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

/// Green's relations as class-label arrays, plus the principal one-sided ideals.
#[derive(Clone, Debug)]
pub struct GreenData {
    pub r_classes: Vec<usize>,
    pub l_classes: Vec<usize>,
    pub h_classes: Vec<usize>,
    pub d_classes: Vec<usize>,
    /// `r_ideals[a]` is `aS¹`.
    pub r_ideals: Vec<ElementSubset>,
    /// `l_ideals[a]` is `S¹a`.
    pub l_ideals: Vec<ElementSubset>,
}

impl GreenData {
    pub fn r_related(&self, a: usize, b: usize) -> bool {
        self.r_classes[a] == self.r_classes[b]
    }
    pub fn l_related(&self, a: usize, b: usize) -> bool {
        self.l_classes[a] == self.l_classes[b]
    }
    pub fn h_related(&self, a: usize, b: usize) -> bool {
        self.h_classes[a] == self.h_classes[b]
    }
    pub fn d_related(&self, a: usize, b: usize) -> bool {
        self.d_classes[a] == self.d_classes[b]
    }
    /// Elements of the R-class of `a`.
    pub fn r_class_of(&self, a: usize) -> Vec<usize> {
        let c = self.r_classes[a];
        (0..self.r_classes.len()).filter(|&x| self.r_classes[x] == c).collect()
    }
    pub fn l_class_of(&self, a: usize) -> Vec<usize> {
        let c = self.l_classes[a];
        (0..self.l_classes.len()).filter(|&x| self.l_classes[x] == c).collect()
    }
    pub fn d_class_count(&self) -> usize {
        self.d_classes.iter().copied().max().map_or(0, |m| m + 1)
    }
}

/// A subsemigroup together with its inclusion into the parent.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub semigroup: FiniteSemigroup,
    /// `embedding[i]` is the parent element corresponding to element `i`.
    pub embedding: Vec<usize>,
}

impl FiniteSemigroup {
    /// Build a semigroup from a row-major `order × order` table, checking range and associativity.
    pub fn from_table(order: usize, table: &[usize]) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptySemigroup);
        }
        if table.len() != order * order {
            return Err(Error::BadTableSize { got: table.len(), expected: order * order });
        }
        for (i, &v) in table.iter().enumerate() {
            if v >= order {
                return Err(Error::OutOfRange { row: i / order, col: i % order, value: v, order });
            }
        }
        let s = FiniteSemigroup {
            order,
            table: table.iter().map(|&v| v as u32).collect(),
            names: None,
            cache: Cache::default(),
        };
        if let Some((a, b, c)) = s.associativity_witness() {
            return Err(Error::NonAssociative(a, b, c));
        }
        Ok(s)
    }

    /// Table known to be associative by construction; only sizes are checked.
    pub(crate) fn from_table_trusted(order: usize, table: &[usize]) -> Self {
        assert!(order > 0 && table.len() == order * order && table.iter().all(|&v| v < order));
        FiniteSemigroup {
            order,
            table: table.iter().map(|&v| v as u32).collect(),
            names: None,
            cache: Cache::default(),
        }
    }

    /// Build a semigroup from a multiplication function.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b));
            }
        }
        Self::from_table(order, &table)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::Format(format!("{} names given for order {}", names.len(), self.order)));
        }
        self.names = Some(names);
        Ok(self)
    }

    fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    /// Product of a non-empty sequence of elements.
    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().reduce(|x, y| self.mul(x, y))
    }

    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|&v| v as usize).collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::NoSuchElement(a))
        }
    }

    #[inline]
    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> &ElementSubset {
        self.cache.idempotents.get_or_init(|| {
            ElementSubset::from_elements(self.order, self.elements().filter(|&e| self.is_idempotent(e)))
        })
    }

    /// `V(s) = {x : sxs = s, xsx = x}`.
    pub fn inverses_of(&self, s: usize) -> &ElementSubset {
        &self.all_inverses()[s]
    }

    fn all_inverses(&self) -> &Vec<ElementSubset> {
        self.cache.inverses.get_or_init(|| {
            self.elements()
                .map(|s| {
                    ElementSubset::from_elements(
                        self.order,
                        self.elements().filter(|&x| self.mul3(s, x, s) == s && self.mul3(x, s, x) == x),
                    )
                })
                .collect()
        })
    }

    /// Green's relations computed from principal one-sided ideals over `S¹`.
    pub fn green(&self) -> &GreenData {
        self.cache.green.get_or_init(|| self.compute_green())
    }

    fn compute_green(&self) -> GreenData {
        let n = self.order;
        let r_ideals: Vec<ElementSubset> = self
            .elements()
            .map(|a| {
                let mut s = ElementSubset::from_elements(n, self.elements().map(|x| self.mul(a, x)));
                s.insert(a);
                s
            })
            .collect();
        let l_ideals: Vec<ElementSubset> = self
            .elements()
            .map(|a| {
                let mut s = ElementSubset::from_elements(n, self.elements().map(|x| self.mul(x, a)));
                s.insert(a);
                s
            })
            .collect();
        let label = |ideals: &[ElementSubset]| -> Vec<usize> {
            let mut map: HashMap<&ElementSubset, usize> = HashMap::new();
            let raw: Vec<usize> = ideals
                .iter()
                .map(|i| {
                    let next = map.len();
                    *map.entry(i).or_insert(next)
                })
                .collect();
            normalize_classes(&raw)
        };
        let r_classes = label(&r_ideals);
        let l_classes = label(&l_ideals);
        let h_raw: Vec<usize> = (0..n).map(|a| r_classes[a] * n + l_classes[a]).collect();
        let h_classes = normalize_classes(&h_raw);
        let mut uf = UnionFind::<usize>::new(n);
        let mut r_rep = vec![usize::MAX; n];
        let mut l_rep = vec![usize::MAX; n];
        for a in 0..n {
            let (r, l) = (r_classes[a], l_classes[a]);
            if r_rep[r] == usize::MAX {
                r_rep[r] = a;
            } else {
                uf.union(a, r_rep[r]);
            }
            if l_rep[l] == usize::MAX {
                l_rep[l] = a;
            } else {
                uf.union(a, l_rep[l]);
            }
        }
        let d_raw: Vec<usize> = (0..n).map(|a| uf.find(a)).collect();
        GreenData { r_classes, l_classes, h_classes, d_classes: normalize_classes(&d_raw), r_ideals, l_ideals }
    }

    /// `a ≤ b` iff `a = eb = bf` for some idempotents `e`, `f`.
    pub fn natural_leq(&self, a: usize, b: usize) -> bool {
        let e = self.idempotents();
        e.iter().any(|e| self.mul(e, b) == a) && e.iter().any(|f| self.mul(b, f) == a)
    }

    /// `S(e,f) = {g ∈ E : ge = g = fg, egf = ef}`.
    pub fn sandwich_set(&self, e: usize, f: usize) -> Result<ElementSubset> {
        self.check_element(e)?;
        self.check_element(f)?;
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(Error::NotIdempotent(x));
            }
        }
        let ef = self.mul(e, f);
        Ok(ElementSubset::from_elements(
            self.order,
            self.idempotents()
                .iter()
                .filter(|&g| self.mul(g, e) == g && self.mul(f, g) == g && self.mul3(e, g, f) == ef),
        ))
    }

    /// The sandwich operation: the single member of `S(t*t, ss*)`, checked
    /// against every choice of `s* ∈ V(s)` and `t* ∈ V(t)`.
    pub fn wedge(&self, s: usize, t: usize) -> Result<usize> {
        self.check_element(s)?;
        self.check_element(t)?;
        let table = self.wedge_table()?;
        Ok(table[s * self.order + t] as usize)
    }

    /// The full table of the sandwich operation, computed once.
    pub fn wedge_table(&self) -> Result<&[u32]> {
        self.cache.wedge.get_or_init(|| self.compute_wedge_table()).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
    }

    fn compute_wedge_table(&self) -> Result<Vec<u32>> {
        if !self.is_locally_inverse() {
            return Err(Error::NotLocallyInverse);
        }
        let n = self.order;
        let mut sandwich_cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut out = vec![0u32; n * n];
        for s in 0..n {
            for t in 0..n {
                let mut value: Option<usize> = None;
                for ss in self.inverses_of(s).iter() {
                    for ts in self.inverses_of(t).iter() {
                        let (e, f) = (self.mul(ts, t), self.mul(s, ss));
                        let g = match sandwich_cache.get(&(e, f)) {
                            Some(&g) => g,
                            None => {
                                let set = self.sandwich_set(e, f)?;
                                if set.len() != 1 {
                                    return Err(Error::NonSingletonSandwich { e, f, size: set.len() });
                                }
                                let g = set.first().expect("singleton");
                                sandwich_cache.insert((e, f), g);
                                g
                            }
                        };
                        match value {
                            None => value = Some(g),
                            Some(v) if v != g => {
                                return Err(Error::UniquenessFailure(format!(
                                    "wedge({s},{t}) depends on the choice of inverses"
                                )))
                            }
                            _ => {}
                        }
                    }
                }
                out[s * n + t] = value.ok_or(Error::NotRegular)? as u32;
            }
        }
        Ok(out)
    }

    pub fn is_regular(&self) -> bool {
        self.elements().all(|s| !self.inverses_of(s).is_empty())
    }

    pub fn idempotents_commute(&self) -> bool {
        let e = self.idempotents().to_vec();
        e.iter().all(|&x| e.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_inverse(&self) -> bool {
        self.is_regular() && self.idempotents_commute()
    }

    pub fn is_completely_regular(&self) -> bool {
        let g = self.green();
        self.elements().all(|a| g.h_related(a, self.mul(a, a)))
    }

    pub fn is_completely_simple(&self) -> bool {
        self.is_completely_regular() && self.green().d_class_count() == 1
    }

    /// Regular with all sandwich sets singletons.
    pub fn is_locally_inverse(&self) -> bool {
        *self.cache.locally_inverse.get_or_init(|| {
            if !self.is_regular() {
                return false;
            }
            let e = self.idempotents().to_vec();
            e.iter().all(|&x| e.iter().all(|&y| self.sandwich_set(x, y).map(|s| s.len() == 1).unwrap_or(false)))
        })
    }

    /// Regular with every local submonoid `eSe` inverse.
    pub fn is_locally_inverse_via_local_submonoids(&self) -> bool {
        self.is_regular()
            && self
                .idempotents()
                .iter()
                .all(|e| self.local_submonoid(e).map(|m| m.semigroup.is_inverse()).unwrap_or(false))
    }

    /// The core (subsemigroup generated by the idempotents) is completely regular.
    pub fn is_e_solid(&self) -> bool {
        let core = self.generated_subsemigroup(&self.idempotents().to_vec());
        core.semigroup.is_completely_regular()
    }

    pub fn is_group(&self) -> bool {
        self.idempotents().len() == 1 && self.is_regular()
    }

    pub fn is_band(&self) -> bool {
        self.idempotents().len() == self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_semilattice(&self) -> bool {
        self.is_band() && self.is_commutative()
    }

    /// Orthodox: regular and the idempotents form a subsemigroup.
    pub fn is_orthodox(&self) -> bool {
        let e = self.idempotents();
        self.is_regular() && e.iter().all(|x| e.iter().all(|y| self.is_idempotent(self.mul(x, y))))
    }

    /// Identity element, if any.
    pub fn identity(&self) -> Option<usize> {
        self.elements().find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Subsemigroup on a subset closed under multiplication (closure is checked).
    pub fn induced(&self, elements: &[usize]) -> Result<Embedded> {
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(Error::EmptySemigroup);
        }
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in sorted.iter().enumerate() {
            self.check_element(e)?;
            index[e] = i;
        }
        let m = sorted.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &sorted {
            for &b in &sorted {
                let p = index[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::PreconditionViolated(format!(
                        "subset not closed: {a}*{b} = {}",
                        self.mul(a, b)
                    )));
                }
                table.push(p);
            }
        }
        let mut semigroup = FiniteSemigroup {
            order: m,
            table: table.into_iter().map(|v| v as u32).collect(),
            names: None,
            cache: Cache::default(),
        };
        if let Some(names) = &self.names {
            semigroup.names = Some(sorted.iter().map(|&e| names[e].clone()).collect());
        }
        Ok(Embedded { semigroup, embedding: sorted })
    }

    /// Closure of a non-empty seed under multiplication.
    pub fn generated_subsemigroup(&self, seed: &[usize]) -> Embedded {
        let mut member = ElementSubset::from_elements(self.order, seed.iter().copied());
        let mut frontier: Vec<usize> = member.to_vec();
        let mut all = frontier.clone();
        while let Some(x) = frontier.pop() {
            let snapshot = all.clone();
            for y in snapshot {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !member.contains(p) {
                        member.insert(p);
                        all.push(p);
                        frontier.push(p);
                    }
                }
            }
        }
        self.induced(&member.to_vec()).expect("closure of a non-empty seed is a subsemigroup")
    }

    /// The local submonoid `eSe`.
    pub fn local_submonoid(&self, e: usize) -> Result<Embedded> {
        self.check_element(e)?;
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent(e));
        }
        let elems: Vec<usize> = self.elements().map(|x| self.mul3(e, x, e)).collect();
        self.induced(&elems)
    }

    /// For `s ≤ t` and `b R t`, the unique `a R s` with `a ≤ b`.
    pub fn unique_below_in_r(&self, s: usize, t: usize, b: usize) -> Result<usize> {
        for x in [s, t, b] {
            self.check_element(x)?;
        }
        if !self.is_locally_inverse() {
            return Err(Error::NotLocallyInverse);
        }
        let g = self.green();
        if !self.natural_leq(s, t) {
            return Err(Error::PreconditionViolated(format!("{s} is not below {t}")));
        }
        if !g.r_related(b, t) {
            return Err(Error::PreconditionViolated(format!("{b} is not R-related to {t}")));
        }
        let found: Vec<usize> = g.r_class_of(s).into_iter().filter(|&a| self.natural_leq(a, b)).collect();
        match found.as_slice() {
            [a] => Ok(*a),
            _ => Err(Error::UniquenessFailure(format!("{} elements of R_{s} lie below {b}", found.len()))),
        }
    }

    /// Product semigroup numbered `a * |T| + b`.
    pub fn direct_product(&self, other: &FiniteSemigroup) -> FiniteSemigroup {
        let m = other.order;
        FiniteSemigroup::from_fn(self.order * m, |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
            .expect("direct product of semigroups is associative")
    }

    /// The semigroup with an identity adjoined as the new last element.
    pub fn with_identity_adjoined(&self) -> FiniteSemigroup {
        let n = self.order;
        FiniteSemigroup::from_fn(n + 1, |a, b| {
            if a == n {
                b
            } else if b == n {
                a
            } else {
                self.mul(a, b)
            }
        })
        .expect("adjoining an identity preserves associativity")
    }

    /// Whether `map` is a homomorphism from `self` into `target`.
    pub fn is_homomorphism(&self, target: &FiniteSemigroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&v| v < target.order)
            && self.elements().all(|a| self.elements().all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}
