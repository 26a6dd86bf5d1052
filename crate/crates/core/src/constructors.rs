//! Standard constructions: Rees matrix semigroups, strong semilattices,
//! named small semigroups and an isomorphism search.

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use std::collections::BTreeMap;

/// Data for `M(G; I, Λ; P)`. `p[λ][i]` is the sandwich matrix entry `p_{λi}`.
#[derive(Clone, Debug)]
pub struct ReesMatrixSpec {
    pub group: FiniteSemigroup,
    pub i_size: usize,
    pub lambda_size: usize,
    pub p: Vec<Vec<usize>>,
}

/// Build `M(G; I, Λ; P)` with elements `(i, g, λ)` numbered lexicographically.
pub fn rees_matrix(spec: &ReesMatrixSpec) -> Result<FiniteSemigroup> {
    let g = &spec.group;
    if !g.is_group() {
        return Err(Error::NotAGroup);
    }
    if spec.i_size == 0 || spec.lambda_size == 0 {
        return Err(Error::PreconditionViolated("empty index set".into()));
    }
    if spec.p.len() != spec.lambda_size
        || spec.p.iter().any(|row| row.len() != spec.i_size || row.iter().any(|&x| x >= g.order()))
    {
        return Err(Error::PreconditionViolated("sandwich matrix has the wrong shape or entries".into()));
    }
    let (gn, ln) = (g.order(), spec.lambda_size);
    let enc = |i: usize, x: usize, l: usize| (i * gn + x) * ln + l;
    let dec = |a: usize| (a / (gn * ln), (a / ln) % gn, a % ln);
    let n = spec.i_size * gn * ln;
    let s = FiniteSemigroup::from_fn(n, |a, b| {
        let (i, x, l) = dec(a);
        let (j, y, m) = dec(b);
        enc(i, g.mul(g.mul(x, spec.p[l][j]), y), m)
    })?;
    let names = (0..n)
        .map(|a| {
            let (i, x, l) = dec(a);
            format!("({},{},{})", i, g.name(x), l)
        })
        .collect();
    s.with_names(names)
}

/// A strong semilattice `[Y; S_e; φ_{e,f}]`. `homs[(e, f)]` for `e ≥ f` maps
/// component `e` into component `f`; identity maps on the diagonal may be omitted.
#[derive(Clone, Debug)]
pub struct StrongSemilatticeSpec {
    pub y: FiniteSemigroup,
    pub components: Vec<FiniteSemigroup>,
    pub homs: BTreeMap<(usize, usize), Vec<usize>>,
}

impl StrongSemilatticeSpec {
    fn hom(&self, e: usize, f: usize) -> Option<Vec<usize>> {
        match self.homs.get(&(e, f)) {
            Some(h) => Some(h.clone()),
            None if e == f => Some((0..self.components[e].order()).collect()),
            None => None,
        }
    }
}

/// The strong semilattice on the disjoint union of the components, ordered by `Y`.
pub fn strong_semilattice(spec: &StrongSemilatticeSpec) -> Result<FiniteSemigroup> {
    let y = &spec.y;
    if !y.is_semilattice() {
        return Err(Error::NotASemilattice);
    }
    if spec.components.len() != y.order() {
        return Err(Error::PreconditionViolated(format!(
            "{} components for a semilattice of order {}",
            spec.components.len(),
            y.order()
        )));
    }
    let below = |e: usize, f: usize| y.mul(e, f) == f;
    let mut hom = BTreeMap::new();
    for e in y.elements() {
        for f in y.elements().filter(|&f| below(e, f)) {
            let h = spec.hom(e, f).ok_or_else(|| Error::IncompatibleHoms(format!("missing map {e} -> {f}")))?;
            if !spec.components[e].is_homomorphism(&spec.components[f], &h) {
                return Err(Error::IncompatibleHoms(format!("map {e} -> {f} is not a homomorphism")));
            }
            if e == f && h.iter().enumerate().any(|(i, &v)| i != v) {
                return Err(Error::IncompatibleHoms(format!("map {e} -> {e} is not the identity")));
            }
            hom.insert((e, f), h);
        }
    }
    for (&(e, f), h1) in &hom {
        for g in y.elements().filter(|&g| below(f, g)) {
            let h2 = &hom[&(f, g)];
            let h3 = &hom[&(e, g)];
            if let Some(a) = (0..h1.len()).find(|&a| h2[h1[a]] != h3[a]) {
                return Err(Error::IncompatibleHoms(format!(
                    "composite {e} -> {f} -> {g} differs from {e} -> {g} at {a}"
                )));
            }
        }
    }
    let mut offset = Vec::with_capacity(y.order());
    let mut owner = Vec::new();
    for (e, c) in spec.components.iter().enumerate() {
        offset.push(owner.len());
        owner.extend((0..c.order()).map(|a| (e, a)));
    }
    let s = FiniteSemigroup::from_fn(owner.len(), |a, b| {
        let ((e, x), (f, z)) = (owner[a], owner[b]);
        let m = y.mul(e, f);
        let xi = hom[&(e, m)][x];
        let zi = hom[&(f, m)][z];
        offset[m] + spec.components[m].mul(xi, zi)
    })?;
    let names = owner.iter().map(|&(e, a)| format!("{}:{}", y.name(e), spec.components[e].name(a))).collect();
    s.with_names(names)
}

/// Symmetric group on three points, elements in lexicographic order of their images.
fn symmetric3() -> FiniteSemigroup {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    FiniteSemigroup::from_fn(6, |a, b| {
        let (p, q) = (perms[a], perms[b]);
        idx([q[p[0]], q[p[1]], q[p[2]]])
    })
    .expect("S3 is associative")
}

/// Partial injections of `{0,1}` composed left to right.
fn symmetric_inverse_monoid2() -> FiniteSemigroup {
    let none = usize::MAX;
    let maps: Vec<[usize; 2]> = vec![[0, 1], [1, 0], [0, none], [1, none], [none, 0], [none, 1], [none, none]];
    let idx = |m: [usize; 2]| maps.iter().position(|q| *q == m).expect("partial injection");
    let s = FiniteSemigroup::from_fn(7, |a, b| {
        let (f, g) = (maps[a], maps[b]);
        let ap = |x: usize| if x == none { none } else { g[x] };
        idx([ap(f[0]), ap(f[1])])
    })
    .expect("I2 is associative");
    s.with_names(["id", "swap", "0>0", "0>1", "1>0", "1>1", "empty"].iter().map(|s| s.to_string()).collect())
        .expect("seven names")
}

/// Brandt semigroup `B(G, n)`: triples `(i, g, j)` and a zero (last element).
pub fn brandt(group: &FiniteSemigroup, n: usize) -> Result<FiniteSemigroup> {
    if !group.is_group() {
        return Err(Error::NotAGroup);
    }
    let gn = group.order();
    let zero = n * n * gn;
    let s = FiniteSemigroup::from_fn(zero + 1, |a, b| {
        if a == zero || b == zero {
            return zero;
        }
        let (i, x, j) = (a / (gn * n), (a / n) % gn, a % n);
        let (k, y, l) = (b / (gn * n), (b / n) % gn, b % n);
        if j != k {
            zero
        } else {
            (i * gn + group.mul(x, y)) * n + l
        }
    })?;
    let mut names: Vec<String> =
        (0..zero).map(|a| format!("({},{},{})", a / (gn * n), group.name((a / n) % gn), a % n)).collect();
    names.push("0".into());
    s.with_names(names)
}

fn parse_count(rest: &str, name: &str) -> Result<usize> {
    rest.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| Error::UnknownKind(name.to_string()))
}

/// Small named semigroups. Recognized names: `Zn` (cyclic group), `S3`,
/// `chainN` (semilattice chain, element 0 on top), `diamond`, `B2`, `I2`,
/// `Ln` / `Rn` (left/right zero), `rectIxJ`, `nullN`, `trivial`,
/// and `B(G,n)` for a Brandt semigroup over a named group.
pub fn named_small(name: &str) -> Result<FiniteSemigroup> {
    let unknown = || Error::UnknownKind(name.to_string());
    let s = match name {
        "trivial" => FiniteSemigroup::from_fn(1, |_, _| 0)?,
        "S3" => symmetric3(),
        "I2" => symmetric_inverse_monoid2(),
        "B2" => brandt(&named_small("trivial")?, 2)?,
        "diamond" => {
            // 0 top, 1 and 2 incomparable, 3 bottom
            FiniteSemigroup::from_fn(4, |a, b| match (a, b) {
                (0, x) | (x, 0) => x,
                (x, y) if x == y => x,
                _ => 3,
            })?
        }
        _ if name.starts_with("B(") && name.ends_with(')') => {
            let inner = &name[2..name.len() - 1];
            let (g, n) = inner.rsplit_once(',').ok_or_else(unknown)?;
            brandt(&named_small(g.trim())?, parse_count(n.trim(), name)?)?
        }
        _ if name.starts_with("chain") => {
            let n = parse_count(&name[5..], name)?;
            FiniteSemigroup::from_fn(n, |a, b| a.max(b))?
        }
        _ if name.starts_with("null") => {
            let n = parse_count(&name[4..], name)?;
            FiniteSemigroup::from_fn(n, |_, _| 0)?
        }
        _ if name.starts_with("rect") => {
            let (i, l) = name[4..].split_once('x').ok_or_else(unknown)?;
            let (i, l) = (parse_count(i, name)?, parse_count(l, name)?);
            FiniteSemigroup::from_fn(i * l, |a, b| (a / l) * l + b % l)?
        }
        _ if name.starts_with('Z') => {
            let n = parse_count(&name[1..], name)?;
            FiniteSemigroup::from_fn(n, |a, b| (a + b) % n)?
        }
        _ if name.starts_with('L') => {
            let n = parse_count(&name[1..], name)?;
            FiniteSemigroup::from_fn(n, |a, _| a)?
        }
        _ if name.starts_with('R') => {
            let n = parse_count(&name[1..], name)?;
            FiniteSemigroup::from_fn(n, |_, b| b)?
        }
        _ => return Err(unknown()),
    };
    Ok(s)
}

/// Per-element data preserved by isomorphisms, used to prune the search.
fn element_profile(s: &FiniteSemigroup) -> Vec<(bool, usize, usize, usize, usize)> {
    let g = s.green();
    let r_size: Vec<usize> = s.elements().map(|a| g.r_class_of(a).len()).collect();
    let l_size: Vec<usize> = s.elements().map(|a| g.l_class_of(a).len()).collect();
    s.elements()
        .map(|a| {
            let mut seen = vec![a];
            let mut x = a;
            loop {
                x = s.mul(x, a);
                if seen.contains(&x) {
                    break;
                }
                seen.push(x);
            }
            (s.is_idempotent(a), seen.len(), r_size[a], l_size[a], s.elements().filter(|&b| s.mul(a, b) == a).count())
        })
        .collect()
}

/// A small generating set, chosen greedily.
pub fn generating_set(s: &FiniteSemigroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut covered = crate::ElementSubset::empty(s.order());
    // Prefer elements that are not products of others.
    let mut order: Vec<usize> = s.elements().collect();
    let decomposable: Vec<bool> = s
        .elements()
        .map(|c| s.elements().any(|a| s.elements().any(|b| s.mul(a, b) == c && a != c && b != c)))
        .collect();
    order.sort_by_key(|&a| decomposable[a]);
    for a in order {
        if !covered.contains(a) {
            gens.push(a);
            let sub = s.generated_subsemigroup(&gens);
            covered = crate::ElementSubset::from_elements(s.order(), sub.embedding);
        }
    }
    gens
}

/// Find an isomorphism `S → T` by backtracking over generator images.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Option<Vec<usize>> {
    if s.order() != t.order() {
        return None;
    }
    let ps = element_profile(s);
    let pt = element_profile(t);
    let mut a = ps.clone();
    let mut b = pt.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let gens = generating_set(s);
    let n = s.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        gens: &[usize],
        map: &mut [usize],
        used: &mut [bool],
    ) -> Option<Vec<(usize, usize)>> {
        // Close the current partial map under right multiplication by assigned generators.
        let mut added = Vec::new();
        let assigned: Vec<usize> = gens.iter().copied().filter(|&g| map[g] != usize::MAX).collect();
        let mut stack: Vec<usize> = (0..s.order()).filter(|&x| map[x] != usize::MAX).collect();
        while let Some(x) = stack.pop() {
            for &g in &assigned {
                for (p, q) in [(s.mul(x, g), t.mul(map[x], map[g])), (s.mul(g, x), t.mul(map[g], map[x]))] {
                    if map[p] == usize::MAX {
                        if used[q] {
                            for (k, v) in added {
                                map[k] = usize::MAX;
                                used[v] = false;
                            }
                            return None;
                        }
                        map[p] = q;
                        used[q] = true;
                        added.push((p, q));
                        stack.push(p);
                    } else if map[p] != q {
                        for (k, v) in added {
                            map[k] = usize::MAX;
                            used[v] = false;
                        }
                        return None;
                    }
                }
            }
        }
        Some(added)
    }
    fn search(
        s: &FiniteSemigroup,
        t: &FiniteSemigroup,
        gens: &[usize],
        k: usize,
        ps: &[(bool, usize, usize, usize, usize)],
        pt: &[(bool, usize, usize, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == gens.len() {
            return map.iter().all(|&v| v != usize::MAX) && s.is_homomorphism(t, map);
        }
        let g = gens[k];
        if map[g] != usize::MAX {
            return search(s, t, gens, k + 1, ps, pt, map, used);
        }
        for c in 0..t.order() {
            if used[c] || ps[g] != pt[c] {
                continue;
            }
            map[g] = c;
            used[c] = true;
            if let Some(added) = extend(s, t, &gens[..=k], map, used) {
                if search(s, t, gens, k + 1, ps, pt, map, used) {
                    return true;
                }
                for (p, q) in added {
                    map[p] = usize::MAX;
                    used[q] = false;
                }
            }
            map[g] = usize::MAX;
            used[c] = false;
        }
        false
    }
    if search(s, t, &gens, 0, &ps, &pt, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}
