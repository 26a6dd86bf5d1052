//! Homomorphism search between finite semigroups by backtracking over generator images.

use crate::constructors::generating_set;
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use rayon::prelude::*;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Extend an assignment of generator images to the subsemigroup they generate.
/// Returns `None` on a conflict. Unreached elements stay `usize::MAX`.
pub fn extend_from_generators(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; s.order()];
    let mut stack = Vec::new();
    for (&g, &img) in gens.iter().zip(images) {
        if map[g] == usize::MAX {
            map[g] = img;
            stack.push(g);
        } else if map[g] != img {
            return None;
        }
    }
    while let Some(x) = stack.pop() {
        for (&g, _) in gens.iter().zip(images) {
            let pairs = [(s.mul(x, g), t.mul(map[x], map[g])), (s.mul(g, x), t.mul(map[g], map[x]))];
            for (p, q) in pairs {
                if map[p] == usize::MAX {
                    map[p] = q;
                    stack.push(p);
                } else if map[p] != q {
                    return None;
                }
            }
        }
    }
    Some(map)
}

/// All homomorphisms `s → t`, sorted lexicographically. At most `limit` are returned;
/// `budget` bounds the number of search nodes.
pub fn all_homomorphisms(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    limit: Option<usize>,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let gens = generating_set(s);
    let nodes = AtomicUsize::new(0);
    let results: Vec<Result<Vec<Vec<usize>>>> = (0..t.order())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut images = vec![first];
            search(s, t, &gens, &mut images, &nodes, budget, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    all.sort();
    all.dedup();
    if let Some(l) = limit {
        all.truncate(l);
    }
    Ok(all)
}

fn search(
    s: &FiniteSemigroup,
    t: &FiniteSemigroup,
    gens: &[usize],
    images: &mut Vec<usize>,
    nodes: &AtomicUsize,
    budget: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(Error::SearchBudgetExceeded);
    }
    let k = images.len();
    let Some(map) = extend_from_generators(s, t, &gens[..k], images) else {
        return Ok(());
    };
    if k == gens.len() {
        debug_assert!(map.iter().all(|&v| v != usize::MAX));
        if s.is_homomorphism(t, &map) {
            out.push(map);
        }
        return Ok(());
    }
    let g = gens[k];
    if map[g] != usize::MAX {
        images.push(map[g]);
        search(s, t, gens, images, nodes, budget, out)?;
        images.pop();
        return Ok(());
    }
    for c in 0..t.order() {
        images.push(c);
        search(s, t, gens, images, nodes, budget, out)?;
        images.pop();
    }
    Ok(())
}

/// The endomorphism monoid of `k` under composition `(φψ)(a) = φ(ψ(a))`,
/// together with the list of maps indexed like its elements.
pub fn endomorphism_monoid(k: &FiniteSemigroup, budget: usize) -> Result<(FiniteSemigroup, Vec<Vec<usize>>)> {
    let maps = all_homomorphisms(k, k, None, budget)?;
    let index: std::collections::HashMap<&Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for phi in &maps {
        for psi in &maps {
            let comp: Vec<usize> = psi.iter().map(|&x| phi[x]).collect();
            table.push(index[&comp]);
        }
    }
    let m = FiniteSemigroup::from_table_trusted(n, &table);
    Ok((m, maps))
}
