//! The deterministic corpus of small semigroups used by the tests and the CLI.

use super::format::{write_semigroup_ref, CayleyFile};
use crate::congruence::{least_inverse_congruence, Congruence};
use crate::constructors::{
    find_isomorphism, named_small, rees_matrix, strong_semilattice, ReesMatrixSpec, StrongSemilatticeSpec,
};
use crate::error::Result;
use crate::lsdp::{enumerate_actions, lambda_sdp, Action};
use crate::semigroup::FiniteSemigroup;
use crate::semigroupoid::{DaggerPolicy, ExtensionContext};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub named: Vec<String>,
    pub rees_groups: Vec<String>,
    /// Largest `|I|` and `|Λ|` in the Rees matrix sweep.
    pub rees_max_index: usize,
    pub lsdp_pairs: Vec<(String, String)>,
    /// Products kept per `(K, T)` pair, largest first.
    pub lsdp_actions_per_pair: usize,
    pub search_budget: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        CorpusConfig {
            named: s(&[
                "trivial", "Z2", "Z3", "Z4", "S3", "chain2", "chain3", "diamond", "B2", "I2", "L2", "R2", "rect2x2",
                "rect2x3", "null2", "B(Z2,2)", "B(Z3,2)",
            ]),
            rees_groups: s(&["Z2", "Z3", "S3"]),
            rees_max_index: 2,
            lsdp_pairs: [
                ("rect2x2", "chain2"),
                ("rect2x2", "B2"),
                ("Z2", "B2"),
                ("L2", "B2"),
                ("R2", "Z2"),
                ("rect2x2", "Z2"),
                ("M(Z2;2,2;0001)", "chain2"),
                ("M(Z2;2,2;0001)", "Z2"),
            ]
            .iter()
            .map(|(k, t)| (k.to_string(), t.to_string()))
            .collect(),
            lsdp_actions_per_pair: 3,
            search_budget: 2_000_000,
        }
    }
}

/// A corpus member. `theta` is the second-projection congruence of a λ-semidirect product.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: String,
    pub semigroup: FiniteSemigroup,
    pub theta: Option<Congruence>,
}

impl CorpusEntry {
    pub fn cayley(&self) -> CayleyFile {
        CayleyFile { kind: self.kind.clone(), semigroup: self.semigroup.clone() }
    }
}

/// Sandwich matrices with first row and column at the identity, one per isomorphism class.
fn rees_sweep(group: &str, max_index: usize) -> Result<Vec<(String, FiniteSemigroup)>> {
    let g = named_small(group)?;
    let e = g.identity().expect("groups have an identity");
    let mut out: Vec<(String, FiniteSemigroup)> = Vec::new();
    for i_size in 1..=max_index {
        for lambda_size in 1..=max_index {
            let free = (i_size - 1) * (lambda_size - 1);
            let mut seen: Vec<FiniteSemigroup> = Vec::new();
            for code in 0..g.order().pow(free as u32) {
                let mut c = code;
                let p: Vec<Vec<usize>> = (0..lambda_size)
                    .map(|l| {
                        (0..i_size)
                            .map(|i| {
                                if l == 0 || i == 0 {
                                    e
                                } else {
                                    let v = c % g.order();
                                    c /= g.order();
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                let spec = ReesMatrixSpec { group: g.clone(), i_size, lambda_size, p: p.clone() };
                let s = rees_matrix(&spec)?;
                if seen.iter().any(|t| find_isomorphism(t, &s).is_some()) {
                    continue;
                }
                seen.push(s.clone());
                let flat: Vec<String> = p.iter().flatten().map(|x| x.to_string()).collect();
                out.push((format!("M({group};{i_size},{lambda_size};{})", flat.join("")), s));
            }
        }
    }
    Ok(out)
}

fn sslat_examples() -> Result<Vec<(String, FiniteSemigroup)>> {
    let chain2 = named_small("chain2")?;
    let mut out = Vec::new();
    // Clifford: Z2 above Z2 with the identity map
    let z2 = named_small("Z2")?;
    let spec = StrongSemilatticeSpec {
        y: chain2.clone(),
        components: vec![z2.clone(), z2.clone()],
        homs: [((0, 1), vec![0, 1])].into_iter().collect(),
    };
    out.push(("sslat[Z2>Z2]".to_string(), strong_semilattice(&spec)?));
    // Z3 above the trivial group
    let spec = StrongSemilatticeSpec {
        y: chain2.clone(),
        components: vec![named_small("Z3")?, named_small("trivial")?],
        homs: [((0, 1), vec![0, 0, 0])].into_iter().collect(),
    };
    out.push(("sslat[Z3>1]".to_string(), strong_semilattice(&spec)?));
    // a rectangular band above a left zero band
    let spec = StrongSemilatticeSpec {
        y: chain2,
        components: vec![named_small("rect2x2")?, named_small("L2")?],
        homs: [((0, 1), vec![0, 0, 1, 1])].into_iter().collect(),
    };
    out.push(("sslat[rect2x2>L2]".to_string(), strong_semilattice(&spec)?));
    Ok(out)
}

/// Build the corpus. The result is deterministic for a given configuration.
pub fn corpus(cfg: &CorpusConfig) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let plain = |name: String, kind: &str, semigroup| CorpusEntry { name, kind: kind.into(), semigroup, theta: None };
    for n in &cfg.named {
        out.push(plain(n.clone(), "named", named_small(n)?));
    }
    for g in &cfg.rees_groups {
        for (name, s) in rees_sweep(g, cfg.rees_max_index)? {
            out.push(plain(name, "rees", s));
        }
    }
    for (name, s) in sslat_examples()? {
        out.push(plain(name, "sslat", s));
    }
    for (k, t) in &cfg.lsdp_pairs {
        let ks = match out.iter().find(|e: &&CorpusEntry| &e.name == k) {
            Some(e) => e.semigroup.clone(),
            None => named_small(k)?,
        };
        let ts = named_small(t)?;
        let mut products = Vec::new();
        for a in enumerate_actions(&ks, &ts, None, cfg.search_budget)? {
            let p = lambda_sdp(&a)?;
            if !products.iter().any(|q: &crate::lsdp::LambdaProduct| q.semigroup == p.semigroup) {
                products.push(p);
            }
        }
        // the largest products first, ties in enumeration order
        products.sort_by_key(|p| std::cmp::Reverse(p.semigroup.order()));
        for (i, p) in products.into_iter().take(cfg.lsdp_actions_per_pair).enumerate() {
            out.push(CorpusEntry {
                name: format!("lsdp[{k}x{t}#{i}]"),
                kind: "lsdp".into(),
                theta: Some(p.theta2()),
                semigroup: p.semigroup,
            });
        }
    }
    Ok(out)
}

/// A file-system-safe version of an instance name.
pub fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

/// Write each member as `<stem>.cayley` plus an `index.txt` listing name, kind and file.
pub fn write_corpus(entries: &[CorpusEntry], dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)?;
    let mut index = String::from("# name kind file\n");
    let mut files = Vec::new();
    for e in entries {
        let file = format!("{}.cayley", file_stem(&e.name));
        std::fs::write(dir.join(&file), e.cayley().write())?;
        index.push_str(&format!("{} {} {}\n", e.name, e.kind, file));
        files.push(file);
    }
    std::fs::write(dir.join("index.txt"), index)?;
    Ok(files)
}

/// An extension context drawn from the corpus.
#[derive(Clone, Debug)]
pub struct NamedContext {
    pub name: String,
    pub ctx: ExtensionContext,
}

/// Every E-solid locally inverse member of order at most `max_order`, paired with each of
/// its least inverse congruence, the identity (for inverse members), the `H` relation (when
/// it is a congruence over completely simple semigroups) and the second-projection
/// congruence of λ-semidirect products. Duplicate pairs are dropped.
pub fn corpus_contexts(entries: &[CorpusEntry], max_order: usize, policy: DaggerPolicy) -> Vec<NamedContext> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for e in entries {
        let s = &e.semigroup;
        if s.order() > max_order || !s.is_regular() || !s.is_e_solid() || !s.is_locally_inverse() {
            continue;
        }
        let mut rhos: Vec<(&str, Congruence)> = Vec::new();
        if let Ok(r) = least_inverse_congruence(s) {
            rhos.push(("least-inv", r));
        }
        if s.is_inverse() {
            rhos.push(("identity", Congruence::identity(s.order())));
        }
        if let Ok(h) = Congruence::from_labels(s, &s.green().h_classes.clone()) {
            rhos.push(("H", h));
        }
        if let Some(t) = &e.theta {
            rhos.push(("theta2", t.clone()));
        }
        let mut merged: BTreeMap<Vec<usize>, (Vec<&str>, Congruence)> = BTreeMap::new();
        let mut order = Vec::new();
        for (tag, rho) in rhos {
            let key = rho.labels().to_vec();
            if !merged.contains_key(&key) {
                order.push(key.clone());
            }
            merged.entry(key).or_insert_with(|| (Vec::new(), rho)).0.push(tag);
        }
        for key in order {
            let (tags, rho) = merged.remove(&key).expect("present");
            if !seen.insert((write_semigroup_ref(s), key)) {
                continue;
            }
            if let Ok(ctx) = ExtensionContext::build(s.clone(), rho, policy) {
                out.push(NamedContext { name: format!("{}/{}", e.name, tags.join("+")), ctx });
            }
        }
    }
    out
}

/// The action of `B2` on the 2×2 rectangular band with the largest λ-semidirect product,
/// the default instance of `embed-verify`.
pub fn bundled_action() -> Result<Action> {
    let k = named_small("rect2x2")?;
    let t = named_small("B2")?;
    let mut best: Option<(usize, Action)> = None;
    for a in enumerate_actions(&k, &t, None, CorpusConfig::default().search_budget)? {
        let n = lambda_sdp(&a)?.semigroup.order();
        if best.as_ref().is_none_or(|(m, _)| n > *m) {
            best = Some((n, a));
        }
    }
    Ok(best.expect("the trivial action exists").1)
}
