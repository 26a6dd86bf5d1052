//! λ-semidirect products `K ⋊_λ T` of a semigroup `K` by an inverse semigroup `T`
//! acting on the left by endomorphisms.

use crate::congruence::{is_congruence_over_cs, kernel, quotient, Congruence};
use crate::constructors::{find_isomorphism, strong_semilattice, StrongSemilatticeSpec};
use crate::error::{Error, Result};
use crate::hom::{all_homomorphisms, endomorphism_monoid};
use crate::semigroup::FiniteSemigroup;
use crate::subset::ElementSubset;
use serde::Serialize;
use std::collections::BTreeMap;

/// A left action: `eps[t][a]` is `ᵗa`.
#[derive(Clone, Debug)]
pub struct Action {
    pub t: FiniteSemigroup,
    pub k: FiniteSemigroup,
    pub eps: Vec<Vec<usize>>,
}

/// Why a candidate action is not one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionViolation {
    Shape(String),
    /// `ᵗ(ab) ≠ ᵗa ᵗb`.
    NotEndomorphism {
        t: usize,
        a: usize,
        b: usize,
    },
    /// `ᵗ(ᵘa) ≠ ᵗᵘa`.
    LawFails {
        t: usize,
        u: usize,
        a: usize,
    },
}

impl std::fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ActionViolation::Shape(s) => write!(f, "{s}"),
            ActionViolation::NotEndomorphism { t, a, b } => {
                write!(f, "map of {t} is not an endomorphism at ({a},{b})")
            }
            ActionViolation::LawFails { t, u, a } => {
                write!(f, "action law fails for t={t}, u={u} at {a}")
            }
        }
    }
}

/// Check the endomorphism and composition laws, returning the first violation.
pub fn check_action(action: &Action) -> std::result::Result<(), ActionViolation> {
    let (t, k) = (&action.t, &action.k);
    if action.eps.len() != t.order() {
        return Err(ActionViolation::Shape(format!("{} maps for |T| = {}", action.eps.len(), t.order())));
    }
    for (i, m) in action.eps.iter().enumerate() {
        if m.len() != k.order() || m.iter().any(|&x| x >= k.order()) {
            return Err(ActionViolation::Shape(format!("map of {i} has the wrong shape")));
        }
    }
    for (ti, m) in action.eps.iter().enumerate() {
        for a in k.elements() {
            for b in k.elements() {
                if m[k.mul(a, b)] != k.mul(m[a], m[b]) {
                    return Err(ActionViolation::NotEndomorphism { t: ti, a, b });
                }
            }
        }
    }
    for tt in t.elements() {
        for u in t.elements() {
            let tu = t.mul(tt, u);
            for a in k.elements() {
                if action.eps[tt][action.eps[u][a]] != action.eps[tu][a] {
                    return Err(ActionViolation::LawFails { t: tt, u, a });
                }
            }
        }
    }
    Ok(())
}

/// The λ-semidirect product with its carrier listed in `(t, a)` order.
#[derive(Clone, Debug)]
pub struct LambdaProduct {
    pub action: Action,
    pub semigroup: FiniteSemigroup,
    /// `carrier[i] = (a, t)`.
    pub carrier: Vec<(usize, usize)>,
    index: Vec<usize>,
    t_inverse: Vec<usize>,
}

impl LambdaProduct {
    pub fn element(&self, a: usize, t: usize) -> Option<usize> {
        let i = self.index[t * self.action.k.order() + a];
        (i != usize::MAX).then_some(i)
    }

    pub fn t_inverse(&self, t: usize) -> usize {
        self.t_inverse[t]
    }

    /// The second projection as an element map onto `T`.
    pub fn pi2(&self) -> Vec<usize> {
        self.carrier.iter().map(|&(_, t)| t).collect()
    }

    /// The congruence induced by the second projection.
    pub fn theta2(&self) -> Congruence {
        Congruence::induced_by_map(&self.semigroup, &self.pi2()).expect("the second projection is a homomorphism")
    }
}

fn unique_inverses(t: &FiniteSemigroup) -> Result<Vec<usize>> {
    if !t.is_inverse() {
        return Err(Error::ActionInvalid("acting semigroup is not inverse".into()));
    }
    Ok(t.elements().map(|x| t.inverses_of(x).first().expect("regular")).collect())
}

/// Build `K ⋊_λ T` on `{(a,t) : ᵗᵗ⁻¹a = a}` with
/// `(a,t)(b,u) = (⁽ᵗᵘ⁾⁽ᵗᵘ⁾⁻¹a · ᵗb, tu)`.
pub fn lambda_sdp(action: &Action) -> Result<LambdaProduct> {
    check_action(action).map_err(|v| Error::ActionInvalid(v.to_string()))?;
    let (t, k, eps) = (&action.t, &action.k, &action.eps);
    let inv = unique_inverses(t)?;
    let kn = k.order();
    let mut carrier = Vec::new();
    let mut index = vec![usize::MAX; t.order() * kn];
    for tt in t.elements() {
        let e = t.mul(tt, inv[tt]);
        for a in k.elements() {
            if eps[e][a] == a {
                index[tt * kn + a] = carrier.len();
                carrier.push((a, tt));
            }
        }
    }
    let sg = FiniteSemigroup::from_fn(carrier.len(), |x, y| {
        let ((a, tt), (b, u)) = (carrier[x], carrier[y]);
        let tu = t.mul(tt, u);
        let e = t.mul(tu, inv[tu]);
        let first = k.mul(eps[e][a], eps[tt][b]);
        index[tu * kn + first]
    })?;
    let names = carrier.iter().map(|&(a, tt)| format!("({},{})", k.name(a), t.name(tt))).collect();
    Ok(LambdaProduct { action: action.clone(), semigroup: sg.with_names(names)?, carrier, index, t_inverse: inv })
}

/// Outcome of checking the structure theorem for a λ-semidirect product.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LsdtulReport {
    pub e_solid_locally_inverse: bool,
    pub idempotent_formula: bool,
    pub inverse_formula: bool,
    pub projection_over_cs: bool,
    pub kernel_strong_semilattice: bool,
    pub failures: Vec<String>,
}

impl LsdtulReport {
    pub fn all_pass(&self) -> bool {
        self.e_solid_locally_inverse
            && self.idempotent_formula
            && self.inverse_formula
            && self.projection_over_cs
            && self.kernel_strong_semilattice
    }
}

/// Check all five clauses, each against a brute-force computation.
pub fn verify_lsdtul(p: &LambdaProduct) -> Result<LsdtulReport> {
    let (t, k, eps) = (&p.action.t, &p.action.k, &p.action.eps);
    if !k.is_completely_simple() {
        return Err(Error::PreconditionViolated("the acted-upon semigroup is not completely simple".into()));
    }
    let s = &p.semigroup;
    let mut r = LsdtulReport::default();

    r.e_solid_locally_inverse = s.is_e_solid() && s.is_locally_inverse();
    if !r.e_solid_locally_inverse {
        r.failures.push("product is not E-solid and locally inverse".into());
    }

    let formula_e = ElementSubset::from_elements(
        s.order(),
        p.carrier
            .iter()
            .enumerate()
            .filter(|&(_, &(a, i))| k.is_idempotent(a) && t.is_idempotent(i) && eps[i][a] == a)
            .map(|(x, _)| x),
    );
    r.idempotent_formula = &formula_e == s.idempotents();
    if !r.idempotent_formula {
        r.failures.push(format!("idempotents {:?} differ from formula {:?}", s.idempotents(), formula_e));
    }

    r.inverse_formula = true;
    for (x, &(a, tt)) in p.carrier.iter().enumerate() {
        let ti = p.t_inverse(tt);
        let tit = t.mul(ti, tt);
        let expected = ElementSubset::from_elements(
            s.order(),
            k.inverses_of(eps[ti][a])
                .iter()
                .filter(|&b| eps[tit][b] == b)
                .map(|b| p.element(b, ti).expect("formula inverse lies in the carrier")),
        );
        if &expected != s.inverses_of(x) {
            r.inverse_formula = false;
            r.failures.push(format!("inverses of {} differ from formula", s.name(x)));
            break;
        }
    }

    let pi2 = p.pi2();
    let surjective = t.elements().all(|u| pi2.contains(&u));
    let theta2 = p.theta2();
    r.projection_over_cs = surjective && s.is_homomorphism(t, &pi2) && is_congruence_over_cs(s, &theta2);
    if !r.projection_over_cs {
        r.failures.push("second projection congruence is not over completely simple semigroups".into());
    }

    match kernel_clause(p, &theta2) {
        Ok(()) => r.kernel_strong_semilattice = true,
        Err(e) => r.failures.push(format!("kernel clause: {e}")),
    }
    Ok(r)
}

/// The kernel of the projection congruence, mapped explicitly onto the strong
/// semilattice of the fixpoint sets `K_e = {a : ᵉa = a}`.
fn kernel_clause(p: &LambdaProduct, theta2: &Congruence) -> Result<()> {
    let (t, k, eps) = (&p.action.t, &p.action.k, &p.action.eps);
    let s = &p.semigroup;
    let ker = kernel(s, theta2)?;
    let formula = ElementSubset::from_elements(
        s.order(),
        p.carrier.iter().enumerate().filter(|&(_, &(a, e))| t.is_idempotent(e) && eps[e][a] == a).map(|(x, _)| x),
    );
    if ker != formula {
        return Err(Error::PreconditionViolated(format!("kernel {ker:?} differs from formula {formula:?}")));
    }
    let ker_sub = s.induced(&ker.to_vec())?;
    let y = t.induced(&t.idempotents().to_vec())?;
    let mut comps = Vec::new();
    let mut comp_index: Vec<Vec<usize>> = Vec::new();
    for &e in &y.embedding {
        let fixed: Vec<usize> = k.elements().filter(|&a| eps[e][a] == a).collect();
        let sub = k.induced(&fixed)?;
        let mut idx = vec![usize::MAX; k.order()];
        for (i, &a) in sub.embedding.iter().enumerate() {
            idx[a] = i;
        }
        comp_index.push(idx);
        comps.push(sub);
    }
    let mut homs = BTreeMap::new();
    for (ei, &e) in y.embedding.iter().enumerate() {
        for (fi, &f) in y.embedding.iter().enumerate() {
            if t.mul(e, f) == f {
                let h: Vec<usize> = comps[ei].embedding.iter().map(|&a| comp_index[fi][eps[f][a]]).collect();
                homs.insert((ei, fi), h);
            }
        }
    }
    let ssl = strong_semilattice(&StrongSemilatticeSpec {
        y: y.semigroup.clone(),
        components: comps.iter().map(|c| c.semigroup.clone()).collect(),
        homs,
    })?;
    let mut offsets = Vec::new();
    let mut acc = 0;
    for c in &comps {
        offsets.push(acc);
        acc += c.semigroup.order();
    }
    let y_index = |e: usize| y.embedding.iter().position(|&x| x == e).expect("idempotent");
    let map: Vec<usize> = ker_sub
        .embedding
        .iter()
        .map(|&x| {
            let (a, e) = p.carrier[x];
            let ei = y_index(e);
            offsets[ei] + comp_index[ei][a]
        })
        .collect();
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != ssl.order() || map.len() != ssl.order() {
        return Err(Error::PreconditionViolated("explicit map is not a bijection".into()));
    }
    if !ker_sub.semigroup.is_homomorphism(&ssl, &map) {
        return Err(Error::PreconditionViolated("explicit map is not a homomorphism".into()));
    }
    Ok(())
}

/// All actions of `t` on `k` (up to `limit`), as homomorphisms into `End(k)`.
pub fn enumerate_actions(
    k: &FiniteSemigroup,
    t: &FiniteSemigroup,
    limit: Option<usize>,
    budget: usize,
) -> Result<Vec<Action>> {
    let (end, maps) = endomorphism_monoid(k, budget)?;
    let homs = all_homomorphisms(t, &end, limit, budget)?;
    Ok(homs
        .into_iter()
        .map(|h| Action { t: t.clone(), k: k.clone(), eps: h.iter().map(|&i| maps[i].clone()).collect() })
        .collect())
}

/// The trivial action, every `ᵗa = a`.
pub fn trivial_action(k: &FiniteSemigroup, t: &FiniteSemigroup) -> Action {
    Action { t: t.clone(), k: k.clone(), eps: vec![k.elements().collect(); t.order()] }
}

/// Whether the product of a trivial action by a group is the direct product.
pub fn is_direct_product_copy(p: &LambdaProduct) -> bool {
    let direct = p.action.k.direct_product(&p.action.t);
    find_isomorphism(&p.semigroup, &direct).is_some()
        && quotient(&p.semigroup, &p.theta2()).quotient.order() == p.action.t.order()
}
