//! σ-nilpotent residuals, σ-Carter subgroups, Sylow towers, chief-factor
//! σ-centrality and recognition of HσE-groups.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::arith;
use crate::bitset::ElemSet;
use crate::error::Result;
use crate::group::Group;
use crate::partition::{Block, PrimePartition};
use crate::sigma;
use crate::structure::ChiefFactor;
use crate::subgroup::Subgroup;

/// `G/N` is σ-nilpotent, decided without building the quotient: every block
/// of `σ(|G/N|)` needs a normal `K ⊇ N` with `|K/N|` the full block part.
pub fn quotient_is_sigma_nilpotent(sigma: &PrimePartition, g: &Group, n: &Subgroup) -> bool {
    let index = (g.order() / n.order()) as u64;
    sigma.sigma_of_int(index).blocks().all(|b| {
        let target = sigma.block_part(index, b) as usize * n.order();
        g.normal_subgroups()
            .iter()
            .any(|k| k.order() == target && n.is_subgroup_of(k))
    })
}

/// `G^{N_σ}`: the smallest normal subgroup with σ-nilpotent quotient.
pub fn sigma_nilpotent_residual(sigma: &PrimePartition, g: &Group) -> Subgroup {
    g.normal_subgroups()
        .iter()
        .find(|n| quotient_is_sigma_nilpotent(sigma, g, n))
        .expect("G/G is trivial, hence σ-nilpotent")
        .clone()
}

/// `E^{N_σ}` for a subgroup `E`, computed in `E` as a group of its own.
pub fn sigma_nilpotent_residual_in(sigma: &PrimePartition, g: &Group, e: &Subgroup) -> Subgroup {
    if e.order() == g.order() {
        return sigma_nilpotent_residual(sigma, g);
    }
    let (local, to_parent) = g.induced(e);
    let r = sigma_nilpotent_residual(sigma, &local);
    let set = ElemSet::from_iter(g.order(), r.elements().map(|x| to_parent[x]));
    g.subgroup_from_set(&set)
}

/// `O^{σ_i}(G)`: generated by the elements whose order is a σ_i'-number.
pub fn block_residual(sigma: &PrimePartition, g: &Group, block: Block) -> Subgroup {
    let elems: Vec<usize> = (0..g.order())
        .filter(|&x| !sigma.sigma_of_int(g.element_order(x) as u64).contains(block))
        .collect();
    g.subgroup_generated(&elems)
}

/// `H` is σ-nilpotent and `E = E^{N_σ} H` for every `E` with `H ≤ E ≤ G`.
pub fn is_sigma_carter(sigma: &PrimePartition, g: &Group, h: &Subgroup) -> bool {
    sigma::is_sigma_nilpotent_subgroup(sigma, g, h)
        && g.overgroups(h).iter().all(|e| {
            let r = sigma_nilpotent_residual_in(sigma, g, e);
            g.product_set(&r, h).len() == e.order()
        })
}

pub fn sigma_carter_subgroups(sigma: &PrimePartition, g: &Group) -> Result<Vec<Subgroup>> {
    Ok(g.lattice()?
        .subgroups()
        .iter()
        .filter(|h| is_sigma_carter(sigma, g, h))
        .cloned()
        .collect())
}

/// A normal series whose factors have the orders of full Sylow subgroups,
/// bottom to top. Found by depth-first search over normal subgroups.
pub fn sylow_tower(g: &Group) -> Option<Vec<Subgroup>> {
    let order = g.order() as u64;
    let normals = g.normal_subgroups();
    let mut dead: HashSet<usize> = HashSet::new();
    fn dfs(
        g: &Group,
        order: u64,
        normals: &[Subgroup],
        current: usize,
        dead: &mut HashSet<usize>,
        path: &mut Vec<usize>,
    ) -> bool {
        if normals[current].order() == g.order() {
            return true;
        }
        if dead.contains(&current) {
            return false;
        }
        let base = normals[current].order() as u64;
        for (j, n) in normals.iter().enumerate() {
            let step = n.order() as u64 / base;
            if n.order() as u64 > base
                && n.order() as u64 % base == 0
                && arith::is_prime_power(step)
                && arith::p_part(order, arith::prime_divisors(step)[0]) == step
                && normals[current].is_subgroup_of(n)
            {
                path.push(j);
                if dfs(g, order, normals, j, dead, path) {
                    return true;
                }
                path.pop();
            }
        }
        dead.insert(current);
        false
    }
    let mut path = vec![0];
    dfs(g, order, normals, 0, &mut dead, &mut path).then(|| path.iter().map(|&i| normals[i].clone()).collect())
}

pub fn has_sylow_tower(g: &Group) -> bool {
    sylow_tower(g).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorClass {
    Central,
    Eccentric,
}

/// Central iff `σ(|H/K|) ∪ σ(|G : C_G(H/K)|)` has at most one block.
pub fn classify_chief_factor(sigma: &PrimePartition, g: &Group, f: &ChiefFactor) -> FactorClass {
    let index = (g.order() / f.centralizer.order()) as u64;
    let sig = sigma
        .sigma_of_int(f.factor_order as u64)
        .union(&sigma.sigma_of_int(index));
    if sig.len() <= 1 {
        FactorClass::Central
    } else {
        FactorClass::Eccentric
    }
}

/// The HσE clauses in evaluation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HsigmaEClause {
    ResidualNotHall,
    SigmaPiMismatch,
    NoComplement,
    NoSylowTower,
    CentralFactorBelowD,
    ReducibleSylowAction,
}

impl HsigmaEClause {
    pub fn name(self) -> &'static str {
        match self {
            HsigmaEClause::ResidualNotHall => "residual-not-hall",
            HsigmaEClause::SigmaPiMismatch => "sigma-pi-mismatch",
            HsigmaEClause::NoComplement => "no-complement",
            HsigmaEClause::NoSylowTower => "no-sylow-tower",
            HsigmaEClause::CentralFactorBelowD => "central-factor-below-D",
            HsigmaEClause::ReducibleSylowAction => "reducible-sylow-action",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsigmaEReport {
    pub is_hsigmae: bool,
    pub d: Subgroup,
    /// The first complement satisfying the action clause, if any.
    pub m: Option<Subgroup>,
    pub failed_clause: Option<HsigmaEClause>,
    /// Every complement of `D` satisfying the action clause (empty unless the
    /// earlier clauses hold).
    pub good_complements: Vec<Subgroup>,
    /// Verdict of the action clause when irreducibility is read on `P/Φ(P)`
    /// instead of on `P`; `None` when the clause was not reached.
    pub frattini_reading: Option<bool>,
}

impl HsigmaEReport {
    pub fn to_json(&self) -> Value {
        json!({
            "is_hsigmae": self.is_hsigmae,
            "d_order": self.d.order(),
            "m_order": self.m.as_ref().map(|m| m.order()),
            "failed_clause": self.failed_clause.map(|c| c.name()),
        })
    }
}

/// `M` acts irreducibly on every `M`-invariant Sylow subgroup of `D`: the
/// only `M`-invariant subgroups of such a `P` are `1` and `P`. With
/// `modulo_frattini`, the only `M`-invariant subgroups between `Φ(P)` and `P`
/// must be those two.
fn acts_irreducibly(g: &Group, d: &Subgroup, m: &Subgroup, modulo_frattini: bool) -> Result<bool> {
    let lat = g.lattice()?;
    for p in arith::prime_divisors(d.order() as u64) {
        let target = arith::p_part(d.order() as u64, p) as usize;
        let d_idx = lat.index_of(d.members()).expect("D is a subgroup");
        for pi in lat.below(d_idx).filter(|&i| lat.get(i).order() == target) {
            let sylow = lat.get(pi);
            if !g.normalizes(m, sylow) {
                continue;
            }
            let bottom = if modulo_frattini {
                frattini_of_subgroup(g, pi)?
            } else {
                g.trivial_subgroup()
            };
            let reducible = lat.below(pi).any(|j| {
                let s = lat.get(j);
                s.order() > bottom.order()
                    && s.order() < sylow.order()
                    && bottom.is_subgroup_of(s)
                    && g.normalizes(m, s)
            });
            if reducible {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn frattini_of_subgroup(g: &Group, idx: usize) -> Result<Subgroup> {
    let lat = g.lattice()?;
    let mut set = lat.get(idx).members().clone();
    for j in lat.maximal_in(idx) {
        set.intersect_with(lat.get(j).members());
    }
    Ok(g.subgroup_from_set(&set))
}

fn report(d: Subgroup, clause: Option<HsigmaEClause>) -> HsigmaEReport {
    HsigmaEReport {
        is_hsigmae: clause.is_none(),
        d,
        m: None,
        failed_clause: clause,
        good_complements: Vec::new(),
        frattini_reading: None,
    }
}

/// Evaluates the HσE clauses in order and records the first failure. The
/// action clause is existential over the complements of `D`.
pub fn is_hsigmae(sigma: &PrimePartition, g: &Group) -> Result<HsigmaEReport> {
    let lattice_len = g.lattice()?.len();
    debug_assert!(lattice_len > 0);
    let d = sigma_nilpotent_residual(sigma, g);
    if !sigma::is_sigma_hall(sigma, g, &d) {
        return Ok(report(d, Some(HsigmaEClause::ResidualNotHall)));
    }
    let d_order = d.order() as u64;
    if sigma.sigma_of_int(d_order).len() != arith::prime_divisors(d_order).len() {
        return Ok(report(d, Some(HsigmaEClause::SigmaPiMismatch)));
    }
    let complements = g.complements(&d)?;
    if complements.is_empty() {
        return Ok(report(d, Some(HsigmaEClause::NoComplement)));
    }
    if !d.is_trivial() {
        let (local_d, _) = g.induced(&d);
        if !has_sylow_tower(&local_d) {
            return Ok(report(d, Some(HsigmaEClause::NoSylowTower)));
        }
    }
    let series = g.chief_series_through(std::slice::from_ref(&d));
    let central_below = series
        .iter()
        .filter(|f| f.top.is_subgroup_of(&d))
        .any(|f| classify_chief_factor(sigma, g, f) == FactorClass::Central);
    if central_below {
        return Ok(report(d, Some(HsigmaEClause::CentralFactorBelowD)));
    }
    let mut good = Vec::new();
    let mut frattini_good = false;
    for m in &complements {
        if acts_irreducibly(g, &d, m, false)? {
            good.push(m.clone());
        }
        if acts_irreducibly(g, &d, m, true)? {
            frattini_good = true;
        }
    }
    let mut out = report(d, (good.is_empty()).then_some(HsigmaEClause::ReducibleSylowAction));
    out.m = good.first().cloned();
    out.good_complements = good;
    out.frattini_reading = Some(frattini_good);
    Ok(out)
}
