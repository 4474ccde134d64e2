//! σ-subnormality, σ-permutability and the three H_σ-embeddings, each
//! returning a witness that can be re-checked by an independent validator.

use serde_json::{json, Value};

use crate::bitset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::partition::{Block, PrimePartition};
use crate::sigma::{self, HallSigmaSet};
use crate::subgroup::Subgroup;

/// Deliberate corruptions used to check that the harness notices bugs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// The normal core of `A` in `B` is reported as `A` itself.
    CorruptNormalCore,
}

/// How one step `A_{i-1} ≤ A_i` of a σ-subnormal chain is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Normal,
    /// `A_i / (A_{i-1})_{A_i}` is a group of this block.
    PrimaryCore(Block),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalChainWitness {
    /// From `A` up to `G`.
    pub chain: Vec<Subgroup>,
    pub steps: Vec<StepKind>,
}

impl SubnormalChainWitness {
    pub fn to_json(&self, sigma: &PrimePartition) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| match s {
                StepKind::Normal => json!("normal"),
                StepKind::PrimaryCore(b) => json!(format!("primary-core:{}", sigma.block_name(*b))),
            })
            .collect();
        json!({
            "orders": self.chain.iter().map(|s| s.order()).collect::<Vec<_>>(),
            "generators": self.chain.iter().map(|s| s.gens().to_vec()).collect::<Vec<_>>(),
            "steps": steps,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingKind {
    Subnormal,
    Permutable,
    Normal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Chain(SubnormalChainWitness),
    HallSet(HallSigmaSet),
    None,
}

/// `A` is a σ-Hall subgroup of `container`, which has the property `kind`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub container: Subgroup,
    pub kind: EmbeddingKind,
    pub evidence: Evidence,
}

impl EmbeddingWitness {
    pub fn to_json(&self, sigma: &PrimePartition) -> Value {
        let evidence = match &self.evidence {
            Evidence::Chain(c) => c.to_json(sigma),
            Evidence::HallSet(h) => h.to_json(sigma),
            Evidence::None => Value::Null,
        };
        json!({
            "container_order": self.container.order(),
            "container_generators": self.container.gens(),
            "kind": format!("{:?}", self.kind).to_lowercase(),
            "evidence": evidence,
        })
    }
}

/// The justification for the step `a ≤ b`, if any. Normal steps win.
pub fn step_kind(sigma: &PrimePartition, g: &Group, a: &Subgroup, b: &Subgroup, fault: Option<Fault>) -> Option<StepKind> {
    if g.is_normal_in(a, b) {
        return Some(StepKind::Normal);
    }
    let core_order = match fault {
        Some(Fault::CorruptNormalCore) => a.order(),
        None => g.core_in(a, b).order(),
    };
    let sig = sigma.sigma_of_int((b.order() / core_order) as u64);
    match sig.len() {
        0 => Some(StepKind::Normal),
        1 => sig.blocks().next().map(StepKind::PrimaryCore),
        _ => None,
    }
}

/// Reachability of the top element by valid steps, over a list of subgroups
/// sorted by order whose last entry is the whole group. `above(i)` lists the
/// indices `j > i` with `subs[i] < subs[j]`. Each reachable non-top entry
/// gets the largest reachable overgroup it can step to.
pub(crate) fn chain_search(
    sigma: &PrimePartition,
    g: &Group,
    subs: &[Subgroup],
    above: impl Fn(usize) -> Vec<usize>,
    fault: Option<Fault>,
) -> Vec<Option<(usize, StepKind)>> {
    let top = subs.len() - 1;
    let mut reach = vec![false; subs.len()];
    let mut parent = vec![None; subs.len()];
    reach[top] = true;
    for i in (0..top).rev() {
        for j in above(i).into_iter().rev() {
            if !reach[j] {
                continue;
            }
            if let Some(kind) = step_kind(sigma, g, &subs[i], &subs[j], fault) {
                reach[i] = true;
                parent[i] = Some((j, kind));
                break;
            }
        }
    }
    parent
}

pub(crate) fn unwind_chain(subs: &[Subgroup], parent: &[Option<(usize, StepKind)>], start: usize) -> SubnormalChainWitness {
    let mut chain = vec![subs[start].clone()];
    let mut steps = Vec::new();
    let mut i = start;
    while let Some((j, kind)) = parent[i] {
        chain.push(subs[j].clone());
        steps.push(kind);
        i = j;
    }
    SubnormalChainWitness { chain, steps }
}

/// A chain from `a` to `G` witnessing σ-subnormality, searched over the
/// overgroups of `a` only.
pub fn is_sigma_subnormal(sigma: &PrimePartition, g: &Group, a: &Subgroup) -> Option<SubnormalChainWitness> {
    is_sigma_subnormal_with(sigma, g, a, None)
}

pub fn is_sigma_subnormal_with(sigma: &PrimePartition, g: &Group, a: &Subgroup, fault: Option<Fault>) -> Option<SubnormalChainWitness> {
    let subs = g.overgroups(a);
    if subs.len() == 1 {
        return Some(SubnormalChainWitness { chain: subs, steps: Vec::new() });
    }
    let parent = chain_search(
        sigma,
        g,
        &subs,
        |i| {
            (i + 1..subs.len())
                .filter(|&j| subs[i].is_subgroup_of(&subs[j]))
                .collect()
        },
        fault,
    );
    parent[0].map(|_| unwind_chain(&subs, &parent, 0))
}

/// Re-checks a chain by direct set computation: containment, normality by
/// conjugating with every element, and the core as the intersection of all
/// conjugates.
pub fn validate_subnormal_chain(sigma: &PrimePartition, g: &Group, a: &Subgroup, w: &SubnormalChainWitness) -> bool {
    let Some(first) = w.chain.first() else {
        return false;
    };
    if first != a || w.chain.last().map(|s| s.order()) != Some(g.order()) {
        return false;
    }
    if w.steps.len() + 1 != w.chain.len() {
        return false;
    }
    if !w.chain.iter().all(|s| g.is_subgroup_set(s.members())) {
        return false;
    }
    w.chain.windows(2).zip(&w.steps).all(|(pair, kind)| {
        let (lo, hi) = (&pair[0], &pair[1]);
        if !lo.members().is_subset(hi.members()) {
            return false;
        }
        match kind {
            StepKind::Normal => hi
                .elements()
                .all(|x| lo.elements().all(|y| lo.contains(g.conj(y, x)))),
            StepKind::PrimaryCore(b) => {
                let mut core = lo.members().clone();
                for x in hi.elements() {
                    let conj = ElemSet::from_iter(g.order(), lo.elements().map(|y| g.conj(y, x)));
                    core.intersect_with(&conj);
                }
                sigma.is_block_number((hi.order() / core.len()) as u64, *b)
            }
        }
    })
}

/// Distinct conjugates of `h`, sorted.
pub fn conjugates(g: &Group, h: &Subgroup) -> Vec<Subgroup> {
    if g.is_normal(h) {
        return vec![h.clone()];
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let c = g.conjugate(h, x);
        if seen.insert(c.members().clone()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

fn require_sigma_full(sigma: &PrimePartition, g: &Group) -> Result<()> {
    if sigma::is_sigma_full(sigma, g)? {
        Ok(())
    } else {
        Err(GroupError::NotSigmaFull { sigma: sigma.to_string() })
    }
}

/// A complete Hall σ-set all of whose members' conjugates permute with `a`.
/// The condition splits by block, so each block independently takes the
/// first Hall subgroup whose whole conjugacy class permutes with `a`.
pub fn is_sigma_permutable(sigma: &PrimePartition, g: &Group, a: &Subgroup) -> Result<Option<HallSigmaSet>> {
    require_sigma_full(sigma, g)?;
    let mut members = std::collections::BTreeMap::new();
    for b in sigma::group_blocks(sigma, g) {
        let halls = sigma::hall_block_subgroups(sigma, g, b)?;
        let found = halls
            .into_iter()
            .find(|h| conjugates(g, h).iter().all(|c| g.permutes(a, c)));
        match found {
            Some(h) => {
                members.insert(b, h);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(HallSigmaSet { members }))
}

/// Re-checks a permutability witness: one Hall σ_i-subgroup per block of
/// `σ(G)`, and `A·H^x = H^x·A` as element sets for every `x ∈ G`.
pub fn validate_permutable_witness(sigma: &PrimePartition, g: &Group, a: &Subgroup, set: &HallSigmaSet) -> bool {
    let blocks = sigma::group_blocks(sigma, g);
    if set.members.keys().copied().collect::<Vec<_>>() != blocks {
        return false;
    }
    set.iter().all(|(b, h)| {
        g.is_subgroup_set(h.members())
            && h.order() as u64 == sigma.block_part(g.order() as u64, b)
            && (0..g.order()).all(|x| {
                let hx = g.conjugate(h, x);
                g.product_set(a, &hx) == g.product_set(&hx, a)
            })
    })
}

/// `A` permutes with every Sylow subgroup of `G`.
pub fn is_s_permutable(g: &Group, a: &Subgroup) -> bool {
    crate::arith::prime_divisors(g.order() as u64)
        .into_iter()
        .all(|p| g.sylow_subgroups(p).iter().all(|s| g.permutes(a, s)))
}

/// The first overgroup `V` of `a` (by order, then bitset) in which `a` is
/// σ-Hall and which is σ-subnormal, σ-permutable or normal according to
/// `kind`.
pub fn is_h_sigma_embedded(sigma: &PrimePartition, g: &Group, a: &Subgroup, kind: EmbeddingKind) -> Result<Option<EmbeddingWitness>> {
    if kind == EmbeddingKind::Permutable {
        require_sigma_full(sigma, g)?;
    }
    for v in g.overgroups(a) {
        if !sigma::is_sigma_hall_in(sigma, a, &v) {
            continue;
        }
        let evidence = match kind {
            EmbeddingKind::Normal => g.is_normal(&v).then_some(Evidence::None),
            EmbeddingKind::Subnormal => is_sigma_subnormal(sigma, g, &v).map(Evidence::Chain),
            EmbeddingKind::Permutable => is_sigma_permutable(sigma, g, &v)?.map(Evidence::HallSet),
        };
        if let Some(evidence) = evidence {
            return Ok(Some(EmbeddingWitness { container: v, kind, evidence }));
        }
    }
    Ok(None)
}

/// Re-checks an embedding witness against the definitions.
pub fn validate_embedding_witness(sigma: &PrimePartition, g: &Group, a: &Subgroup, w: &EmbeddingWitness) -> bool {
    if !a.is_subgroup_of(&w.container) || !sigma::is_sigma_hall_in(sigma, a, &w.container) {
        return false;
    }
    match (&w.kind, &w.evidence) {
        (EmbeddingKind::Normal, Evidence::None) => (0..g.order())
            .all(|x| w.container.elements().all(|y| w.container.contains(g.conj(y, x)))),
        (EmbeddingKind::Subnormal, Evidence::Chain(c)) => validate_subnormal_chain(sigma, g, &w.container, c),
        (EmbeddingKind::Permutable, Evidence::HallSet(h)) => validate_permutable_witness(sigma, g, &w.container, h),
        _ => false,
    }
}
