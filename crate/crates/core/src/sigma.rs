//! σ-arithmetic on groups: σ-Hall tests, complete Hall σ-sets, σ-fullness,
//! σ-nilpotency, σ-solubility and σ-bases.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::partition::{Block, PrimePartition};
use crate::subgroup::Subgroup;

/// One Hall σ_i-subgroup for every block of `σ(G)`, keyed by block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallSigmaSet {
    pub members: BTreeMap<Block, Subgroup>,
}

impl HallSigmaSet {
    pub fn get(&self, b: Block) -> Option<&Subgroup> {
        self.members.get(&b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Block, &Subgroup)> {
        self.members.iter().map(|(b, s)| (*b, s))
    }

    /// Block name to member order.
    pub fn to_json(&self, sigma: &PrimePartition) -> Value {
        let map: serde_json::Map<String, Value> = self
            .members
            .iter()
            .map(|(b, s)| (sigma.block_name(*b), json!(s.order())))
            .collect();
        Value::Object(map)
    }
}

pub fn is_sigma_primary(sigma: &PrimePartition, order: usize) -> bool {
    sigma.is_primary_number(order as u64)
}

/// `σ(|A|) ∩ σ(|V:A|) = ∅` for `A ≤ V`.
pub fn is_sigma_hall_in(sigma: &PrimePartition, a: &Subgroup, v: &Subgroup) -> bool {
    let index = (v.order() / a.order()) as u64;
    sigma
        .sigma_of_int(a.order() as u64)
        .is_disjoint(&sigma.sigma_of_int(index))
}

pub fn is_sigma_hall(sigma: &PrimePartition, g: &Group, a: &Subgroup) -> bool {
    is_sigma_hall_in(sigma, a, g.whole())
}

/// The blocks of `σ(G)` in label order.
pub fn group_blocks(sigma: &PrimePartition, g: &Group) -> Vec<Block> {
    sigma.sigma_of_int(g.order() as u64).blocks().collect()
}

pub fn hall_block_subgroups(sigma: &PrimePartition, g: &Group, block: Block) -> Result<Vec<Subgroup>> {
    let primes = sigma.primes_in_block(g.order() as u64, block);
    if primes.is_empty() {
        return Err(GroupError::UnknownBlock(format!(
            "{} does not meet the group order {}",
            sigma.block_name(block),
            g.order()
        )));
    }
    g.hall_subgroups(&primes)
}

/// Every complete Hall σ-set, as the Cartesian product of the per-block Hall
/// subgroup lists (blocks in label order, members in lattice order).
pub fn complete_hall_sigma_sets(sigma: &PrimePartition, g: &Group) -> Result<Vec<HallSigmaSet>> {
    let mut per_block = Vec::new();
    for b in group_blocks(sigma, g) {
        per_block.push((b, hall_block_subgroups(sigma, g, b)?));
    }
    let mut sets = vec![BTreeMap::new()];
    for (b, halls) in &per_block {
        let mut next = Vec::with_capacity(sets.len() * halls.len());
        for partial in &sets {
            for h in halls {
                let mut m = partial.clone();
                m.insert(*b, h.clone());
                next.push(m);
            }
        }
        sets = next;
    }
    Ok(sets.into_iter().map(|members| HallSigmaSet { members }).collect())
}

/// The lexicographically first complete Hall σ-set, if any.
pub fn first_complete_hall_sigma_set(sigma: &PrimePartition, g: &Group) -> Result<Option<HallSigmaSet>> {
    let mut members = BTreeMap::new();
    for b in group_blocks(sigma, g) {
        match hall_block_subgroups(sigma, g, b)?.into_iter().next() {
            Some(h) => {
                members.insert(b, h);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(HallSigmaSet { members }))
}

pub fn is_sigma_full(sigma: &PrimePartition, g: &Group) -> Result<bool> {
    Ok(first_complete_hall_sigma_set(sigma, g)?.is_some())
}

/// σ-nilpotent iff every block of `σ(G)` has a normal Hall subgroup.
pub fn is_sigma_nilpotent(sigma: &PrimePartition, g: &Group) -> bool {
    is_sigma_nilpotent_subgroup(sigma, g, g.whole())
}

pub fn is_sigma_nilpotent_subgroup(sigma: &PrimePartition, g: &Group, h: &Subgroup) -> bool {
    sigma
        .sigma_of_int(h.order() as u64)
        .blocks()
        .all(|b| g.normal_hall_in(h, |p| sigma.in_block(p, b)).is_some())
}

/// Every factor of the chief series is σ-primary.
pub fn is_sigma_soluble(sigma: &PrimePartition, g: &Group) -> bool {
    g.chief_series()
        .iter()
        .all(|f| is_sigma_primary(sigma, f.factor_order))
}

/// A complete Hall σ-set whose members pairwise permute, found by
/// backtracking over the per-block Hall subgroups.
pub fn sigma_basis(sigma: &PrimePartition, g: &Group) -> Result<Option<HallSigmaSet>> {
    let mut per_block = Vec::new();
    for b in group_blocks(sigma, g) {
        per_block.push((b, hall_block_subgroups(sigma, g, b)?));
    }
    fn search(g: &Group, per_block: &[(Block, Vec<Subgroup>)], chosen: &mut Vec<Subgroup>) -> bool {
        let Some((_, halls)) = per_block.get(chosen.len()) else {
            return true;
        };
        for h in halls {
            if chosen.iter().all(|c| g.permutes(c, h)) {
                chosen.push(h.clone());
                if search(g, per_block, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !search(g, &per_block, &mut chosen) {
        return Ok(None);
    }
    Ok(Some(HallSigmaSet {
        members: per_block.iter().map(|(b, _)| *b).zip(chosen).collect(),
    }))
}
