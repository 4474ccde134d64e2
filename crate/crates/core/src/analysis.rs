//! Memoized bulk evaluation of the σ-predicates over the whole subgroup
//! lattice of one group and one partition.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::bitset::ElemSet;
use crate::embedding::{self, EmbeddingKind, EmbeddingWitness, Evidence, Fault, StepKind, SubnormalChainWitness};
use crate::error::{GroupError, Result};
use crate::group::{Elem, Group};
use crate::hse::{self, HsigmaEReport};
use crate::lattice::Lattice;
use crate::partition::{Block, PrimePartition};
use crate::quotient::QuotientMap;
use crate::sigma::{self, HallSigmaSet};
use crate::subgroup::Subgroup;

type Parents = Vec<Option<(usize, StepKind)>>;
/// Per subgroup, the lattice index of the chosen Hall subgroup per block.
type PermutableTable = Vec<Option<BTreeMap<Block, usize>>>;

/// One group under one partition. All lattice-wide predicate tables are
/// computed on first use and shared by later queries.
pub struct Analysis {
    group: Arc<Group>,
    sigma: PrimePartition,
    fault: Option<Fault>,
    parents: OnceLock<Parents>,
    subnormal: OnceLock<Vec<bool>>,
    /// `None` when the group is not σ-full.
    permutable: OnceLock<Option<PermutableTable>>,
    residual: OnceLock<Subgroup>,
    hsigmae: OnceLock<Result<HsigmaEReport>>,
    subgroups: Mutex<HashMap<usize, Arc<SubAnalysis>>>,
    quotients: Mutex<HashMap<usize, Arc<QuotientAnalysis>>>,
}

/// The analysis of a subgroup `E` as a group in its own right.
pub struct SubAnalysis {
    pub analysis: Analysis,
    to_parent: Vec<Elem>,
    to_local: HashMap<Elem, Elem>,
}

impl SubAnalysis {
    /// A subgroup of `E` (local indices) as a subgroup of the parent.
    pub fn lift(&self, parent: &Group, s: &Subgroup) -> Subgroup {
        let set = ElemSet::from_iter(parent.order(), s.elements().map(|x| self.to_parent[x]));
        parent.subgroup_from_set(&set)
    }

    /// A subgroup of the parent lying in `E`, in local indices.
    pub fn restrict(&self, s: &Subgroup) -> Subgroup {
        let g = self.analysis.group();
        let set = ElemSet::from_iter(g.order(), s.elements().map(|x| self.to_local[&x]));
        g.subgroup_from_set(&set)
    }
}

/// The analysis of a quotient `G/N`.
pub struct QuotientAnalysis {
    pub analysis: Analysis,
    pub map: QuotientMap,
}

impl Analysis {
    pub fn new(group: Arc<Group>, sigma: PrimePartition) -> Self {
        Analysis::with_fault(group, sigma, None)
    }

    pub fn with_fault(group: Arc<Group>, sigma: PrimePartition, fault: Option<Fault>) -> Self {
        Analysis {
            group,
            sigma,
            fault,
            parents: OnceLock::new(),
            subnormal: OnceLock::new(),
            permutable: OnceLock::new(),
            residual: OnceLock::new(),
            hsigmae: OnceLock::new(),
            subgroups: Mutex::new(HashMap::new()),
            quotients: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn shared_group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn sigma(&self) -> &PrimePartition {
        &self.sigma
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn lattice(&self) -> Result<&Lattice> {
        self.group.lattice()
    }

    /// Lattice index of a subgroup of this group.
    pub fn index(&self, s: &Subgroup) -> Result<usize> {
        Ok(self
            .lattice()?
            .index_of(s.members())
            .expect("argument is a subgroup of this group"))
    }

    pub fn subgroup(&self, i: usize) -> Result<&Subgroup> {
        Ok(self.lattice()?.get(i))
    }

    fn parents(&self) -> Result<&Parents> {
        let lat = self.lattice()?;
        Ok(self.parents.get_or_init(|| {
            embedding::chain_search(
                &self.sigma,
                &self.group,
                lat.subgroups(),
                |i| lat.above(i).iter().copied().filter(|&j| j != i).collect(),
                self.fault,
            )
        }))
    }

    /// σ-subnormality of every subgroup, by lattice index.
    pub fn subnormal_flags(&self) -> Result<&[bool]> {
        let parents = self.parents()?;
        let top = self.lattice()?.top();
        Ok(self.subnormal.get_or_init(|| {
            parents
                .iter()
                .enumerate()
                .map(|(i, p)| i == top || p.is_some())
                .collect()
        }))
    }

    pub fn is_subnormal(&self, i: usize) -> Result<bool> {
        Ok(self.subnormal_flags()?[i])
    }

    pub fn is_subnormal_subgroup(&self, s: &Subgroup) -> Result<bool> {
        self.is_subnormal(self.index(s)?)
    }

    pub fn subnormal_witness(&self, i: usize) -> Result<Option<SubnormalChainWitness>> {
        if !self.is_subnormal(i)? {
            return Ok(None);
        }
        Ok(Some(embedding::unwind_chain(
            self.lattice()?.subgroups(),
            self.parents()?,
            i,
        )))
    }

    pub fn is_sigma_full(&self) -> Result<bool> {
        Ok(self.permutable_table()?.is_some())
    }

    fn permutable_table(&self) -> Result<&Option<PermutableTable>> {
        let lat = self.lattice()?;
        if let Some(t) = self.permutable.get() {
            return Ok(t);
        }
        let g = &*self.group;
        let mut per_block: Vec<(Block, Vec<usize>)> = Vec::new();
        for b in sigma::group_blocks(&self.sigma, g) {
            let target = self.sigma.block_part(g.order() as u64, b) as usize;
            // One Hall subgroup per conjugacy class: the first in lattice order.
            let mut reps: Vec<usize> = Vec::new();
            for i in 0..lat.len() {
                if lat.get(i).order() == target && lat.class(i)[0] == i {
                    reps.push(i);
                }
            }
            per_block.push((b, reps));
        }
        let table = if per_block.iter().any(|(_, reps)| reps.is_empty()) {
            None
        } else {
            Some(
                (0..lat.len())
                    .map(|a| {
                        let sub = lat.get(a);
                        per_block
                            .iter()
                            .map(|(b, reps)| {
                                reps.iter()
                                    .copied()
                                    .find(|&h| lat.class(h).iter().all(|&c| g.permutes(sub, lat.get(c))))
                                    .map(|h| (*b, h))
                            })
                            .collect::<Option<BTreeMap<Block, usize>>>()
                    })
                    .collect(),
            )
        };
        Ok(self.permutable.get_or_init(|| table))
    }

    fn require_sigma_full(&self) -> Result<&PermutableTable> {
        self.permutable_table()?
            .as_ref()
            .ok_or_else(|| GroupError::NotSigmaFull { sigma: self.sigma.to_string() })
    }

    pub fn is_permutable(&self, i: usize) -> Result<bool> {
        Ok(self.require_sigma_full()?[i].is_some())
    }

    pub fn permutable_witness(&self, i: usize) -> Result<Option<HallSigmaSet>> {
        let lat = self.lattice()?;
        Ok(self.require_sigma_full()?[i].as_ref().map(|m| HallSigmaSet {
            members: m.iter().map(|(b, &h)| (*b, lat.get(h).clone())).collect(),
        }))
    }

    fn container_ok(&self, j: usize, kind: EmbeddingKind) -> Result<bool> {
        match kind {
            EmbeddingKind::Normal => Ok(self.lattice()?.is_normal(j)),
            EmbeddingKind::Subnormal => self.is_subnormal(j),
            EmbeddingKind::Permutable => self.is_permutable(j),
        }
    }

    /// The first overgroup of subgroup `i` in which it is σ-Hall and which has
    /// the container property of `kind`.
    pub fn embedding_container(&self, i: usize, kind: EmbeddingKind) -> Result<Option<usize>> {
        let lat = self.lattice()?;
        let a = lat.get(i);
        for &j in lat.above(i) {
            if sigma::is_sigma_hall_in(&self.sigma, a, lat.get(j)) && self.container_ok(j, kind)? {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn is_embedded(&self, i: usize, kind: EmbeddingKind) -> Result<bool> {
        Ok(self.embedding_container(i, kind)?.is_some())
    }

    pub fn embedding_witness(&self, i: usize, kind: EmbeddingKind) -> Result<Option<EmbeddingWitness>> {
        let Some(j) = self.embedding_container(i, kind)? else {
            return Ok(None);
        };
        let evidence = match kind {
            EmbeddingKind::Normal => Evidence::None,
            EmbeddingKind::Subnormal => Evidence::Chain(self.subnormal_witness(j)?.expect("container is σ-subnormal")),
            EmbeddingKind::Permutable => Evidence::HallSet(self.permutable_witness(j)?.expect("container is σ-permutable")),
        };
        Ok(Some(EmbeddingWitness {
            container: self.lattice()?.get(j).clone(),
            kind,
            evidence,
        }))
    }

    pub fn residual(&self) -> &Subgroup {
        self.residual
            .get_or_init(|| hse::sigma_nilpotent_residual(&self.sigma, &self.group))
    }

    pub fn hsigmae(&self) -> Result<&HsigmaEReport> {
        self.hsigmae
            .get_or_init(|| hse::is_hsigmae(&self.sigma, &self.group))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The analysis of subgroup `i` as a group, same partition and fault.
    pub fn sub_analysis(&self, i: usize) -> Result<Arc<SubAnalysis>> {
        let lat = self.lattice()?;
        if let Some(s) = self.subgroups.lock().expect("lock").get(&i) {
            return Ok(s.clone());
        }
        let (local, to_parent) = self.group.induced(lat.get(i));
        let to_local = to_parent.iter().enumerate().map(|(l, &p)| (p, l)).collect();
        let sub = Arc::new(SubAnalysis {
            analysis: Analysis::with_fault(Arc::new(local), self.sigma.clone(), self.fault),
            to_parent,
            to_local,
        });
        Ok(self
            .subgroups
            .lock()
            .expect("lock")
            .entry(i)
            .or_insert(sub)
            .clone())
    }

    /// The analysis of `G/N` for the normal subgroup with lattice index `i`.
    pub fn quotient_analysis(&self, i: usize) -> Result<Arc<QuotientAnalysis>> {
        let lat = self.lattice()?;
        if let Some(q) = self.quotients.lock().expect("lock").get(&i) {
            return Ok(q.clone());
        }
        let map = self.group.quotient(lat.get(i))?;
        let q = Arc::new(QuotientAnalysis {
            analysis: Analysis::with_fault(map.shared_target(), self.sigma.clone(), self.fault),
            map,
        });
        Ok(self
            .quotients
            .lock()
            .expect("lock")
            .entry(i)
            .or_insert(q)
            .clone())
    }
}
