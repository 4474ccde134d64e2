//! Quotient groups `G/N` as explicit tables.

use std::sync::Arc;

use crate::bitset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;

/// The natural map `G → G/N`. Cosets are numbered in order of their smallest
/// member, so coset 0 is `N` itself.
#[derive(Debug)]
pub struct QuotientMap {
    kernel: Subgroup,
    target: Arc<Group>,
    element_map: Vec<usize>,
    reps: Vec<Elem>,
}

impl QuotientMap {
    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn shared_target(&self) -> Arc<Group> {
        self.target.clone()
    }

    pub fn element_map(&self) -> &[usize] {
        &self.element_map
    }

    pub fn map(&self, x: Elem) -> usize {
        self.element_map[x]
    }

    /// Smallest member of coset `i`.
    pub fn representative(&self, i: usize) -> Elem {
        self.reps[i]
    }

    /// `AN/N` as a subgroup of the target.
    pub fn image(&self, a: &Subgroup) -> Subgroup {
        let mut set = ElemSet::new(self.target.order());
        for x in a.elements() {
            set.insert(self.element_map[x]);
        }
        self.target.subgroup_from_set(&set)
    }

    /// The full preimage of a subgroup of the target.
    pub fn preimage(&self, source: &Group, b: &Subgroup) -> Subgroup {
        let set = ElemSet::from_iter(
            source.order(),
            (0..source.order()).filter(|&x| b.contains(self.element_map[x])),
        );
        source.subgroup_from_set(&set)
    }
}

impl Group {
    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientMap> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal("quotient needs a normal subgroup".into()));
        }
        let mut element_map = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for x in 0..self.order() {
            if element_map[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for k in n.elements() {
                element_map[self.mul(x, k)] = idx;
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = element_map[self.mul(a, b)] as u32;
            }
        }
        let target = Group::from_valid_table(m, mul, None).with_lattice_bound(self.lattice_bound());
        Ok(QuotientMap {
            kernel: n.clone(),
            target: Arc::new(target),
            element_map,
            reps,
        })
    }
}
