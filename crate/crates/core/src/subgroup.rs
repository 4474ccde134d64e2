//! Subgroups as element bitsets, and the set-level operations on them.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::bitset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::{Elem, Group};

/// A subgroup of some [`Group`]: its member bitset plus a generating set.
///
/// Equality, hashing and ordering only look at the members. Subgroups are
/// ordered by order first, then by bitset order.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: ElemSet,
    order: usize,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub(crate) fn from_parts(members: ElemSet, gens: Vec<Elem>) -> Self {
        let order = members.len();
        Subgroup { members, order, gens }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `self ≤ other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }
}

impl Group {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_parts(ElemSet::from_iter(self.order(), [0]), Vec::new())
    }

    /// The smallest subgroup containing `elems`.
    pub fn subgroup_generated(&self, elems: &[Elem]) -> Subgroup {
        let mut sub = self.trivial_subgroup();
        for &x in elems {
            if !sub.contains(x) {
                sub = self.extend_subgroup(&sub, x);
            }
        }
        sub
    }

    /// `⟨sub, x⟩` by Dimino's coset method: the result is grown as a union of
    /// right cosets of `sub`.
    pub fn extend_subgroup(&self, sub: &Subgroup, x: Elem) -> Subgroup {
        if sub.contains(x) {
            return sub.clone();
        }
        let mut gens = sub.gens.clone();
        gens.push(x);
        let base: Vec<Elem> = sub.members.to_vec();
        let mut members = sub.members.clone();
        let mut reps = vec![0];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let y = self.mul(r, s);
                if !members.contains(y) {
                    for &h in &base {
                        members.insert(self.mul(h, y));
                    }
                    reps.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_parts(members, gens)
    }

    /// Wraps a set already known to be a subgroup, choosing a small
    /// generating set greedily.
    pub fn subgroup_from_set(&self, set: &ElemSet) -> Subgroup {
        let mut sub = self.trivial_subgroup();
        for x in set.iter() {
            if sub.order() == set.len() {
                break;
            }
            if !sub.contains(x) {
                sub = self.extend_subgroup(&sub, x);
            }
        }
        debug_assert_eq!(sub.members, *set);
        sub
    }

    /// Direct check that `set` is a subgroup: contains the identity and is
    /// closed under multiplication and inversion.
    pub fn is_subgroup_set(&self, set: &ElemSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let elems = set.to_vec();
        elems.iter().all(|&a| {
            set.contains(self.inv(a)) && elems.iter().all(|&b| set.contains(self.mul(a, b)))
        })
    }

    pub fn conjugate(&self, a: &Subgroup, g: Elem) -> Subgroup {
        let members = ElemSet::from_iter(self.order(), a.elements().map(|x| self.conj(x, g)));
        let gens = a.gens.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::from_parts(members, gens)
    }

    /// `b` normalizes `a` elementwise on generators: `x a x⁻¹ = a` for all
    /// generators `x` of `b`.
    pub fn normalizes(&self, b: &Subgroup, a: &Subgroup) -> bool {
        b.gens
            .iter()
            .all(|&x| a.gens.iter().all(|&y| a.contains(self.conj(y, x))))
    }

    pub fn is_normal(&self, a: &Subgroup) -> bool {
        self.normalizes(self.whole(), a)
    }

    /// `a ⊴ b`, assuming `a ≤ b`.
    pub fn is_normal_in(&self, a: &Subgroup, b: &Subgroup) -> bool {
        self.normalizes(b, a)
    }

    /// Largest subgroup of `a` normal in the whole group.
    pub fn normal_core(&self, a: &Subgroup) -> Subgroup {
        self.core_in(a, self.whole())
    }

    /// Largest subgroup of `a` normalized by `b`, i.e. `a_b`.
    ///
    /// Iterates `C <- C ∩ ⋂_{t ∈ gens(b)} C^t` to a fixed point.
    pub fn core_in(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut core = a.members.clone();
        loop {
            let mut next = core.clone();
            for &t in &b.gens {
                let mut image = ElemSet::new(self.order());
                for x in core.iter() {
                    image.insert(self.conj(x, t));
                }
                next.intersect_with(&image);
            }
            if next == core {
                break;
            }
            core = next;
        }
        if core == a.members {
            a.clone()
        } else {
            self.subgroup_from_set(&core)
        }
    }

    pub fn normalizer(&self, a: &Subgroup) -> Subgroup {
        self.normalizer_in(a, self.whole())
    }

    /// `N_b(a)`.
    pub fn normalizer_in(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let set = ElemSet::from_iter(
            self.order(),
            b.elements()
                .filter(|&x| a.gens.iter().all(|&y| a.contains(self.conj(y, x)))),
        );
        self.subgroup_from_set(&set)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.is_subgroup_of(b) {
            return a.clone();
        }
        if b.is_subgroup_of(a) {
            return b.clone();
        }
        self.subgroup_from_set(&a.members.intersection(&b.members))
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut out = a.clone();
        for &x in &b.gens {
            out = self.extend_subgroup(&out, x);
        }
        out
    }

    /// The set `AB = {ab : a ∈ A, b ∈ B}`.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> ElemSet {
        let mut out = ElemSet::new(self.order());
        let bs = b.members.to_vec();
        for x in a.elements() {
            for &y in &bs {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// `AB = BA` as sets. Uses that `AB = BA` iff `AB` is a subgroup iff `AB`
    /// is closed under right multiplication by generators of `A`.
    pub fn permutes(&self, a: &Subgroup, b: &Subgroup) -> bool {
        if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
            return true;
        }
        let ab = self.product_set(a, b);
        let elems = ab.to_vec();
        a.gens
            .iter()
            .all(|&g| elems.iter().all(|&x| ab.contains(self.mul(x, g))))
    }

    /// Normal closure of `elems` in the whole group.
    pub fn normal_closure(&self, elems: &[Elem]) -> Subgroup {
        let mut sub = self.subgroup_generated(elems);
        loop {
            let whole_gens = self.generators().to_vec();
            let mut grown = sub.clone();
            for &g in &whole_gens {
                for &x in sub.gens() {
                    let y = self.conj(x, g);
                    if !grown.contains(y) {
                        grown = self.extend_subgroup(&grown, y);
                    }
                }
            }
            if grown.order() == sub.order() {
                return sub;
            }
            sub = grown;
        }
    }

    /// `[A, B] = ⟨[a, b] : a ∈ A, b ∈ B⟩`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut out = self.trivial_subgroup();
        let bs = b.members.to_vec();
        for x in a.elements() {
            for &y in &bs {
                let c = self.commutator(x, y);
                if !out.contains(c) {
                    out = self.extend_subgroup(&out, c);
                }
            }
        }
        out
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators().to_vec();
        let set = ElemSet::from_iter(
            self.order(),
            (0..self.order()).filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x))),
        );
        self.subgroup_from_set(&set)
    }

    /// `C_G(H/K) = {x : [x, h] ∈ K for all h ∈ H}` for normal `K ≤ H`.
    pub fn centralizer_of_factor(&self, top: &Subgroup, bottom: &Subgroup) -> Result<Subgroup> {
        if !self.is_normal(top) || !self.is_normal(bottom) {
            return Err(GroupError::NotNormal("factor terms must be normal in G".into()));
        }
        if !bottom.is_subgroup_of(top) {
            return Err(GroupError::NotNormal("bottom is not contained in top".into()));
        }
        let set = ElemSet::from_iter(
            self.order(),
            (0..self.order())
                .filter(|&x| top.gens.iter().all(|&h| bottom.contains(self.commutator(x, h)))),
        );
        Ok(self.subgroup_from_set(&set))
    }

    /// `a` is cyclic of square-free order.
    pub fn is_cyclic_squarefree_subgroup(&self, a: &Subgroup) -> bool {
        crate::arith::is_squarefree(a.order() as u64)
            && a.elements().any(|x| self.element_order(x) == a.order())
    }

    pub fn is_cyclic_subgroup(&self, a: &Subgroup) -> bool {
        a.elements().any(|x| self.element_order(x) == a.order())
    }
}
