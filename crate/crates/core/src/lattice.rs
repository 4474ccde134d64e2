//! Subgroup lattice enumeration.
//!
//! Subgroups are built bottom-up from the cyclic subgroups of prime-power
//! order. Only one representative per conjugacy class is extended; each new
//! subgroup found is added together with its whole conjugacy class, and a
//! global bitset map removes duplicates.

use std::collections::{HashMap, HashSet};

use crate::arith;
use crate::bitset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;

/// Every subgroup of a group exactly once, sorted by order then bitset order,
/// with conjugacy classes and the containment relation.
pub struct Lattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    /// `below[i]` holds `j` iff subgroup `j` ≤ subgroup `i`.
    below: Vec<ElemSet>,
    above: Vec<Vec<usize>>,
}

impl Lattice {
    fn build(g: &Group) -> Lattice {
        let n = g.order();
        let mut cyclic_gens: Vec<Elem> = Vec::new();
        let mut cyclic_seen: HashSet<ElemSet> = HashSet::new();
        for x in 1..n {
            if arith::is_prime_power(g.element_order(x) as u64) {
                let c = g.subgroup_generated(&[x]);
                if cyclic_seen.insert(c.members().clone()) {
                    cyclic_gens.push(x);
                }
            }
        }

        let mut found: HashMap<ElemSet, usize> = HashMap::new();
        let mut subs: Vec<Subgroup> = Vec::new();
        let mut class_of: Vec<usize> = Vec::new();
        let mut n_classes = 0;
        let mut queue: Vec<usize> = Vec::new();

        let mut add_class = |t: Subgroup,
                             found: &mut HashMap<ElemSet, usize>,
                             subs: &mut Vec<Subgroup>,
                             class_of: &mut Vec<usize>|
         -> usize {
            let rep = subs.len();
            found.insert(t.members().clone(), rep);
            subs.push(t.clone());
            class_of.push(n_classes);
            if !g.is_normal(&t) {
                for h in 0..n {
                    let c = g.conjugate(&t, h);
                    if !found.contains_key(c.members()) {
                        found.insert(c.members().clone(), subs.len());
                        subs.push(c);
                        class_of.push(n_classes);
                    }
                }
            }
            n_classes += 1;
            rep
        };

        let trivial = g.trivial_subgroup();
        queue.push(add_class(trivial, &mut found, &mut subs, &mut class_of));
        while let Some(rep) = queue.pop() {
            let base = subs[rep].clone();
            for &x in &cyclic_gens {
                if base.contains(x) {
                    continue;
                }
                let t = g.extend_subgroup(&base, x);
                if !found.contains_key(t.members()) {
                    queue.push(add_class(t, &mut found, &mut subs, &mut class_of));
                }
            }
        }

        // Sort and renumber.
        let mut order: Vec<usize> = (0..subs.len()).collect();
        order.sort_by(|&a, &b| subs[a].cmp(&subs[b]));
        let mut new_index = vec![0; subs.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut class_rename: HashMap<usize, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut sorted_class_of = vec![0; subs.len()];
        for (new, &old) in order.iter().enumerate() {
            let c = *class_rename.entry(class_of[old]).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(new);
            sorted_class_of[new] = c;
        }
        let subgroups: Vec<Subgroup> = order.iter().map(|&old| subs[old].clone()).collect();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();

        let len = subgroups.len();
        let mut below = vec![ElemSet::new(len); len];
        let mut above = vec![Vec::new(); len];
        for i in 0..len {
            below[i].insert(i);
            for j in 0..i {
                let (si, sj) = (&subgroups[i], &subgroups[j]);
                if sj.order() < si.order() && si.order() % sj.order() == 0 && sj.is_subgroup_of(si) {
                    below[i].insert(j);
                }
            }
        }
        for (i, b) in below.iter().enumerate() {
            for j in b.iter() {
                above[j].push(i);
            }
        }
        for a in &mut above {
            a.sort_unstable();
        }

        Lattice {
            subgroups,
            index,
            class_of: sorted_class_of,
            classes,
            below,
            above,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, members: &ElemSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// Index of the whole group.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The conjugacy class containing subgroup `i`.
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[self.class_of[i]]
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.class(i).len() == 1
    }

    /// `j ≤ i`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.below[i].contains(j)
    }

    /// Indices of subgroups contained in `i` (including `i`), ascending.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[i].iter()
    }

    /// Indices of subgroups containing `i` (including `i`), ascending.
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    /// Maximal subgroups of subgroup `i`.
    pub fn maximal_in(&self, i: usize) -> Vec<usize> {
        let proper: Vec<usize> = self.below(i).filter(|&j| j != i).collect();
        proper
            .iter()
            .copied()
            .filter(|&j| !proper.iter().any(|&k| k != j && self.contains(k, j)))
            .collect()
    }

    pub fn normal_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_normal(i)).collect()
    }
}

impl Group {
    /// The memoized subgroup lattice.
    pub fn lattice(&self) -> Result<&Lattice> {
        if self.order() > self.lattice_bound() {
            return Err(GroupError::LatticeBoundExceeded {
                order: self.order(),
                bound: self.lattice_bound(),
            });
        }
        Ok(self.lattice.get_or_init(|| Lattice::build(self)))
    }

    /// Every subgroup exactly once, sorted by order.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self.lattice()?.subgroups().to_vec())
    }

    /// All subgroups containing `a`, by repeated `⟨S, x⟩` closure from `a`.
    /// Does not build the full lattice.
    pub fn overgroups(&self, a: &Subgroup) -> Vec<Subgroup> {
        let n = self.order();
        let mut seen: HashSet<ElemSet> = HashSet::new();
        seen.insert(a.members().clone());
        let mut out = vec![a.clone()];
        let mut i = 0;
        while i < out.len() {
            let s = out[i].clone();
            let mut covered = s.members().clone();
            for x in 0..n {
                if covered.contains(x) {
                    continue;
                }
                for y in s.elements() {
                    covered.insert(self.mul(y, x));
                }
                let t = self.extend_subgroup(&s, x);
                if seen.insert(t.members().clone()) {
                    out.push(t);
                }
            }
            i += 1;
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_lattice_sizes() {
        assert_eq!(Group::symmetric(3).unwrap().lattice().unwrap().len(), 6);
        assert_eq!(Group::quaternion(8).unwrap().lattice().unwrap().len(), 6);
        assert_eq!(Group::cyclic(4).lattice().unwrap().len(), 3);
        assert_eq!(Group::dihedral(4).unwrap().lattice().unwrap().len(), 5);
    }

    #[test]
    fn lattice_is_sorted_and_closed() {
        let g = Group::symmetric(4).unwrap();
        let lat = g.lattice().unwrap();
        assert_eq!(lat.len(), 30);
        assert_eq!(lat.get(0).order(), 1);
        assert_eq!(lat.get(lat.top()).order(), 24);
        for w in lat.subgroups().windows(2) {
            assert!(w[0] < w[1]);
        }
        for s in lat.subgroups() {
            assert!(g.is_subgroup_set(s.members()));
            assert_eq!(24 % s.order(), 0);
            assert_eq!(g.subgroup_generated(s.gens()), *s);
        }
        let class_sizes: usize = lat.classes().iter().map(|c| c.len()).sum();
        assert_eq!(class_sizes, 30);
        assert_eq!(lat.normal_indices().len(), 4);
    }

    #[test]
    fn lattice_bound_is_enforced() {
        let g = Group::symmetric(4).unwrap().with_lattice_bound(10);
        assert_eq!(
            g.lattice().err(),
            Some(GroupError::LatticeBoundExceeded { order: 24, bound: 10 })
        );
    }

    #[test]
    fn overgroups_by_closure() {
        let s3 = Group::symmetric(3).unwrap();
        let c3 = s3.subgroup_generated(&[(0..6).find(|&x| s3.element_order(x) == 3).unwrap()]);
        let ov = s3.overgroups(&c3);
        assert_eq!(ov.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![3, 6]);
        assert_eq!(s3.overgroups(s3.whole()).len(), 1);
        let c4 = Group::cyclic(4);
        assert_eq!(c4.overgroups(&c4.trivial_subgroup()).len(), 3);
    }

    #[test]
    fn overgroups_match_lattice_filter() {
        let g = Group::symmetric(4).unwrap();
        let lat = g.lattice().unwrap();
        for i in 0..lat.len() {
            let by_closure = g.overgroups(lat.get(i));
            let by_filter: Vec<Subgroup> = lat.above(i).iter().map(|&j| lat.get(j).clone()).collect();
            assert_eq!(by_closure, by_filter);
        }
    }
}
