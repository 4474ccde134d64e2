//! Classical structure queries: normal subgroups, chief series, Sylow and
//! Hall subgroups, Frattini subgroup, complements, nilpotency.

use std::collections::HashSet;

use crate::arith;
use crate::bitset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;

/// A chief factor `top/bottom` of a group together with `C_G(top/bottom)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub top: Subgroup,
    pub bottom: Subgroup,
    pub centralizer: Subgroup,
    pub factor_order: usize,
}

impl Group {
    /// All normal subgroups, sorted by order then bitset order. Built from the
    /// normal closures of conjugacy classes and closed under products, so the
    /// subgroup lattice is not needed.
    pub fn normal_subgroups(&self) -> &[Subgroup] {
        self.normals.get_or_init(|| {
            let mut seen: HashSet<ElemSet> = HashSet::new();
            let mut list: Vec<Subgroup> = Vec::new();
            let trivial = self.trivial_subgroup();
            seen.insert(trivial.members().clone());
            list.push(trivial);
            for class in self.conjugacy_classes().iter().skip(1) {
                let n = self.subgroup_generated(class);
                if seen.insert(n.members().clone()) {
                    list.push(n);
                }
            }
            let mut i = 1;
            while i < list.len() {
                for j in 1..i {
                    let prod = self.product_set(&list[i], &list[j]);
                    if !seen.contains(&prod) {
                        seen.insert(prod.clone());
                        let n = self.join(&list[i], &list[j]);
                        list.push(n);
                    }
                }
                i += 1;
            }
            list.sort();
            list
        })
    }

    pub fn minimal_normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order() == 1 {
            return Err(GroupError::TrivialGroup);
        }
        let nontrivial: Vec<&Subgroup> =
            self.normal_subgroups().iter().filter(|n| !n.is_trivial()).collect();
        Ok(nontrivial
            .iter()
            .filter(|n| {
                !nontrivial
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
            })
            .map(|n| (*n).clone())
            .collect())
    }

    /// One chief series `1 = N0 < N1 < … < Nk = G`. At each step the smallest
    /// normal subgroup strictly above the current term is taken (ties by
    /// bitset order), which is automatically minimal.
    pub fn chief_series(&self) -> Vec<ChiefFactor> {
        self.chief_series_through(&[])
    }

    /// A chief series passing through each of the given normal subgroups,
    /// which must form a chain.
    ///
    /// A normal subgroup minimal over `current` is generated by `current` and
    /// any one conjugacy class outside it, so only those candidates are built.
    pub fn chief_series_through(&self, waypoints: &[Subgroup]) -> Vec<ChiefFactor> {
        let mut targets: Vec<Subgroup> = waypoints.to_vec();
        targets.sort();
        targets.push(self.whole().clone());
        let mut current = self.trivial_subgroup();
        let mut factors = Vec::new();
        for target in targets {
            while current.order() < target.order() {
                let next = self
                    .conjugacy_classes()
                    .iter()
                    .filter(|c| target.contains(c[0]) && !current.contains(c[0]))
                    .map(|c| {
                        let gens: Vec<Elem> = current.gens().iter().chain(c).copied().collect();
                        self.subgroup_generated(&gens)
                    })
                    .min()
                    .expect("target is strictly above the current term");
                let centralizer = self
                    .centralizer_of_factor(&next, &current)
                    .expect("terms of a normal series are normal");
                factors.push(ChiefFactor {
                    factor_order: next.order() / current.order(),
                    top: next.clone(),
                    bottom: current,
                    centralizer,
                });
                current = next;
            }
        }
        factors
    }

    /// `K ⊴ H` both normal in G with no normal subgroup strictly between.
    pub fn is_chief_factor(&self, top: &Subgroup, bottom: &Subgroup) -> bool {
        top.order() > bottom.order()
            && bottom.is_subgroup_of(top)
            && self.is_normal(top)
            && self.is_normal(bottom)
            && !self.normal_subgroups().iter().any(|n| {
                n.order() > bottom.order()
                    && n.order() < top.order()
                    && bottom.is_subgroup_of(n)
                    && n.is_subgroup_of(top)
            })
    }

    /// The subgroup generated by all elements of `sub` whose order is a
    /// π-number, returned only if it is a (necessarily normal) Hall π-subgroup
    /// of `sub`.
    pub fn normal_hall_in(&self, sub: &Subgroup, in_pi: impl Fn(u64) -> bool) -> Option<Subgroup> {
        let target = arith::part_where(sub.order() as u64, &in_pi) as usize;
        let elems: Vec<Elem> = sub
            .elements()
            .filter(|&x| {
                arith::prime_divisors(self.element_order(x) as u64)
                    .into_iter()
                    .all(&in_pi)
            })
            .collect();
        let h = self.subgroup_generated(&elems);
        (h.order() == target).then_some(h)
    }

    /// Nilpotent iff every Sylow subgroup is normal.
    pub fn is_nilpotent(&self) -> bool {
        self.is_nilpotent_subgroup(self.whole())
    }

    pub fn is_nilpotent_subgroup(&self, sub: &Subgroup) -> bool {
        arith::prime_divisors(sub.order() as u64)
            .into_iter()
            .all(|p| self.normal_hall_in(sub, |q| q == p).is_some())
    }

    pub fn is_cyclic_squarefree(&self) -> bool {
        self.is_cyclic_squarefree_subgroup(self.whole())
    }

    /// All Sylow `p`-subgroups. One is grown through normalizers, the rest
    /// are its conjugates. If `p` does not divide the order the trivial
    /// subgroup is the unique answer.
    pub fn sylow_subgroups(&self, p: u64) -> Vec<Subgroup> {
        let target = arith::p_part(self.order() as u64, p) as usize;
        let mut sylow = self.trivial_subgroup();
        while sylow.order() < target {
            let norm = self.normalizer(&sylow);
            let next = norm
                .elements()
                .filter(|&x| !sylow.contains(x) && arith::is_prime_power(self.element_order(x) as u64))
                .filter(|&x| self.element_order(x) as u64 % p == 0)
                .map(|x| self.extend_subgroup(&sylow, x))
                .find(|t| arith::is_prime_power(t.order() as u64))
                .expect("a p-element of N(P)/P exists while P is not Sylow");
            sylow = next;
        }
        let mut seen: HashSet<ElemSet> = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            let c = self.conjugate(&sylow, g);
            if seen.insert(c.members().clone()) {
                out.push(c);
            }
        }
        out.sort();
        debug_assert_eq!(out.len() as u64 % p, 1 % p);
        out
    }

    /// All subgroups whose order is the π-part of |G| (possibly none).
    pub fn hall_subgroups(&self, primes: &[u64]) -> Result<Vec<Subgroup>> {
        let target = arith::part_where(self.order() as u64, |q| primes.contains(&q)) as usize;
        Ok(self
            .lattice()?
            .subgroups()
            .iter()
            .filter(|s| s.order() == target)
            .cloned()
            .collect())
    }

    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let lat = self.lattice()?;
        Ok(lat
            .maximal_in(lat.top())
            .into_iter()
            .map(|i| lat.get(i).clone())
            .collect())
    }

    /// Intersection of all maximal subgroups.
    pub fn frattini_subgroup(&self) -> Result<Subgroup> {
        let maximal = self.maximal_subgroups()?;
        let mut set = ElemSet::full(self.order());
        for m in &maximal {
            set.intersect_with(m.members());
        }
        Ok(self.subgroup_from_set(&set))
    }

    /// All `M` with `M ∩ N = 1` and `|M||N| = |G|`.
    pub fn complements(&self, n: &Subgroup) -> Result<Vec<Subgroup>> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal("complements need a normal subgroup".into()));
        }
        let target = self.order() / n.order();
        Ok(self
            .lattice()?
            .subgroups()
            .iter()
            .filter(|m| m.order() == target && m.members().intersection(n.members()).len() == 1)
            .cloned()
            .collect())
    }

    pub fn is_dedekind(&self) -> Result<bool> {
        let lat = self.lattice()?;
        Ok((0..lat.len()).all(|i| lat.is_normal(i)))
    }

    /// Lower central series `G = γ1 ≥ γ2 ≥ …` until it stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole().clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, self.whole());
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotent residual `G^N`, the last term of the lower central series.
    pub fn nilpotent_residual(&self) -> Subgroup {
        self.lower_central_series().pop().expect("nonempty")
    }

    /// Carter subgroups in the classical sense: nilpotent and self-normalizing.
    pub fn carter_subgroups(&self) -> Result<Vec<Subgroup>> {
        Ok(self
            .lattice()?
            .subgroups()
            .iter()
            .filter(|h| self.is_nilpotent_subgroup(h) && self.normalizer(h) == **h)
            .cloned()
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().map(|s| s.order()).collect()
    }

    #[test]
    fn normal_subgroups_of_s4_and_a5() {
        let s4 = Group::symmetric(4).unwrap();
        assert_eq!(orders(s4.normal_subgroups()), vec![1, 4, 12, 24]);
        let a5 = Group::alternating(5).unwrap();
        assert_eq!(orders(a5.normal_subgroups()), vec![1, 60]);
        let v4 = Group::dihedral(4).unwrap();
        assert_eq!(v4.normal_subgroups().len(), 5);
    }

    #[test]
    fn minimal_normal_subgroups() {
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(orders(&s3.minimal_normal_subgroups().unwrap()), vec![3]);
        let v4 = Group::dihedral(4).unwrap();
        assert_eq!(orders(&v4.minimal_normal_subgroups().unwrap()), vec![2, 2, 2]);
        let a5 = Group::alternating(5).unwrap();
        assert_eq!(orders(&a5.minimal_normal_subgroups().unwrap()), vec![60]);
        assert_eq!(Group::trivial().minimal_normal_subgroups(), Err(GroupError::TrivialGroup));
    }

    #[test]
    fn chief_series_examples() {
        let s4 = Group::symmetric(4).unwrap();
        let cs = s4.chief_series();
        assert_eq!(cs.iter().map(|f| f.factor_order).collect::<Vec<_>>(), vec![4, 3, 2]);
        for f in &cs {
            assert!(s4.is_chief_factor(&f.top, &f.bottom));
        }
        let c6 = Group::cyclic(6);
        let mut fo: Vec<usize> = c6.chief_series().iter().map(|f| f.factor_order).collect();
        fo.sort();
        assert_eq!(fo, vec![2, 3]);
        let a5 = Group::alternating(5).unwrap();
        assert_eq!(a5.chief_series().len(), 1);
        assert!(Group::trivial().chief_series().is_empty());
    }

    #[test]
    fn sylow_subgroups() {
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(orders(&s3.sylow_subgroups(3)), vec![3]);
        let s4 = Group::symmetric(4).unwrap();
        assert_eq!(orders(&s4.sylow_subgroups(2)), vec![8, 8, 8]);
        let a5 = Group::alternating(5).unwrap();
        assert_eq!(a5.sylow_subgroups(5).len(), 6);
        assert_eq!(orders(&a5.sylow_subgroups(7)), vec![1]);
    }

    #[test]
    fn hall_subgroups() {
        let a5 = Group::alternating(5).unwrap();
        assert_eq!(orders(&a5.hall_subgroups(&[2, 3]).unwrap()), vec![12; 5]);
        assert!(a5.hall_subgroups(&[2, 5]).unwrap().is_empty());
        assert_eq!(orders(&a5.hall_subgroups(&[2, 3, 5]).unwrap()), vec![60]);
    }

    #[test]
    fn frattini_subgroups() {
        assert_eq!(Group::cyclic(4).frattini_subgroup().unwrap().order(), 2);
        assert!(Group::symmetric(3).unwrap().frattini_subgroup().unwrap().is_trivial());
        let q8 = Group::quaternion(8).unwrap();
        assert_eq!(q8.frattini_subgroup().unwrap(), q8.center());
    }

    #[test]
    fn complements_examples() {
        let s3 = Group::symmetric(3).unwrap();
        let c3 = s3.sylow_subgroups(3).remove(0);
        assert_eq!(orders(&s3.complements(&c3).unwrap()), vec![2, 2, 2]);
        let s4 = Group::symmetric(4).unwrap();
        let v4 = s4.normal_subgroups()[1].clone();
        assert!(!s4.complements(&v4).unwrap().is_empty());
        let q8 = Group::quaternion(8).unwrap();
        assert!(q8.complements(&q8.center()).unwrap().is_empty());
        let c2 = s3.sylow_subgroups(2).remove(0);
        assert!(s3.complements(&c2).is_err());
    }

    #[test]
    fn dedekind_and_nilpotent() {
        assert!(Group::quaternion(8).unwrap().is_dedekind().unwrap());
        assert!(Group::cyclic(12).is_dedekind().unwrap());
        assert!(!Group::symmetric(3).unwrap().is_dedekind().unwrap());
        let c12 = Group::cyclic(12);
        assert!(c12.is_nilpotent() && !c12.is_cyclic_squarefree());
        let c30 = Group::cyclic(30);
        assert!(c30.is_nilpotent() && c30.is_cyclic_squarefree());
        assert!(!Group::symmetric(3).unwrap().is_nilpotent());
    }

    #[test]
    fn residual_and_carter() {
        let s4 = Group::symmetric(4).unwrap();
        assert_eq!(s4.nilpotent_residual().order(), 12);
        assert_eq!(orders(&s4.carter_subgroups().unwrap()), vec![8, 8, 8]);
        assert_eq!(Group::symmetric(3).unwrap().nilpotent_residual().order(), 3);
    }
}
