//! Property tests over corpus groups and random prime partitions.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use hsigma::analysis::Analysis;
use hsigma::embedding::{self, EmbeddingKind};
use hsigma::theorems::{self, CheckOptions};
use hsigma::{arith, corpus, dsl, sigma, Group, GroupError, PrimePartition, Subgroup};
use proptest::prelude::*;

/// Corpus groups small enough to sweep inside a property test.
fn groups() -> &'static [(String, Arc<Group>)] {
    static GROUPS: OnceLock<Vec<(String, Arc<Group>)>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        corpus::corpus_manifest()
            .into_iter()
            .filter_map(|e| {
                let g = dsl::group(&e.spec).ok()?;
                (g.order() <= 60).then(|| (e.spec, Arc::new(g)))
            })
            .collect()
    })
}

fn group_index() -> impl Strategy<Value = usize> {
    0..groups().len()
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// A partition of the first few primes into labelled blocks; label 0 is the
/// residual block.
fn partition() -> impl Strategy<Value = PrimePartition> {
    prop_oneof![
        Just(PrimePartition::finest()),
        proptest::collection::vec(0usize..4, PRIMES.len()).prop_map(|labels| {
            let blocks: Vec<Vec<u64>> = (1..4)
                .map(|l| PRIMES.iter().zip(&labels).filter(|(_, &x)| x == l).map(|(&p, _)| p).collect::<Vec<_>>())
                .filter(|b| !b.is_empty())
                .collect();
            PrimePartition::from_blocks(blocks).expect("disjoint blocks")
        }),
    ]
}

fn closed(g: &Group, a: &Subgroup) -> bool {
    a.elements().all(|x| a.contains(g.inv(x)) && a.elements().all(|y| a.contains(g.mul(x, y))))
}

/// Every subgroup, as the closures of all element subsets.
fn brute_force_subgroups(g: &Group) -> BTreeSet<Vec<usize>> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let mut set: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        set.insert(g.identity());
        loop {
            let next: BTreeSet<usize> = set.iter().flat_map(|&x| set.iter().map(move |&y| (x, y))).map(|(x, y)| g.mul(x, y)).chain(set.iter().copied()).collect();
            if next.len() == set.len() {
                break;
            }
            set = next;
        }
        out.insert(set.into_iter().collect());
    }
    out
}

#[test]
fn subgroup_counts_match_closure_enumeration() {
    for (spec, count) in [("sym(3)", 6), ("cyclic(4)", 3), ("quaternion(8)", 6), ("direct(cyclic(2), cyclic(2))", 5), ("alt(4)", 10)] {
        let g = dsl::group(spec).unwrap();
        let brute = brute_force_subgroups(&g);
        let lattice: BTreeSet<Vec<usize>> = g.lattice().unwrap().subgroups().iter().map(|s| s.elements().collect()).collect();
        assert_eq!(brute.len(), count, "{spec}");
        assert_eq!(lattice, brute, "{spec}");
    }
}

#[test]
fn bulk_flags_match_standalone_searches() {
    for (spec, sigma) in [("sym(4)", "finest"), ("sym(4)", "{3}|rest"), ("alt(4)", "finest"), ("alt(4)", "{2}|rest"), ("alt(5)", "{2,3}|rest")] {
        let g = Arc::new(dsl::group(spec).unwrap());
        let s = PrimePartition::parse(sigma).unwrap();
        let a = Analysis::new(g.clone(), s.clone());
        for (i, sub) in g.lattice().unwrap().subgroups().iter().enumerate() {
            assert_eq!(a.is_subnormal(i).unwrap(), embedding::is_sigma_subnormal(&s, &g, sub).is_some(), "{spec} {sigma} #{i}");
            if sigma::is_sigma_full(&s, &g).unwrap() {
                assert_eq!(a.is_permutable(i).unwrap(), embedding::is_sigma_permutable(&s, &g, sub).unwrap().is_some());
            }
            for kind in [EmbeddingKind::Subnormal, EmbeddingKind::Normal] {
                assert_eq!(a.is_embedded(i, kind).unwrap(), embedding::is_h_sigma_embedded(&s, &g, sub, kind).unwrap().is_some());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn tables_are_latin_squares_and_associative(gi in group_index()) {
        let g = &groups()[gi].1;
        prop_assert!(g.check_axioms(128));
        let n = g.order();
        for x in 0..n {
            let row: BTreeSet<usize> = (0..n).map(|y| g.mul(x, y)).collect();
            let col: BTreeSet<usize> = (0..n).map(|y| g.mul(y, x)).collect();
            prop_assert_eq!(row.len(), n);
            prop_assert_eq!(col.len(), n);
        }
    }

    #[test]
    fn generated_subgroups_are_closed_and_obey_lagrange(gi in group_index(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let g = &groups()[gi].1;
        let elems: Vec<usize> = picks.iter().map(|i| i.index(g.order())).collect();
        let a = g.subgroup_generated(&elems);
        prop_assert!(closed(g, &a));
        prop_assert!(elems.iter().all(|&x| a.contains(x)));
        prop_assert_eq!(g.order() % a.order(), 0);
    }

    #[test]
    fn sylow_counts_are_one_mod_p(gi in group_index()) {
        let g = &groups()[gi].1;
        for p in arith::prime_divisors(g.order() as u64) {
            let syl = g.sylow_subgroups(p);
            prop_assert_eq!(syl.len() as u64 % p, 1);
            let full = arith::p_part(g.order() as u64, p);
            prop_assert!(syl.iter().all(|s| s.order() as u64 == full && closed(g, s)));
        }
    }

    #[test]
    fn chief_series_factors_are_chief(gi in group_index()) {
        let g = &groups()[gi].1;
        let series = g.chief_series();
        prop_assert_eq!(series.iter().map(|f| f.factor_order).product::<usize>(), g.order());
        let normals: Vec<&Subgroup> = g.lattice().unwrap().subgroups().iter().filter(|s| g.is_normal(s)).collect();
        for f in &series {
            prop_assert_eq!(f.top.order() / f.bottom.order(), f.factor_order);
            prop_assert!(g.is_normal(&f.top) && g.is_normal(&f.bottom) && f.bottom.is_subgroup_of(&f.top));
            let between = normals.iter().filter(|n| f.bottom.is_subgroup_of(n) && n.is_subgroup_of(&f.top)).count();
            prop_assert_eq!(between, 2);
        }
    }

    #[test]
    fn quotient_preimage_then_image_is_identity(gi in group_index(), ni in any::<prop::sample::Index>()) {
        let g = &groups()[gi].1;
        let normals = g.normal_subgroups();
        let n = &normals[ni.index(normals.len())];
        let q = g.quotient(n).unwrap();
        prop_assert_eq!(q.target().order() * n.order(), g.order());
        for b in q.target().lattice().unwrap().subgroups() {
            let pre = q.preimage(g, b);
            prop_assert!(n.is_subgroup_of(&pre));
            prop_assert_eq!(&q.image(&pre), b);
        }
    }

    #[test]
    fn sigma_hall_is_the_full_block_part(gi in group_index(), s in partition()) {
        let g = &groups()[gi].1;
        let order = g.order() as u64;
        for a in g.lattice().unwrap().subgroups() {
            let sig = s.sigma_of_int(a.order() as u64);
            let part: u64 = s.restricted_to(order)
                .iter()
                .filter(|block| block.iter().any(|&p| a.order() as u64 % p == 0))
                .flat_map(|block| block.iter().map(|&p| arith::p_part(order, p)))
                .product();
            prop_assert_eq!(sigma::is_sigma_hall(&s, g, a), a.order() as u64 == part, "{:?} {}", sig, a.order());
        }
    }

    #[test]
    fn hall_sets_have_block_part_orders(gi in group_index(), s in partition()) {
        let g = &groups()[gi].1;
        for set in sigma::complete_hall_sigma_sets(&s, g).unwrap().iter().take(8) {
            for (b, h) in set.iter() {
                prop_assert_eq!(h.order() as u64, s.block_part(g.order() as u64, b));
            }
        }
    }

    #[test]
    fn finest_nilpotency_is_classical(gi in group_index()) {
        let g = &groups()[gi].1;
        prop_assert_eq!(sigma::is_sigma_nilpotent(&PrimePartition::finest(), g), g.is_nilpotent());
    }

    #[test]
    fn solubility_closed_under_subgroups_quotients_products(gi in group_index(), hi in group_index(), s in partition(), pick in any::<prop::sample::Index>()) {
        let g = &groups()[gi].1;
        if sigma::is_sigma_soluble(&s, g) {
            let subs = g.lattice().unwrap().subgroups();
            let a = &subs[pick.index(subs.len())];
            prop_assert!(sigma::is_sigma_soluble(&s, &g.induced(a).0));
            let normals = g.normal_subgroups();
            let n = &normals[pick.index(normals.len())];
            prop_assert!(sigma::is_sigma_soluble(&s, g.quotient(n).unwrap().target()));
            let h = &groups()[hi].1;
            if sigma::is_sigma_soluble(&s, h) && g.order() * h.order() <= 600 {
                let gh = Group::direct_product(g, h, 600).unwrap();
                prop_assert!(sigma::is_sigma_soluble(&s, &gh));
            }
        }
    }

    #[test]
    fn witnesses_revalidate(gi in group_index(), s in partition()) {
        let g = &groups()[gi].1;
        let full = sigma::is_sigma_full(&s, g).unwrap();
        for a in g.lattice().unwrap().subgroups() {
            if let Some(w) = embedding::is_sigma_subnormal(&s, g, a) {
                prop_assert!(embedding::validate_subnormal_chain(&s, g, a, &w));
            }
            if full {
                if let Some(w) = embedding::is_sigma_permutable(&s, g, a).unwrap() {
                    prop_assert!(embedding::validate_permutable_witness(&s, g, a, &w));
                }
            }
            for kind in [EmbeddingKind::Subnormal, EmbeddingKind::Normal] {
                if let Some(w) = embedding::is_h_sigma_embedded(&s, g, a, kind).unwrap() {
                    prop_assert!(embedding::validate_embedding_witness(&s, g, a, &w));
                }
            }
        }
    }

    #[test]
    fn theorems_hold_at_random_partitions(gi in group_index(), s in partition()) {
        let (spec, g) = &groups()[gi];
        let a = Analysis::new(g.clone(), s.clone());
        let o = CheckOptions::default();
        let mut first_conditions = Vec::new();
        for r in [
            theorems::check_theorem_1_3(&a, spec, &o),
            theorems::check_theorem_1_4(&a, spec, &o),
            theorems::check_theorem_1_7(&a, spec, &o),
            theorems::check_theorem_1_9(&a, spec, &o),
        ] {
            match r {
                Ok(r) => {
                    prop_assert!(r.equivalent, "{} at {}: {} {:?}", spec, s, r.theorem, r.vector());
                    first_conditions.push((r.theorem.clone(), r.vector()[0]));
                }
                Err(GroupError::NotSigmaFull { .. }) => prop_assert!(!sigma::is_sigma_full(&s, g).unwrap()),
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
        let holds = |t: &str| first_conditions.iter().find(|(x, _)| x == t).map(|(_, v)| *v);
        if let (Some(normal), Some(permutable)) = (holds("1.7"), holds("1.9")) {
            prop_assert!(!normal || permutable);
        }
    }
}
