//! At the finest partition every σ-notion collapses to its classical
//! counterpart, and at the coarsest one every group is σ-primary. This suite
//! compares the σ-machinery against classical oracles written independently.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::json;

use crate::analysis::Analysis;
use crate::arith;
use crate::embedding::{self, EmbeddingKind};
use crate::error::Result;
use crate::group::Group;
use crate::hse;
use crate::lemmas::Violation;
use crate::partition::PrimePartition;
use crate::sigma;
use crate::subgroup::Subgroup;
use crate::theorems::describe;

/// Nilpotent iff elements of coprime order commute.
pub fn is_nilpotent_oracle(g: &Group, a: &Subgroup) -> bool {
    let elems: Vec<usize> = a.elements().collect();
    elems.iter().all(|&x| {
        elems.iter().all(|&y| {
            arith::gcd(g.element_order(x) as u64, g.element_order(y) as u64) != 1 || g.mul(x, y) == g.mul(y, x)
        })
    })
}

/// Normal closure of `a` inside the subgroup `within`.
fn normal_closure_in(g: &Group, a: &Subgroup, within: &Subgroup) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    for x in within.elements() {
        for &y in a.gens() {
            gens.push(g.conj(y, x));
        }
    }
    g.subgroup_generated(&gens)
}

/// Subnormal iff the series of successive normal closures reaches `a`.
pub fn is_subnormal_oracle(g: &Group, a: &Subgroup) -> bool {
    let mut current = g.whole().clone();
    loop {
        let next = normal_closure_in(g, a, &current);
        if next == *a {
            return true;
        }
        if next == current {
            return false;
        }
        current = next;
    }
}

/// Carter subgroups as nilpotent self-normalizing subgroups.
pub fn carter_oracle(g: &Group) -> Result<BTreeSet<Subgroup>> {
    Ok(g.lattice()?
        .subgroups()
        .iter()
        .filter(|h| is_nilpotent_oracle(g, h) && g.normalizer(h) == **h)
        .cloned()
        .collect())
}

/// Compares the σ-predicates at the finest and coarsest partitions with
/// their classical meanings.
pub fn degeneration_suite(g: &Arc<Group>) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    let mut flag = |check: &str, holds: bool, inst: serde_json::Value, detail: &str| {
        if !holds {
            out.push(Violation { check: check.into(), instantiation: inst, detail: detail.into() });
        }
    };
    let finest = Analysis::new(g.clone(), PrimePartition::finest());
    let lat = finest.lattice()?;
    let normals = g.normal_subgroups();
    let reps: Vec<usize> = lat.classes().iter().map(|c| c[0]).collect();

    for i in 0..lat.len() {
        let a = lat.get(i);
        let sigma_perm = finest.is_permutable(i)?;
        flag(
            "permutable-vs-s-permutable",
            sigma_perm == embedding::is_s_permutable(g, a),
            json!({ "a": describe(a), "sigma_permutable": sigma_perm }),
            "σ-permutability at the finest partition differs from S-permutability",
        );
    }

    for &i in &reps {
        let a = lat.get(i);
        let hall_normal = normals
            .iter()
            .any(|v| a.is_subgroup_of(v) && arith::gcd(a.order() as u64, (v.order() / a.order()) as u64) == 1);
        let embedded = finest.is_embedded(i, EmbeddingKind::Normal)?;
        flag(
            "normally-embedded-vs-hall-normally-embedded",
            embedded == hall_normal,
            json!({ "a": describe(a), "sigma": embedded, "classical": hall_normal }),
            "H_σ-normal embedding at the finest partition differs from Hall normal embedding",
        );
        let sub = finest.is_subnormal(i)?;
        let classical = is_subnormal_oracle(g, a);
        flag(
            "subnormal-vs-classical",
            sub == classical,
            json!({ "a": describe(a), "sigma": sub, "classical": classical }),
            "σ-subnormality at the finest partition differs from subnormality",
        );
        let nil = sigma::is_sigma_nilpotent_subgroup(finest.sigma(), g, a);
        let classical = is_nilpotent_oracle(g, a);
        flag(
            "nilpotent-vs-classical",
            nil == classical,
            json!({ "a": describe(a), "sigma": nil, "classical": classical }),
            "σ-nilpotency at the finest partition differs from nilpotency",
        );
    }

    if sigma::is_sigma_soluble(finest.sigma(), g) {
        let sigma_carter: BTreeSet<Subgroup> = hse::sigma_carter_subgroups(finest.sigma(), g)?.into_iter().collect();
        let classical = carter_oracle(g)?;
        flag(
            "carter-vs-classical",
            sigma_carter == classical,
            json!({
                "sigma_carter_orders": sigma_carter.iter().map(|s| s.order()).collect::<Vec<_>>(),
                "classical_orders": classical.iter().map(|s| s.order()).collect::<Vec<_>>(),
            }),
            "σ-Carter subgroups at the finest partition differ from Carter subgroups",
        );
    }

    let coarsest = PrimePartition::coarsest();
    let primary = sigma::is_sigma_primary(&coarsest, g.order());
    let nilpotent = sigma::is_sigma_nilpotent(&coarsest, g);
    let soluble = sigma::is_sigma_soluble(&coarsest, g);
    flag(
        "coarsest-is-primary",
        primary && nilpotent && soluble,
        json!({ "primary": primary, "nilpotent": nilpotent, "soluble": soluble }),
        "a group is not σ-primary, σ-nilpotent and σ-soluble at the coarsest partition",
    );
    Ok(out)
}
