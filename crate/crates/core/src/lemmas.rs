//! Randomized property suite for the structural lemmas on σ-subnormal and
//! σ-permutable subgroups, Hall subgroups, residuals and chief factors.
//! Violations are data: each one carries the full instantiation.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::Analysis;
use crate::arith;
use crate::embedding;
use crate::error::Result;
use crate::group::Group;
use crate::hse;
use crate::lattice::Lattice;
use crate::partition::{Block, PrimePartition};
use crate::sigma;
use crate::subgroup::Subgroup;
use crate::theorems::describe;

/// Largest group order for which the chief-factor isomorphism is built
/// element by element.
const ISOMORPHISM_MAX_ORDER: usize = 120;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub check: String,
    pub instantiation: Value,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct LemmaBudget {
    /// Draws per clause.
    pub samples: usize,
    /// How many containers `K` and normal subgroups `N` get their own
    /// sub- or quotient analysis.
    pub pool: usize,
    pub seed: u64,
}

impl Default for LemmaBudget {
    fn default() -> Self {
        LemmaBudget { samples: 48, pool: 8, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LemmaOutcome {
    /// Checked instantiations per clause.
    pub instantiations: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
}

impl LemmaOutcome {
    pub fn total(&self) -> usize {
        self.instantiations.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Suite<'a> {
    a: &'a Analysis,
    g: &'a Group,
    lat: &'a Lattice,
    sigma: &'a PrimePartition,
    rng: ChaCha8Rng,
    budget: &'a LemmaBudget,
    out: LemmaOutcome,
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> Option<T> {
    items.choose(rng).copied()
}

/// Subgroup of `a` generated by its elements of σ_i'-order.
fn block_residual_of(sigma: &PrimePartition, g: &Group, a: &Subgroup, block: Block) -> Subgroup {
    let elems: Vec<usize> = a
        .elements()
        .filter(|&x| !sigma.sigma_of_int(g.element_order(x) as u64).contains(block))
        .collect();
    g.subgroup_generated(&elems)
}

impl<'a> Suite<'a> {
    fn record(&mut self, check: &str, holds: bool, inst: Value, detail: &str) {
        *self.out.instantiations.entry(check.to_string()).or_default() += 1;
        if !holds {
            self.out.violations.push(Violation {
                check: check.to_string(),
                instantiation: inst,
                detail: detail.to_string(),
            });
        }
    }

    fn sub(&self, i: usize) -> &'a Subgroup {
        self.lat.get(i)
    }

    fn idx(&self, s: &Subgroup) -> usize {
        self.lat.index_of(s.members()).expect("subgroup")
    }

    /// A random non-empty set of blocks of `σ(G)`.
    fn random_pi(&mut self) -> Vec<Block> {
        let blocks = sigma::group_blocks(self.sigma, self.g);
        let mut pi: Vec<Block> = blocks.iter().copied().filter(|_| self.rng.gen_bool(0.5)).collect();
        if pi.is_empty() {
            if let Some(b) = pick(&mut self.rng, &blocks) {
                pi.push(b);
            }
        }
        pi
    }

    fn in_pi(&self, pi: &[Block], p: u64) -> bool {
        pi.contains(&self.sigma.block_of(p))
    }

    fn pi_part(&self, pi: &[Block], n: usize) -> usize {
        arith::part_where(n as u64, |p| self.in_pi(pi, p)) as usize
    }

    fn pi_json(&self, pi: &[Block]) -> Value {
        json!(pi.iter().map(|&b| self.sigma.block_name(b)).collect::<Vec<_>>())
    }

    fn pool(&mut self, candidates: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = candidates
            .choose_multiple(&mut self.rng, self.budget.pool.min(candidates.len()))
            .copied()
            .collect();
        v.sort_unstable();
        v
    }

    fn run(&mut self) -> Result<()> {
        let n = self.lat.len();
        let all: Vec<usize> = (0..n).collect();
        let flags = self.a.subnormal_flags()?;
        let subnormal: Vec<usize> = all.iter().copied().filter(|&i| flags[i]).collect();
        let normal = self.lat.normal_indices();
        let pool_k = self.pool(&all);
        let pool_n = self.pool(&normal);
        let pool_sub = self.pool(&subnormal);
        let soluble = sigma::is_sigma_soluble(self.sigma, self.g);

        self.subnormal_clauses(&subnormal, &pool_k, &pool_n, &pool_sub)?;
        if self.a.is_sigma_full()? {
            let permutable: Vec<usize> = all
                .iter()
                .copied()
                .filter(|&i| self.a.is_permutable(i).unwrap_or(false))
                .collect();
            self.permutable_clauses(&permutable, &pool_k, &pool_n, soluble)?;
        }
        self.frattini_clause(&normal)?;
        self.nilpotent_residual_clause(&pool_k, &pool_n)?;
        if soluble {
            self.basis_clauses()?;
            self.normalizer_clause(&subnormal)?;
        }
        self.chief_factor_clause()?;
        Ok(())
    }

    fn subnormal_clauses(&mut self, subnormal: &[usize], pool_k: &[usize], pool_n: &[usize], pool_sub: &[usize]) -> Result<()> {
        let g = self.g;
        let samples = self.budget.samples;

        for _ in 0..samples {
            let (Some(ai), Some(ki)) = (pick(&mut self.rng, subnormal), pick(&mut self.rng, pool_k)) else { break };
            let (a, k) = (self.sub(ai).clone(), self.sub(ki).clone());
            let local = self.a.sub_analysis(ki)?;
            let x = local.restrict(&g.intersection(&a, &k));
            let holds = local.analysis.is_subnormal_subgroup(&x)?;
            self.record("2.1(1)", holds, json!({ "a": describe(&a), "k": describe(&k) }), "A∩K is not σ-subnormal in K");
        }

        for _ in 0..samples {
            let (Some(ai), Some(ki)) = (pick(&mut self.rng, subnormal), pick(&mut self.rng, subnormal)) else { break };
            let (a, k) = (self.sub(ai).clone(), self.sub(ki).clone());
            let meet = self.idx(&g.intersection(&a, &k));
            let join = self.idx(&g.join(&a, &k));
            let holds = self.a.is_subnormal(meet)? && self.a.is_subnormal(join)?;
            self.record("2.1(2)", holds, json!({ "a": describe(&a), "k": describe(&k) }), "A∩K or <A,K> is not σ-subnormal");
        }

        for _ in 0..samples {
            let (Some(ai), Some(ni)) = (pick(&mut self.rng, subnormal), pick(&mut self.rng, pool_n)) else { break };
            let q = self.a.quotient_analysis(ni)?;
            let image = q.map.image(self.sub(ai));
            let holds = q.analysis.is_subnormal_subgroup(&image)?;
            self.record("2.1(3)", holds, json!({ "a": describe(self.sub(ai)), "n": describe(self.sub(ni)) }), "AN/N is not σ-subnormal in G/N");
        }

        for _ in 0..samples {
            let Some(ai) = pick(&mut self.rng, subnormal) else { break };
            let pi = self.random_pi();
            let target = self.pi_part(&pi, g.order());
            let halls: Vec<usize> = (0..self.lat.len()).filter(|&i| self.sub(i).order() == target).collect();
            let Some(hi) = pick(&mut self.rng, &halls) else { continue };
            let (a, h) = (self.sub(ai), self.sub(hi));
            if h.is_trivial() || self.pi_part(&pi, a.order()) == 1 {
                continue;
            }
            let x = g.intersection(a, h);
            let holds = !x.is_trivial() && x.order() == self.pi_part(&pi, a.order());
            let inst = json!({ "a": describe(a), "h": describe(h), "pi": self.pi_json(&pi) });
            self.record("2.1(4)", holds, inst, "A∩H is not a non-trivial Hall Π-subgroup of A");
        }

        let primary_index: Vec<usize> = subnormal
            .iter()
            .copied()
            .filter(|&i| {
                let index = (g.order() / self.sub(i).order()) as u64;
                index > 1 && self.sigma.is_primary_number(index)
            })
            .collect();
        for _ in 0..samples {
            let Some(ai) = pick(&mut self.rng, &primary_index) else { break };
            let a = self.sub(ai);
            let index = (g.order() / a.order()) as u64;
            let block = self.sigma.block_of(arith::prime_divisors(index)[0]);
            let holds = block_residual_of(self.sigma, g, a, block) == hse::block_residual(self.sigma, g, block);
            let inst = json!({ "a": describe(a), "block": self.sigma.block_name(block) });
            self.record("2.1(5)", holds, inst, "O^{σ_i}(A) differs from O^{σ_i}(G)");
        }

        for _ in 0..samples {
            let Some(ni) = pick(&mut self.rng, pool_n) else { break };
            let q = self.a.quotient_analysis(ni)?;
            let qflags = q.analysis.subnormal_flags()?;
            let candidates: Vec<usize> = (0..qflags.len()).filter(|&i| qflags[i]).collect();
            let Some(vi) = pick(&mut self.rng, &candidates) else { continue };
            let v = q.map.preimage(g, q.analysis.subgroup(vi)?);
            let holds = self.a.is_subnormal_subgroup(&v)?;
            self.record("2.1(6)", holds, json!({ "n": describe(self.sub(ni)), "v": describe(&v) }), "preimage of a σ-subnormal subgroup of G/N is not σ-subnormal");
        }

        for _ in 0..samples {
            let Some(ai) = pick(&mut self.rng, pool_sub) else { break };
            let local = self.a.sub_analysis(ai)?;
            let lflags = local.analysis.subnormal_flags()?;
            let candidates: Vec<usize> = (0..lflags.len()).filter(|&i| lflags[i]).collect();
            let Some(ki) = pick(&mut self.rng, &candidates) else { continue };
            let k = local.lift(g, local.analysis.subgroup(ki)?);
            let holds = self.a.is_subnormal_subgroup(&k)?;
            self.record("2.1(7)", holds, json!({ "a": describe(self.sub(ai)), "k": describe(&k) }), "K σ-subnormal in σ-subnormal A but not in G");
        }
        Ok(())
    }

    fn permutable_clauses(&mut self, permutable: &[usize], pool_k: &[usize], pool_n: &[usize], soluble: bool) -> Result<()> {
        let g = self.g;
        let samples = self.budget.samples;

        for _ in 0..samples {
            let (Some(ai), Some(ni)) = (pick(&mut self.rng, permutable), pick(&mut self.rng, pool_n)) else { break };
            let q = self.a.quotient_analysis(ni)?;
            let image = q.map.image(self.sub(ai));
            let holds = q.analysis.index(&image).and_then(|i| q.analysis.is_permutable(i)).unwrap_or(false);
            self.record("2.2(1)", holds, json!({ "a": describe(self.sub(ai)), "n": describe(self.sub(ni)) }), "AN/N is not σ-permutable in G/N");
        }

        for _ in 0..samples {
            let Some(ai) = pick(&mut self.rng, permutable) else { break };
            let holds = self.a.is_subnormal(ai)?;
            self.record("2.2(4)", holds, json!({ "a": describe(self.sub(ai)) }), "σ-permutable subgroup is not σ-subnormal");
        }

        if !soluble {
            return Ok(());
        }

        for _ in 0..samples {
            let (Some(ai), Some(ki)) = (pick(&mut self.rng, permutable), pick(&mut self.rng, pool_k)) else { break };
            let (a, k) = (self.sub(ai).clone(), self.sub(ki).clone());
            let local = self.a.sub_analysis(ki)?;
            let x = local.restrict(&g.intersection(&a, &k));
            let holds = local
                .analysis
                .index(&x)
                .and_then(|i| local.analysis.is_permutable(i))
                .unwrap_or(false);
            self.record("2.2(2)", holds, json!({ "a": describe(&a), "k": describe(&k) }), "A∩K is not σ-permutable in K");
        }

        for _ in 0..samples {
            let Some(ni) = pick(&mut self.rng, pool_n) else { break };
            let q = self.a.quotient_analysis(ni)?;
            let candidates: Vec<usize> = (0..q.analysis.lattice()?.len())
                .filter(|&i| q.analysis.is_permutable(i).unwrap_or(false))
                .collect();
            let Some(ki) = pick(&mut self.rng, &candidates) else { continue };
            let k = q.map.preimage(g, q.analysis.subgroup(ki)?);
            let holds = self.a.is_permutable(self.idx(&k))?;
            self.record("2.2(3)", holds, json!({ "n": describe(self.sub(ni)), "k": describe(&k) }), "preimage of a σ-permutable subgroup of G/N is not σ-permutable");
        }

        for _ in 0..samples {
            let (Some(ai), Some(ki)) = (pick(&mut self.rng, permutable), pick(&mut self.rng, permutable)) else { break };
            let x = g.intersection(self.sub(ai), self.sub(ki));
            let holds = self.a.is_permutable(self.idx(&x))?;
            self.record("2.2(5)", holds, json!({ "a": describe(self.sub(ai)), "k": describe(self.sub(ki)) }), "K∩A is not σ-permutable");
        }
        Ok(())
    }

    fn frattini_clause(&mut self, normal: &[usize]) -> Result<()> {
        let g = self.g;
        let phi = g.frattini_subgroup()?;
        for _ in 0..self.budget.samples {
            let Some(hi) = pick(&mut self.rng, normal) else { break };
            let h = self.sub(hi).clone();
            let h_phi = g.intersection(&h, &phi);
            let pi = self.random_pi();
            let top = h.order() / h_phi.order();
            if self.pi_part(&pi, top) == top {
                let e = g.normal_hall_in(&h, |p| self.in_pi(&pi, p));
                let holds = e.as_ref().is_some_and(|e| g.is_normal(e));
                let inst = json!({ "h": describe(&h), "pi": self.pi_json(&pi) });
                self.record("2.3", holds, inst, "H has no Hall Π-subgroup normal in G");
            }
            let local = self.a.sub_analysis(hi)?;
            let below = local.restrict(&h_phi);
            if hse::quotient_is_sigma_nilpotent(self.sigma, local.analysis.group(), &below) {
                let holds = sigma::is_sigma_nilpotent_subgroup(self.sigma, g, &h);
                self.record("2.3(nilpotent)", holds, json!({ "h": describe(&h) }), "H/H∩Φ(G) is σ-nilpotent but H is not");
            }
        }
        Ok(())
    }

    /// Checked on `G` and on the pooled subgroups and quotients.
    fn nilpotent_residual_clause(&mut self, pool_k: &[usize], pool_n: &[usize]) -> Result<()> {
        let mut groups: Vec<(Value, std::sync::Arc<Group>)> = vec![(json!("G"), self.a.shared_group().clone())];
        for &k in pool_k {
            groups.push((json!({ "subgroup": describe(self.sub(k)) }), self.a.sub_analysis(k)?.analysis.shared_group().clone()));
        }
        for &n in pool_n {
            groups.push((json!({ "quotient_by": describe(self.sub(n)) }), self.a.quotient_analysis(n)?.analysis.shared_group().clone()));
        }
        for (inst, h) in groups {
            let d = hse::sigma_nilpotent_residual(self.sigma, &h);
            let below: Vec<_> = h
                .chief_series_through(std::slice::from_ref(&d))
                .into_iter()
                .filter(|f| f.top.is_subgroup_of(&d))
                .collect();
            if below.iter().all(|f| arith::is_prime(f.factor_order as u64)) {
                let holds = h.is_nilpotent_subgroup(&d);
                self.record("2.4", holds, inst, "chief factors below the residual are cyclic but it is not nilpotent");
            }
        }
        Ok(())
    }

    fn basis_clauses(&mut self) -> Result<()> {
        let g = self.g;
        let sigma = self.sigma;
        let g_permutes = |p: &Subgroup, q: &Subgroup| embedding::conjugates(g, q).iter().any(|qx| g.permutes(p, qx));
        let sylows_in = |h: &Subgroup| -> Vec<Subgroup> {
            arith::prime_divisors(h.order() as u64)
                .into_iter()
                .flat_map(|p| g.sylow_subgroups(p))
                .filter(|s| s.is_subgroup_of(h))
                .collect()
        };
        let good_basis = |members: &[Subgroup]| {
            members.iter().enumerate().all(|(i, hi)| {
                members.iter().skip(i + 1).all(|hj| {
                    g.permutes(hi, hj)
                        && sylows_in(hi).iter().all(|p| sylows_in(hj).iter().all(|q| g_permutes(p, q)))
                })
            })
        };
        let mut found = match sigma::sigma_basis(sigma, g)? {
            Some(b) => good_basis(&b.iter().map(|(_, h)| h.clone()).collect::<Vec<_>>()),
            None => false,
        };
        if !found {
            found = sigma::complete_hall_sigma_sets(sigma, g)?
                .iter()
                .any(|s| good_basis(&s.iter().map(|(_, h)| h.clone()).collect::<Vec<_>>()));
        }
        self.record("2.6(i)", found, json!({}), "no σ-basis whose Sylow subgroups G-permute across blocks");

        let all_sylows: Vec<Subgroup> = arith::prime_divisors(g.order() as u64)
            .into_iter()
            .flat_map(|p| g.sylow_subgroups(p))
            .collect();
        for _ in 0..self.budget.samples {
            let pi = self.random_pi();
            let target = self.pi_part(&pi, g.order());
            let halls: Vec<usize> = (0..self.lat.len()).filter(|&i| self.sub(i).order() == target).collect();
            let pi_subgroups: Vec<usize> = (0..self.lat.len())
                .filter(|&i| self.pi_part(&pi, self.sub(i).order()) == self.sub(i).order())
                .collect();
            let s = pick(&mut self.rng, &pi_subgroups).expect("trivial subgroup is a Π-subgroup");
            let p = all_sylows.choose(&mut self.rng).cloned();
            let inst = json!({ "pi": self.pi_json(&pi), "s": describe(self.sub(s)) });
            let Some(&e) = halls.first() else {
                self.record("2.6(ii)", false, inst, "no Hall Π-subgroup");
                continue;
            };
            let e = self.sub(e);
            let covered = embedding::conjugates(g, e).iter().any(|ex| self.sub(s).is_subgroup_of(ex));
            let permutes = p.as_ref().is_none_or(|p| g_permutes(e, p));
            self.record("2.6(ii)", covered && permutes, inst, "Π-subgroup outside every conjugate of E, or E does not G-permute with a Sylow subgroup");
        }
        Ok(())
    }

    fn normalizer_clause(&mut self, subnormal: &[usize]) -> Result<()> {
        let g = self.g;
        let candidates: Vec<usize> = subnormal
            .iter()
            .copied()
            .filter(|&i| {
                let index = (g.order() / self.sub(i).order()) as u64;
                index > 1 && self.sigma.is_primary_number(index)
            })
            .collect();
        for _ in 0..self.budget.samples {
            let Some(hi) = pick(&mut self.rng, &candidates) else { break };
            let h = self.sub(hi);
            let index = (g.order() / h.order()) as u64;
            let block = self.sigma.block_of(arith::prime_divisors(index)[0]);
            let target = arith::part_where(h.order() as u64, |p| !self.sigma.in_block(p, block)) as usize;
            let complements: Vec<usize> = self.lat.below(hi).filter(|&j| self.sub(j).order() == target).collect();
            let Some(bi) = pick(&mut self.rng, &complements) else {
                self.record("2.8", false, json!({ "h": describe(h) }), "H has no σ_i-complement");
                continue;
            };
            let b = self.sub(bi);
            let holds = g.product_set(h, &g.normalizer(b)).len() == g.order();
            let inst = json!({ "h": describe(h), "b": describe(b), "block": self.sigma.block_name(block) });
            self.record("2.8", holds, inst, "G ≠ H N_G(B)");
        }
        Ok(())
    }

    fn chief_factor_clause(&mut self) -> Result<()> {
        let g = self.g;
        let mut series = vec![g.chief_series()];
        if !g.whole().is_trivial() {
            for m in g.minimal_normal_subgroups()? {
                series.push(g.chief_series_through(&[m]));
            }
        }
        let maximal = g.maximal_subgroups()?;
        let mut seen = std::collections::BTreeSet::new();
        let mut checked = 0;
        for f in series.into_iter().flatten() {
            if g.commutator_subgroup(&f.top, &f.top).is_subgroup_of(&f.bottom) {
                for v in &maximal {
                    if checked >= self.budget.samples {
                        return Ok(());
                    }
                    if !f.bottom.is_subgroup_of(v) || f.top.is_subgroup_of(v) {
                        continue;
                    }
                    if !seen.insert((f.top.members().to_vec(), f.bottom.members().to_vec(), v.members().to_vec())) {
                        continue;
                    }
                    checked += 1;
                    let core = g.normal_core(v);
                    let factor = f.top.order() / f.bottom.order();
                    let mut holds = g.order() / core.order() == factor * (g.order() / f.centralizer.order());
                    let mut detail = "|G/V_G| differs from |H/K|·|G/C_G(H/K)|";
                    if holds && g.order() <= ISOMORPHISM_MAX_ORDER && !factor_isomorphism(g, &f.top, &f.bottom, v, &f.centralizer, &core) {
                        holds = false;
                        detail = "G/V_G is not isomorphic to (H/K) ⋊ (G/C_G(H/K)) via the natural map";
                    }
                    let inst = json!({ "h": describe(&f.top), "k": describe(&f.bottom), "v": describe(v) });
                    self.record("2.9", holds, inst, detail);
                }
            }
        }
        Ok(())
    }
}

/// Coset numbering of `sub` in `within` (left cosets), `usize::MAX` outside.
fn coset_ids(g: &Group, within: &Subgroup, sub: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut ids = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in within.elements() {
        if ids[x] == usize::MAX {
            for k in sub.elements() {
                ids[g.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
    }
    (ids, reps)
}

/// Checks that `g = hv ↦ (hK, gC)` is a well-defined homomorphism onto
/// `(H/K) ⋊ (G/C)` with kernel `core`.
fn factor_isomorphism(g: &Group, h: &Subgroup, k: &Subgroup, v: &Subgroup, c: &Subgroup, core: &Subgroup) -> bool {
    let (hk, hk_reps) = coset_ids(g, h, k);
    let (gc, gc_reps) = coset_ids(g, g.whole(), c);
    let mut phi = vec![(usize::MAX, usize::MAX); g.order()];
    for x in 0..g.order() {
        let mut part = None;
        for y in h.elements() {
            if v.contains(g.mul(g.inv(y), x)) {
                match part {
                    None => part = Some(hk[y]),
                    Some(p) if p != hk[y] => return false,
                    _ => {}
                }
            }
        }
        let Some(part) = part else { return false };
        phi[x] = (part, gc[x]);
    }
    let target_mul = |(a, x): (usize, usize), (b, y): (usize, usize)| {
        let rx = gc_reps[x];
        let acted = g.mul(g.mul(rx, hk_reps[b]), g.inv(rx));
        (hk[g.mul(hk_reps[a], acted)], gc[g.mul(rx, gc_reps[y])])
    };
    for x in 0..g.order() {
        for y in 0..g.order() {
            if phi[g.mul(x, y)] != target_mul(phi[x], phi[y]) {
                return false;
            }
        }
    }
    let identity = phi[g.identity()];
    let kernel_ok = (0..g.order()).all(|x| (phi[x] == identity) == core.contains(x));
    let image: std::collections::BTreeSet<_> = phi.iter().copied().collect();
    kernel_ok && image.len() == hk_reps.len() * gc_reps.len()
}

/// Runs every lemma clause whose hypotheses hold on sampled instantiations.
pub fn lemma_suite(a: &Analysis, budget: &LemmaBudget) -> Result<LemmaOutcome> {
    let g = a.group();
    let lat = a.lattice()?;
    let seed = budget
        .seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add((g.order() as u64) << 20)
        .wrapping_add(lat.len() as u64);
    let mut suite = Suite {
        a,
        g,
        lat,
        sigma: a.sigma(),
        rng: ChaCha8Rng::seed_from_u64(seed),
        budget,
        out: LemmaOutcome::default(),
    };
    suite.run()?;
    Ok(suite.out)
}
