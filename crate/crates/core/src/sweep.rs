//! Runs checks over manifest entries in parallel and returns one record per
//! task, in task order.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::Analysis;
use crate::arith;
use crate::corpus::{self, Bounds, BuiltEntry, CorpusEntry};
use crate::degeneration;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::hse;
use crate::lemmas::{self, LemmaBudget};
use crate::partition::PrimePartition;
use crate::sigma;
use crate::theorems::{self, CheckOptions, TheoremReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Thm13,
    Thm14,
    Thm17,
    Thm19,
    Corollaries,
    Lemmas,
    Degeneration,
    /// The expected verdicts stored with a manifest entry.
    Expected,
}

impl Check {
    /// Every check selectable with `all`.
    pub const ALL: [Check; 7] = [
        Check::Thm13,
        Check::Thm14,
        Check::Thm17,
        Check::Thm19,
        Check::Corollaries,
        Check::Lemmas,
        Check::Degeneration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Thm13 => "thm13",
            Check::Thm14 => "thm14",
            Check::Thm17 => "thm17",
            Check::Thm19 => "thm19",
            Check::Corollaries => "corollaries",
            Check::Lemmas => "lemmas",
            Check::Degeneration => "degeneration",
            Check::Expected => "expected",
        }
    }

    /// Whether the check ignores the partition.
    pub fn partition_free(self) -> bool {
        matches!(self, Check::Degeneration | Check::Expected)
    }

    /// Parses a comma-separated list; `all` selects [`Check::ALL`].
    pub fn parse_list(text: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if part == "all" {
                out.extend(Check::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(GroupError::Parse("no checks selected".into()));
        }
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .chain([Check::Expected])
            .find(|c| c.name() == s)
            .ok_or_else(|| GroupError::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub checks: Vec<Check>,
    pub verbose: bool,
    pub lemma_budget: LemmaBudget,
    pub bounds: Bounds,
    /// Directory against which relative `table` paths resolve.
    pub base: PathBuf,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            checks: Check::ALL.to_vec(),
            verbose: false,
            lemma_budget: LemmaBudget::default(),
            bounds: Bounds::default(),
            base: PathBuf::from("."),
        }
    }
}

/// One line of sweep output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskRecord {
    pub task: usize,
    pub entry: String,
    pub group: String,
    pub sigma: Option<String>,
    pub check: String,
    pub ok: bool,
    pub report: Value,
}

fn theorem_value(r: &TheoremReport) -> (bool, Value) {
    (r.equivalent || r.skipped.is_some(), serde_json::to_value(r).expect("report serializes"))
}

/// Runs one partition-dependent check, or the degeneration suite.
pub fn run_check(a: &Analysis, label: &str, check: Check, opts: &SweepOptions) -> Result<(bool, Value)> {
    let copts = CheckOptions { verbose: opts.verbose };
    Ok(match check {
        Check::Thm13 => theorem_value(&theorems::check_theorem_1_3(a, label, &copts)?),
        Check::Thm14 => theorem_value(&theorems::check_theorem_1_4(a, label, &copts)?),
        Check::Thm17 => theorem_value(&theorems::check_theorem_1_7(a, label, &copts)?),
        Check::Thm19 => theorem_value(&theorems::check_theorem_1_9(a, label, &copts)?),
        Check::Corollaries => {
            let reports = theorems::check_corollaries(a, label)?;
            let ok = reports.iter().all(|r| r.equivalent || r.skipped.is_some());
            (ok, serde_json::to_value(&reports).expect("reports serialize"))
        }
        Check::Lemmas => {
            let out = lemmas::lemma_suite(a, &opts.lemma_budget)?;
            let mut value = serde_json::to_value(&out).expect("outcome serializes");
            value["total"] = json!(out.total());
            (out.is_clean(), value)
        }
        Check::Degeneration => {
            let v = degeneration::degeneration_suite(a.shared_group())?;
            (v.is_empty(), json!({ "violations": v }))
        }
        Check::Expected => return Err(GroupError::Parse("expected verdicts belong to a manifest entry".into())),
    })
}

/// Like [`run_check`], with errors folded into the record: a non-σ-full
/// partition skips the theorems that assume σ-fullness, anything else fails.
fn run_check_recorded(a: &Analysis, label: &str, check: Check, opts: &SweepOptions) -> (bool, Value) {
    match run_check(a, label, check, opts) {
        Ok(r) => r,
        Err(e @ GroupError::NotSigmaFull { .. }) if matches!(check, Check::Thm13 | Check::Thm19) => {
            let theorem = if check == Check::Thm13 { "1.3" } else { "1.9" };
            theorem_value(&TheoremReport::skipped(label, a.sigma(), theorem, e.to_string()))
        }
        Err(e) => (false, json!({ "error": e.to_string() })),
    }
}

fn run_expected(built: &BuiltEntry, entry: &CorpusEntry) -> (bool, Value) {
    let mut ok = true;
    let rows: Vec<Value> = entry
        .expected
        .iter()
        .map(|exp| {
            let (observed, matches) = match corpus::evaluate_expected(built, exp) {
                Ok(v) => {
                    let m = v == exp.result;
                    (v, m)
                }
                Err(e) => (json!({ "error": e.to_string() }), false),
            };
            ok &= matches;
            json!({ "op": exp.op, "args": exp.args, "expected": exp.result, "observed": observed, "match": matches, "provenance": exp.provenance })
        })
        .collect();
    (ok, json!({ "verdicts": rows }))
}

struct Unit {
    entry: usize,
    sigma: Option<usize>,
    checks: Vec<Check>,
}

type UnitResult = Vec<(Option<String>, Check, bool, Value)>;

fn run_unit(unit: &Unit, entry: &CorpusEntry, built: &std::result::Result<BuiltEntry, GroupError>, opts: &SweepOptions) -> UnitResult {
    let built = match built {
        Ok(b) => b,
        Err(_) => return Vec::new(),
    };
    let Some(si) = unit.sigma else {
        return unit
            .checks
            .iter()
            .map(|&c| {
                let (ok, v) = if c == Check::Expected {
                    run_expected(built, entry)
                } else {
                    let a = Analysis::new(built.group.clone(), PrimePartition::finest());
                    run_check_recorded(&a, &entry.spec, c, opts)
                };
                (None, c, ok, v)
            })
            .collect();
    };
    let sigma_text = &entry.sigma[si];
    let fault = match entry.fault() {
        Ok(f) => f,
        Err(e) => return vec![(Some(sigma_text.clone()), unit.checks[0], false, json!({ "error": e.to_string() }))],
    };
    let sigma = match PrimePartition::parse(sigma_text) {
        Ok(s) => s,
        Err(e) => return vec![(Some(sigma_text.clone()), unit.checks[0], false, json!({ "error": e.to_string() }))],
    };
    let a = Analysis::with_fault(built.group.clone(), sigma.clone(), fault);
    unit.checks
        .iter()
        .map(|&c| {
            let (ok, v) = run_check_recorded(&a, &entry.spec, c, opts);
            (Some(sigma.to_string()), c, ok, v)
        })
        .collect()
}

/// Evaluates every (entry, partition, check) task. Entries that fail to build
/// produce a single failing `build` record; the sweep carries on.
pub fn sweep(entries: &[CorpusEntry], opts: &SweepOptions) -> Vec<TaskRecord> {
    let built: Vec<std::result::Result<BuiltEntry, GroupError>> = entries
        .par_iter()
        .map(|e| corpus::build_manifest_entry(e, opts.bounds, &opts.base))
        .collect();

    let sigma_checks: Vec<Check> = opts.checks.iter().copied().filter(|c| !c.partition_free()).collect();
    let free_checks: Vec<Check> = opts.checks.iter().copied().filter(|c| c.partition_free()).collect();
    let mut units = Vec::new();
    for (ei, e) in entries.iter().enumerate() {
        if !sigma_checks.is_empty() {
            for si in 0..e.sigma.len() {
                units.push(Unit { entry: ei, sigma: Some(si), checks: sigma_checks.clone() });
            }
        }
        let free: Vec<Check> = free_checks
            .iter()
            .copied()
            .filter(|&c| c != Check::Expected || !e.expected.is_empty())
            .collect();
        if !free.is_empty() {
            units.push(Unit { entry: ei, sigma: None, checks: free });
        }
    }
    let results: Vec<UnitResult> = units
        .par_iter()
        .map(|u| run_unit(u, &entries[u.entry], &built[u.entry], opts))
        .collect();

    let mut records = Vec::new();
    let mut reported_build_error = vec![false; entries.len()];
    for (u, res) in units.iter().zip(results) {
        let e = &entries[u.entry];
        if let Err(err) = &built[u.entry] {
            if !std::mem::replace(&mut reported_build_error[u.entry], true) {
                records.push(TaskRecord {
                    task: records.len(),
                    entry: e.name.clone(),
                    group: e.spec.clone(),
                    sigma: None,
                    check: "build".into(),
                    ok: false,
                    report: json!({ "error": err.to_string() }),
                });
            }
            continue;
        }
        for (sigma, check, ok, report) in res {
            records.push(TaskRecord {
                task: records.len(),
                entry: e.name.clone(),
                group: e.spec.clone(),
                sigma,
                check: check.name().into(),
                ok,
                report,
            });
        }
    }
    records
}

/// Runs the selected checks on one group at one partition. Unlike [`sweep`],
/// the first error is returned, including a missing σ-fullness.
pub fn analyze(built: &BuiltEntry, entry: &CorpusEntry, sigma: &PrimePartition, opts: &SweepOptions) -> Result<Vec<TaskRecord>> {
    let a = Analysis::with_fault(built.group.clone(), sigma.clone(), entry.fault()?);
    let mut records = Vec::new();
    for &check in &opts.checks {
        let (ok, report) = match check {
            Check::Expected if entry.expected.is_empty() => continue,
            Check::Expected => run_expected(built, entry),
            _ => run_check(&a, &entry.spec, check, opts)?,
        };
        records.push(TaskRecord {
            task: records.len(),
            entry: entry.name.clone(),
            group: entry.spec.clone(),
            sigma: (!check.partition_free()).then(|| sigma.to_string()),
            check: check.name().into(),
            ok,
            report,
        });
    }
    Ok(records)
}

/// Summary of a group at a partition. Lattice-dependent fields are `null`
/// when the order exceeds the lattice bound.
pub fn describe(group: &Arc<Group>, spec: &str, sigma: &PrimePartition) -> Value {
    let g: &Group = group;
    let lattice_ok = g.lattice().is_ok();
    let blocks = sigma::group_blocks(sigma, g);
    let halls: Option<BTreeMap<String, usize>> = blocks
        .iter()
        .map(|&b| sigma::hall_block_subgroups(sigma, g, b).map(|h| (sigma.block_name(b), h.len())))
        .collect::<Result<_>>()
        .ok();
    json!({
        "group": spec,
        "order": g.order(),
        "primes": arith::prime_divisors(g.order() as u64),
        "sigma": sigma.to_string(),
        "sigma_blocks": blocks.iter().map(|&b| sigma.block_name(b)).collect::<Vec<_>>(),
        "subgroups": lattice_ok.then(|| g.lattice().map(|l| l.len()).unwrap_or(0)),
        "sigma_residual_order": hse::sigma_nilpotent_residual(sigma, g).order(),
        "nilpotent_residual_order": g.nilpotent_residual().order(),
        "sigma_full": sigma::is_sigma_full(sigma, g).ok(),
        "hall_sets_per_block": halls,
        "sigma_primary": sigma::is_sigma_primary(sigma, g.order()),
        "sigma_nilpotent": sigma::is_sigma_nilpotent(sigma, g),
        "sigma_soluble": sigma::is_sigma_soluble(sigma, g),
        "dedekind": g.is_dedekind().ok(),
    })
}

/// Removes every `elapsed_ms` field, for run-to-run comparison.
pub fn strip_timings(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timings);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timings),
        _ => {}
    }
}
