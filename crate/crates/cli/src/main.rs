//! `hsigma`: build groups from text specs, check the equivalence theorems on
//! them, sweep a manifest, print summaries.
//!
//! Exit codes: 0 when every check holds, 2 when a check or expected verdict
//! fails, 1 on usage or build errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use hsigma::corpus::{self, Bounds, CorpusEntry};
use hsigma::group::{lattice_bound_from_env, DEFAULT_MAX_ORDER};
use hsigma::sweep::{self, Check, SweepOptions, TaskRecord};
use hsigma::PrimePartition;

#[derive(Parser)]
#[command(name = "hsigma", version, about = "σ-embedded subgroup checks on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on one group at one partition.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run checks over every entry and partition of a manifest.
    Sweep {
        /// Manifest file; the built-in corpus when omitted.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Replace each entry's partitions with this one.
        #[arg(long)]
        sigma: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print order, residuals, Hall counts and similar facts about a group.
    Describe {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        bounds: BoundArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Target {
    /// Group spec such as `sym(4)`, or a catalog name such as `s4`.
    #[arg(long)]
    group: String,
    /// Partition spec: `finest`, `coarsest`, or blocks like `{2,3}|{5}|rest`.
    #[arg(long, default_value = "finest")]
    sigma: String,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER, value_parser = positive)]
    max_order: usize,
    /// Largest order whose subgroup lattice is built; defaults to
    /// SIGMA_LATTICE_BOUND or 1500.
    #[arg(long, value_parser = positive)]
    lattice_bound: Option<usize>,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_order: self.max_order,
            lattice_bound: self.lattice_bound.unwrap_or_else(lattice_bound_from_env),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated subset of thm13,thm14,thm17,thm19,corollaries,lemmas,degeneration, or `all`.
    #[arg(long, default_value = "all")]
    check: String,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Also write the reports to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Worker threads; all cores by default.
    #[arg(long, value_parser = positive)]
    jobs: Option<usize>,
    /// Include per-Hall-set details in theorem reports.
    #[arg(long)]
    verbose: bool,
}

impl RunArgs {
    fn options(&self, base: &Path) -> Result<SweepOptions> {
        let mut checks = Check::parse_list(&self.check)?;
        checks.push(Check::Expected);
        Ok(SweepOptions {
            checks,
            verbose: self.verbose,
            bounds: self.bounds.bounds(),
            base: base.to_path_buf(),
            ..SweepOptions::default()
        })
    }
}

fn emit(lines: &[String], json: Option<&Path>) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for l in lines {
        writeln!(out, "{l}")?;
    }
    if let Some(path) = json {
        let mut f = BufWriter::new(File::create(path).with_context(|| format!("cannot create {}", path.display()))?);
        for l in lines {
            writeln!(f, "{l}")?;
        }
        f.flush()?;
    }
    Ok(())
}

/// Prints the records and a summary; returns the exit code they imply.
fn finish(records: &[TaskRecord], json: Option<&Path>) -> Result<ExitCode> {
    let lines: Vec<String> = records.iter().map(|r| serde_json::to_string(r).expect("record serializes")).collect();
    emit(&lines, json)?;
    let failed: Vec<&TaskRecord> = records.iter().filter(|r| !r.ok).collect();
    for r in &failed {
        eprintln!("FAIL {} [{}] {} {}", r.entry, r.sigma.as_deref().unwrap_or("-"), r.check, r.report.get("error").map(|e| e.to_string()).unwrap_or_default());
    }
    eprintln!("{} task(s), {} failed", records.len(), failed.len());
    Ok(if failed.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn set_jobs(jobs: Option<usize>) -> Result<()> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// A catalog name resolves to its entry, anything else is a group spec.
fn target_entry(group: &str) -> CorpusEntry {
    match corpus::catalog_name(group) {
        Some((name, spec)) => CorpusEntry {
            name: name.into(),
            spec: spec.into(),
            sigma: Vec::new(),
            expected: corpus::expected_for(name),
            fault: None,
        },
        None => CorpusEntry { name: group.into(), spec: group.into(), sigma: Vec::new(), expected: Vec::new(), fault: None },
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cwd = std::env::current_dir()?;
    match cli.command {
        Command::Analyze { target, run } => {
            set_jobs(run.jobs)?;
            let opts = run.options(&cwd)?;
            let sigma = PrimePartition::parse(&target.sigma)?;
            let entry = target_entry(&target.group);
            let built = corpus::build_manifest_entry(&entry, opts.bounds, &cwd)?;
            let records = sweep::analyze(&built, &entry, &sigma, &opts)?;
            finish(&records, run.json.as_deref())
        }
        Command::Sweep { manifest, sigma, run } => {
            set_jobs(run.jobs)?;
            let (mut entries, base) = match &manifest {
                Some(path) => {
                    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| cwd.clone());
                    (corpus::load_manifest(path)?, base)
                }
                None => (corpus::corpus_manifest(), cwd.clone()),
            };
            if let Some(s) = sigma {
                PrimePartition::parse(&s)?;
                entries.iter_mut().for_each(|e| e.sigma = vec![s.clone()]);
            }
            let opts = run.options(&base)?;
            finish(&sweep::sweep(&entries, &opts), run.json.as_deref())
        }
        Command::Describe { target, bounds, json } => {
            let entry = target_entry(&target.group);
            let sigma = PrimePartition::parse(&target.sigma)?;
            let built = corpus::build_manifest_entry(&entry, bounds.bounds(), &cwd)?;
            let report = sweep::describe(&built.group, &entry.spec, &sigma);
            emit(&[serde_json::to_string(&report)?], json.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
