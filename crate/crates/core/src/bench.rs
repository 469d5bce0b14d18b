//! Batch runs over instance sets with success-rate and PAR10 summaries.

use std::fs;
use std::hash::Hasher;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cnf::{read_dimacs_file, Formula};
use crate::error::{Error, Result};
use crate::rng::mix64;
use crate::solver::{solve, SolveStatus, SolverConfig};
use crate::state::Assignment;

/// One row of the results CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub seed: u64,
    pub status: SolveStatus,
    pub elapsed_s: f64,
    pub flips: u64,
    pub flips_per_sec: f64,
    pub mean_visited_per_pick: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassSummary {
    pub runs: usize,
    pub successes: usize,
    /// Percent of runs that succeeded.
    pub suc: f64,
    /// Seconds; failures are charged ten times the cutoff.
    pub par10: f64,
    /// Mean time of the successful runs, if any.
    pub mean_success_time: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub records: Vec<RunRecord>,
    pub summary: ClassSummary,
}

/// Whether every clause has a true literal under `assignment`. Reads only
/// the clause list.
pub fn verify_model(formula: &Formula, assignment: &Assignment) -> Result<bool> {
    if assignment.num_vars() != formula.num_vars() {
        return Err(Error::ArityMismatch { expected: formula.num_vars(), got: assignment.num_vars() });
    }
    Ok(formula.clauses().all(|clause| clause.iter().any(|&lit| assignment.is_true(lit))))
}

/// Percentage of `Sat` records.
pub fn compute_suc(records: &[RunRecord]) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    let ok = records.iter().filter(|r| r.status == SolveStatus::Sat).count();
    Ok(100.0 * ok as f64 / records.len() as f64)
}

/// Mean runtime where runs not solved within `cutoff` count `10 * cutoff`.
pub fn compute_par10(records: &[RunRecord], cutoff: f64) -> Result<f64> {
    if records.is_empty() {
        return Err(Error::NoRecords);
    }
    if cutoff.is_nan() || cutoff <= 0.0 {
        return Err(Error::BadConfig(format!("cutoff must be positive, got {cutoff}")));
    }
    let total: f64 =
        records.iter().map(|r| if succeeded(r, cutoff) { r.elapsed_s } else { 10.0 * cutoff }).sum();
    Ok(total / records.len() as f64)
}

fn succeeded(r: &RunRecord, cutoff: f64) -> bool {
    r.status == SolveStatus::Sat && r.elapsed_s <= cutoff
}

pub fn summarize(records: &[RunRecord], cutoff: f64) -> Result<ClassSummary> {
    let par10 = compute_par10(records, cutoff)?;
    let suc = compute_suc(records)?;
    let times: Vec<f64> = records.iter().filter(|r| succeeded(r, cutoff)).map(|r| r.elapsed_s).collect();
    let mean_success_time = (!times.is_empty()).then(|| times.iter().sum::<f64>() / times.len() as f64);
    Ok(ClassSummary {
        runs: records.len(),
        successes: records.iter().filter(|r| r.status == SolveStatus::Sat).count(),
        suc,
        par10,
        mean_success_time,
    })
}

/// Seed of run `run` on `instance`: FNV-1a of the instance name folded into
/// the base seed, then the run index, each step through SplitMix64.
pub fn run_seed(base_seed: u64, instance: &str, run: u32) -> u64 {
    let mut h = Fnv1a::default();
    h.write(instance.as_bytes());
    mix64(mix64(base_seed ^ h.finish()).wrapping_add(run as u64))
}

struct Fnv1a(u64);

impl Default for Fnv1a {
    fn default() -> Self {
        Fnv1a(0xcbf2_9ce4_8422_2325)
    }
}

impl Hasher for Fnv1a {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
}

/// Expands a directory into its `*.cnf` files (sorted), or reads a list file
/// with one path per line. Relative list entries resolve against the list's
/// directory; blank lines and `#` comments are skipped.
pub fn collect_instances(source: &Path) -> Result<Vec<PathBuf>> {
    if source.is_dir() {
        let mut paths: Vec<PathBuf> = fs::read_dir(source)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "cnf"))
            .collect();
        paths.sort();
        return Ok(paths);
    }
    let base = source.parent().unwrap_or(Path::new("."));
    let text = fs::read_to_string(source)?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let p = Path::new(l);
            if p.is_absolute() {
                p.to_owned()
            } else {
                base.join(p)
            }
        })
        .collect())
}

/// Solves every instance `runs_per_instance` times with derived seeds and a
/// timeout of `cutoff` seconds per run. Records come back in
/// (instance, run) order regardless of `workers`.
///
/// A run that finds a model only after the cutoff is recorded as `Unknown`.
pub fn run_benchmark(
    instances: &[PathBuf],
    cfg: &SolverConfig,
    runs_per_instance: u32,
    cutoff: f64,
    workers: usize,
) -> Result<BenchReport> {
    if !cutoff.is_finite() || cutoff <= 0.0 {
        return Err(Error::BadConfig(format!("cutoff must be positive, got {cutoff}")));
    }
    if runs_per_instance == 0 {
        return Err(Error::BadConfig("runs per instance must be at least 1".into()));
    }
    cfg.validate()?;
    let formulas = instances
        .iter()
        .map(|p| Ok((p.display().to_string(), read_dimacs_file(p)?)))
        .collect::<Result<Vec<(String, Formula)>>>()?;
    let jobs: Vec<(usize, u32)> =
        (0..formulas.len()).flat_map(|i| (0..runs_per_instance).map(move |r| (i, r))).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::BadConfig(e.to_string()))?;
    let records = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, run)| {
                let (name, formula) = &formulas[i];
                let seed = run_seed(cfg.seed, name, run);
                let run_cfg =
                    SolverConfig { seed, timeout: Some(Duration::from_secs_f64(cutoff)), ..cfg.clone() };
                let out = solve(formula, &run_cfg)?;
                let elapsed_s = out.elapsed.as_secs_f64();
                let status =
                    if out.is_sat() && elapsed_s <= cutoff { SolveStatus::Sat } else { SolveStatus::Unknown };
                Ok(RunRecord {
                    instance: name.clone(),
                    seed,
                    status,
                    elapsed_s,
                    flips: out.flips,
                    flips_per_sec: out.flips_per_sec(),
                    mean_visited_per_pick: out.pick_stats.mean_visited_per_pick(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = summarize(&records, cutoff)?;
    Ok(BenchReport { records, summary })
}

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let records = r.deserialize().collect::<std::result::Result<Vec<RunRecord>, _>>()?;
    Ok(records)
}

/// Reads a model from solver output: literals on `v` lines up to the
/// terminating 0. `c` and `s` lines are ignored.
pub fn parse_model(text: &str, num_vars: usize) -> Result<Assignment> {
    let mut lits = Vec::new();
    'lines: for line in text.lines() {
        let line = line.trim();
        let Some(rest) = line.strip_prefix('v') else {
            if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
                continue;
            }
            return Err(Error::BadModel(format!("unexpected line `{line}`")));
        };
        for token in rest.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| Error::BadModel(format!("bad literal `{token}`")))?;
            if lit == 0 {
                break 'lines;
            }
            lits.push(lit);
        }
    }
    Assignment::from_dimacs_lits(num_vars, &lits)
}
