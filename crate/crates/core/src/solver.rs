//! The focused random walk loop.
//!
//! Each restart draws a fresh assignment from its own RNG stream
//! (`SolverRng::with_stream(seed, restart)`), then repeats: stop if no clause
//! is unsatisfied, otherwise pick a uniformly random unsatisfied clause, let
//! the strategy choose one of its variables, and flip it.
//!
//! Per-step draw order: one `uniform_below(#unsat)` for the clause, then the
//! picker's draws. The initial assignment consumes one coin per variable,
//! `x1` first.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bench::verify_model;
use crate::cnf::{Formula, Var};
use crate::error::{Error, Result};
use crate::pickers::{
    check_noise, CachingPicker, NonCachingPicker, PickContext, PickStats, PickStrategy, Picker,
    SeparatedPicker, DEFAULT_NOISE,
};
use crate::rng::SolverRng;
use crate::state::{Assignment, SolverState};

/// The wall clock is consulted once every this many flips.
pub const TIMEOUT_CHECK_INTERVAL: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub strategy: PickStrategy,
    pub noise: f64,
    /// Total flips over all restarts.
    pub max_flips: u64,
    pub timeout: Option<Duration>,
    pub seed: u64,
    pub restarts: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            strategy: PickStrategy::Separated,
            noise: DEFAULT_NOISE,
            max_flips: 1_000_000_000,
            timeout: None,
            seed: 0,
            restarts: 1,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        check_noise(self.noise)?;
        if self.max_flips == 0 {
            return Err(Error::BadConfig("max_flips must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::BadConfig("restarts must be at least 1".into()));
        }
        Ok(())
    }

    /// Flip budget of restart `r`: an even split of `max_flips`, with the
    /// remainder going one flip each to the earliest restarts.
    pub fn restart_budget(&self, r: u32) -> u64 {
        let restarts = self.restarts as u64;
        let base = self.max_flips / restarts;
        base + u64::from((r as u64) < self.max_flips % restarts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SolveStatus {
    Sat,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownReason {
    FlipBudget,
    Timeout,
    /// The formula contains this empty clause; no assignment satisfies it.
    EmptyClause(usize),
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Present iff `status` is `Sat`; always verified against the clauses.
    pub model: Option<Assignment>,
    pub flips: u64,
    pub elapsed: Duration,
    pub pick_stats: PickStats,
    pub reason: Option<UnknownReason>,
    /// Restarts begun, including the successful one.
    pub restarts_used: u32,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        self.status == SolveStatus::Sat
    }

    pub fn flips_per_sec(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs > 0.0 {
            self.flips as f64 / secs
        } else {
            0.0
        }
    }
}

/// Independent fair coin per variable, `x1` first.
pub fn random_assignment(num_vars: usize, rng: &mut SolverRng) -> Assignment {
    Assignment::from_values((0..num_vars).map(|_| rng.coin()))
}

pub fn solve(formula: &Formula, cfg: &SolverConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    match cfg.strategy {
        PickStrategy::Separated => solve_with(formula, cfg, SeparatedPicker::new()),
        PickStrategy::NonCaching => solve_with(formula, cfg, NonCachingPicker::new()),
        PickStrategy::Caching => solve_with(formula, cfg, CachingPicker::default()),
    }
}

enum WalkEnd {
    Sat,
    Budget,
    Timeout,
}

/// Runs the loop with a caller-supplied picker, which is reset at each
/// restart.
pub fn solve_with<P: Picker>(formula: &Formula, cfg: &SolverConfig, mut picker: P) -> Result<SolveOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let deadline = cfg.timeout.map(|t| start + t);
    let mut stats = PickStats::default();
    let mut flips = 0u64;

    let unknown = |reason, flips, stats, restarts_used| SolveOutcome {
        status: SolveStatus::Unknown,
        model: None,
        flips,
        elapsed: start.elapsed(),
        pick_stats: stats,
        reason: Some(reason),
        restarts_used,
    };

    if let Some(c) = formula.first_empty_clause() {
        return Ok(unknown(UnknownReason::EmptyClause(c), 0, stats, 0));
    }

    for restart in 0..cfg.restarts {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(unknown(UnknownReason::Timeout, flips, stats, restart));
        }
        let mut rng = SolverRng::with_stream(cfg.seed, restart as u64);
        let assignment = random_assignment(formula.num_vars(), &mut rng);
        let mut state = SolverState::new(formula, assignment)?;
        picker.reset(&state);

        let end = walk(
            &mut picker,
            &mut state,
            &mut rng,
            cfg.noise,
            cfg.restart_budget(restart),
            deadline,
            &mut stats,
        )?;
        flips += state.flips();
        match end {
            WalkEnd::Sat => {
                let model = state.assignment().clone();
                assert!(
                    verify_model(formula, &model)?,
                    "incremental state reported SAT for a falsifying assignment"
                );
                return Ok(SolveOutcome {
                    status: SolveStatus::Sat,
                    model: Some(model),
                    flips,
                    elapsed: start.elapsed(),
                    pick_stats: stats,
                    reason: None,
                    restarts_used: restart + 1,
                });
            }
            WalkEnd::Timeout => {
                return Ok(unknown(UnknownReason::Timeout, flips, stats, restart + 1));
            }
            WalkEnd::Budget => {}
        }
    }
    Ok(unknown(UnknownReason::FlipBudget, flips, stats, cfg.restarts))
}

fn walk<P: Picker>(
    picker: &mut P,
    state: &mut SolverState<'_>,
    rng: &mut SolverRng,
    noise: f64,
    budget: u64,
    deadline: Option<Instant>,
    stats: &mut PickStats,
) -> Result<WalkEnd> {
    for step in 0..budget {
        if state.is_satisfied() {
            return Ok(WalkEnd::Sat);
        }
        if let Some(d) = deadline {
            if step % TIMEOUT_CHECK_INTERVAL == 0 && step > 0 && Instant::now() >= d {
                return Ok(WalkEnd::Timeout);
            }
        }
        let clause = state.pick_random_unsat(rng)?;
        let var: Var = {
            let mut ctx = PickContext { state, rng, noise, stats };
            picker.pick(&mut ctx, clause)?
        };
        picker.flip(state, var);
    }
    // the last flip of the budget may have satisfied the formula
    Ok(if state.is_satisfied() { WalkEnd::Sat } else { WalkEnd::Budget })
}
