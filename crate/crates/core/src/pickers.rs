//! Variable selection inside an unsatisfied clause.
//!
//! All three strategies implement the same WalkSAT/SKC rule: flip a random
//! 0-break variable when one exists; otherwise, with probability `noise`, a
//! random variable of the clause; otherwise a minimum-break variable with
//! uniform tie-breaking. They differ only in how break values are obtained.
//!
//! * [`SeparatedPicker`] scans true-literal clause lists lazily in two
//!   phases and never stores a break value.
//! * [`NonCachingPicker`] counts every break value in full at each pick.
//! * [`CachingPicker`] keeps every break value up to date on each flip.

use std::fmt;
use std::str::FromStr;

use crate::cnf::{Formula, Lit, Var};
use crate::error::{Error, Result};
use crate::rng::SolverRng;
use crate::state::{Assignment, FlipObserver, SolverState};

pub const DEFAULT_NOISE: f64 = 0.567;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PickStrategy {
    #[default]
    Separated,
    NonCaching,
    Caching,
}

impl PickStrategy {
    pub const ALL: [PickStrategy; 3] =
        [PickStrategy::Separated, PickStrategy::NonCaching, PickStrategy::Caching];

    pub fn name(self) -> &'static str {
        match self {
            PickStrategy::Separated => "separated",
            PickStrategy::NonCaching => "noncaching",
            PickStrategy::Caching => "caching",
        }
    }
}

impl fmt::Display for PickStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PickStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "separated" => Ok(PickStrategy::Separated),
            "noncaching" => Ok(PickStrategy::NonCaching),
            "caching" => Ok(PickStrategy::Caching),
            other => Err(Error::UnknownStrategy(other.to_owned())),
        }
    }
}

/// Counters accumulated across picks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PickStats {
    pub picks: u64,
    /// Clause entries of true-literal lists examined.
    pub visited_clauses: u64,
    /// Picks that returned a 0-break variable.
    pub zero_break_hits: u64,
    /// Picks resolved by the random-walk branch.
    pub noise_picks: u64,
}

impl PickStats {
    pub fn merge(&mut self, other: &PickStats) {
        self.picks += other.picks;
        self.visited_clauses += other.visited_clauses;
        self.zero_break_hits += other.zero_break_hits;
        self.noise_picks += other.noise_picks;
    }

    pub fn mean_visited_per_pick(&self) -> f64 {
        if self.picks == 0 {
            0.0
        } else {
            self.visited_clauses as f64 / self.picks as f64
        }
    }
}

pub fn check_noise(noise: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&noise) {
        Ok(noise)
    } else {
        Err(Error::BadNoise(noise))
    }
}

/// Everything a pick reads or advances besides the picker's own scratch.
pub struct PickContext<'a, 'f> {
    pub state: &'a SolverState<'f>,
    pub rng: &'a mut SolverRng,
    pub noise: f64,
    pub stats: &'a mut PickStats,
}

pub trait Picker {
    /// Chooses a variable of `clause`, which must be unsatisfied.
    fn pick(&mut self, ctx: &mut PickContext<'_, '_>, clause: usize) -> Result<Var>;

    /// Flips `var` in `state`, keeping any picker-side data in step.
    fn flip(&mut self, state: &mut SolverState<'_>, var: Var) {
        state.flip(var);
    }

    /// Rebuilds picker-side data after `state` was replaced.
    fn reset(&mut self, _state: &SolverState<'_>) {}
}

#[inline]
fn check_pickable<'f>(state: &SolverState<'f>, clause: usize) -> Result<&'f [Lit]> {
    if state.nt(clause) != 0 {
        return Err(Error::ClauseSatisfied(clause));
    }
    let lits = state.formula().clause(clause);
    if lits.is_empty() {
        return Err(Error::EmptyClause(clause));
    }
    Ok(lits)
}

/// Two-phase lazy break computation.
///
/// Draw order per pick: `len - 1` shuffle draws; if no 0-break variable,
/// one Bernoulli draw; if that comes up, one `uniform_below(len)` draw.
#[derive(Debug, Clone, Default)]
pub struct SeparatedPicker {
    order: Vec<Var>,
    // per position in `order`: tlc index just past the critical clause found
    // in phase 1; everything before it has been visited
    resume: Vec<u32>,
}

impl SeparatedPicker {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Picker for SeparatedPicker {
    fn pick(&mut self, ctx: &mut PickContext<'_, '_>, clause: usize) -> Result<Var> {
        let state = ctx.state;
        let lits = check_pickable(state, clause)?;
        ctx.stats.picks += 1;

        self.order.clear();
        self.order.extend(lits.iter().map(|l| l.var()));
        ctx.rng.shuffle(&mut self.order);

        // Phase 1: stop each scan at the first critical clause.
        let nt = state.true_counts();
        self.resume.clear();
        for &var in &self.order {
            match first_critical(nt, state.tlc(var)) {
                Some(pos) => {
                    ctx.stats.visited_clauses += pos as u64 + 1;
                    self.resume.push(pos as u32 + 1);
                }
                None => {
                    ctx.stats.visited_clauses += state.tlc(var).len() as u64;
                    ctx.stats.zero_break_hits += 1;
                    return Ok(var);
                }
            }
        }

        if ctx.rng.bernoulli(ctx.noise) {
            ctx.stats.noise_picks += 1;
            return Ok(lits[ctx.rng.uniform_below(lits.len())].var());
        }

        // Phase 2: finish the counts from where phase 1 stopped. The incumbent
        // starts at +inf so the first candidate is always fully counted.
        let mut best = self.order[0];
        let mut best_break = u32::MAX;
        for (pos, &var) in self.order.iter().enumerate() {
            // the critical clause that ended phase 1
            let mut breaks = 1u32;
            if breaks >= best_break {
                // every candidate has break >= 1, so best_break == 1 is final
                break;
            }
            let tlc = state.tlc(var);
            debug_assert_eq!(nt[tlc[self.resume[pos] as usize - 1] as usize], 1);
            let rest = &tlc[self.resume[pos] as usize..];
            let mut seen = rest.len();
            let mut pruned = false;
            for (i, &c) in rest.iter().enumerate() {
                breaks += (nt[c as usize] == 1) as u32;
                if breaks >= best_break {
                    seen = i + 1;
                    pruned = true;
                    break;
                }
            }
            ctx.stats.visited_clauses += seen as u64;
            if !pruned {
                best = var;
                best_break = breaks;
            }
        }
        Ok(best)
    }
}

/// Position of the first clause in `tlc` with exactly one true literal.
///
/// Tests four entries per step so the loads overlap and the loop branches
/// once per chunk; the result is the same as a one-by-one scan.
#[inline]
fn first_critical(nt: &[u32], tlc: &[u32]) -> Option<usize> {
    let mut chunks = tlc.chunks_exact(4);
    let mut base = 0;
    for chunk in &mut chunks {
        let mask = (nt[chunk[0] as usize] == 1) as u32
            | ((nt[chunk[1] as usize] == 1) as u32) << 1
            | ((nt[chunk[2] as usize] == 1) as u32) << 2
            | ((nt[chunk[3] as usize] == 1) as u32) << 3;
        if mask != 0 {
            return Some(base + mask.trailing_zeros() as usize);
        }
        base += 4;
    }
    chunks.remainder().iter().position(|&c| nt[c as usize] == 1).map(|p| base + p)
}

/// Applies the SKC rule to precomputed break values aligned with `lits`.
///
/// Draw order: one `uniform_below` among 0-break variables if any exist;
/// otherwise one Bernoulli draw, then one `uniform_below` either over the
/// clause (noise) or over the minimum-break ties.
fn skc_select(
    lits: &[Lit],
    breaks: &[u32],
    rng: &mut SolverRng,
    noise: f64,
    stats: &mut PickStats,
    ties: &mut Vec<Var>,
) -> Var {
    ties.clear();
    let mut min = u32::MAX;
    for (lit, &b) in lits.iter().zip(breaks) {
        if b < min {
            min = b;
            ties.clear();
        }
        if b == min {
            ties.push(lit.var());
        }
    }
    if min == 0 {
        stats.zero_break_hits += 1;
        return ties[rng.uniform_below(ties.len())];
    }
    if rng.bernoulli(noise) {
        stats.noise_picks += 1;
        return lits[rng.uniform_below(lits.len())].var();
    }
    ties[rng.uniform_below(ties.len())]
}

/// Counts every candidate's break value in full at each pick.
#[derive(Debug, Clone, Default)]
pub struct NonCachingPicker {
    breaks: Vec<u32>,
    ties: Vec<Var>,
}

impl NonCachingPicker {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Picker for NonCachingPicker {
    fn pick(&mut self, ctx: &mut PickContext<'_, '_>, clause: usize) -> Result<Var> {
        let state = ctx.state;
        let lits = check_pickable(state, clause)?;
        ctx.stats.picks += 1;
        self.breaks.clear();
        for lit in lits {
            let tlc = state.tlc(lit.var());
            ctx.stats.visited_clauses += tlc.len() as u64;
            let b = tlc.iter().filter(|&&c| state.nt(c as usize) == 1).count();
            self.breaks.push(b as u32);
        }
        Ok(skc_select(lits, &self.breaks, ctx.rng, ctx.noise, ctx.stats, &mut self.ties))
    }
}

/// Keeps `break[v]` for every variable, updated on every flip.
#[derive(Debug, Clone, Default)]
pub struct CachingPicker {
    cache: BreakCache,
    scratch: Vec<u32>,
    ties: Vec<Var>,
}

#[derive(Debug, Clone, Default)]
struct BreakCache {
    breaks: Vec<u32>,
}

#[inline]
fn sole_true_var(lits: &[Lit], assignment: &Assignment) -> Var {
    lits.iter()
        .find(|&&l| assignment.is_true(l))
        .map(|l| l.var())
        .expect("clause with nt >= 1 has a true literal")
}

impl FlipObserver for BreakCache {
    #[inline]
    fn on_gain(&mut self, f: &Formula, a: &Assignment, clause: usize, nt: u32, var: Var) {
        match nt {
            1 => self.breaks[var.index()] += 1,
            2 => {
                // the previous sole true literal is no longer critical
                let other = f
                    .clause(clause)
                    .iter()
                    .find(|&&l| l.var() != var && a.is_true(l))
                    .map(|l| l.var())
                    .expect("nt == 2 leaves another true literal");
                self.breaks[other.index()] -= 1;
            }
            _ => {}
        }
    }

    #[inline]
    fn on_loss(&mut self, f: &Formula, a: &Assignment, clause: usize, nt: u32, var: Var) {
        match nt {
            0 => self.breaks[var.index()] -= 1,
            1 => {
                let sole = sole_true_var(f.clause(clause), a);
                self.breaks[sole.index()] += 1;
            }
            _ => {}
        }
    }
}

impl CachingPicker {
    pub fn new(state: &SolverState<'_>) -> Self {
        let mut picker = CachingPicker::default();
        picker.reset(state);
        picker
    }

    /// Cached break value of `var`.
    pub fn break_value(&self, var: Var) -> u32 {
        self.cache.breaks[var.index()]
    }
}

impl Picker for CachingPicker {
    fn pick(&mut self, ctx: &mut PickContext<'_, '_>, clause: usize) -> Result<Var> {
        let lits = check_pickable(ctx.state, clause)?;
        ctx.stats.picks += 1;
        self.scratch.clear();
        self.scratch.extend(lits.iter().map(|l| self.cache.breaks[l.var().index()]));
        Ok(skc_select(lits, &self.scratch, ctx.rng, ctx.noise, ctx.stats, &mut self.ties))
    }

    fn flip(&mut self, state: &mut SolverState<'_>, var: Var) {
        state.flip_observed(var, &mut self.cache);
    }

    fn reset(&mut self, state: &SolverState<'_>) {
        let f = state.formula();
        let breaks = &mut self.cache.breaks;
        breaks.clear();
        breaks.resize(f.num_vars() + 1, 0);
        for c in 0..f.num_clauses() {
            if state.nt(c) == 1 {
                breaks[sole_true_var(f.clause(c), state.assignment()).index()] += 1;
            }
        }
    }
}

/// Runtime-selected picker.
#[derive(Debug, Clone)]
pub enum AnyPicker {
    Separated(SeparatedPicker),
    NonCaching(NonCachingPicker),
    Caching(CachingPicker),
}

impl AnyPicker {
    pub fn new(strategy: PickStrategy, state: &SolverState<'_>) -> AnyPicker {
        match strategy {
            PickStrategy::Separated => AnyPicker::Separated(SeparatedPicker::new()),
            PickStrategy::NonCaching => AnyPicker::NonCaching(NonCachingPicker::new()),
            PickStrategy::Caching => AnyPicker::Caching(CachingPicker::new(state)),
        }
    }
}

impl Picker for AnyPicker {
    fn pick(&mut self, ctx: &mut PickContext<'_, '_>, clause: usize) -> Result<Var> {
        match self {
            AnyPicker::Separated(p) => p.pick(ctx, clause),
            AnyPicker::NonCaching(p) => p.pick(ctx, clause),
            AnyPicker::Caching(p) => p.pick(ctx, clause),
        }
    }

    fn flip(&mut self, state: &mut SolverState<'_>, var: Var) {
        match self {
            AnyPicker::Separated(p) => p.flip(state, var),
            AnyPicker::NonCaching(p) => p.flip(state, var),
            AnyPicker::Caching(p) => p.flip(state, var),
        }
    }

    fn reset(&mut self, state: &SolverState<'_>) {
        match self {
            AnyPicker::Separated(p) => p.reset(state),
            AnyPicker::NonCaching(p) => p.reset(state),
            AnyPicker::Caching(p) => p.reset(state),
        }
    }
}
