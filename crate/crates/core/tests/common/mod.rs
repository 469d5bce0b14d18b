#![allow(dead_code)]

use statrs::distribution::{ChiSquared, ContinuousCDF};
use walksnc::cnf::{clauses_for_ratio, generate_uniform_ksat, Formula, Var};
use walksnc::pickers::{PickContext, PickStats, Picker, SeparatedPicker};
use walksnc::rng::SolverRng;
use walksnc::solver::random_assignment;
use walksnc::state::{Assignment, SolverState};

pub fn random_3sat(n: usize, ratio: f64, seed: u64) -> Formula {
    generate_uniform_ksat(n, 3, clauses_for_ratio(n, ratio), seed).unwrap()
}

/// Assignment reached after `steps` WalkSAT moves from a random start, or
/// earlier if the formula gets satisfied.
pub fn walked_assignment(f: &Formula, steps: usize, seed: u64) -> Assignment {
    let mut rng = SolverRng::new(seed);
    let mut state = SolverState::new(f, random_assignment(f.num_vars(), &mut rng)).unwrap();
    let mut picker = SeparatedPicker::new();
    let mut stats = PickStats::default();
    for _ in 0..steps {
        if state.is_satisfied() {
            break;
        }
        let c = state.pick_random_unsat(&mut rng).unwrap();
        let v = {
            let mut ctx = PickContext { state: &state, rng: &mut rng, noise: 0.567, stats: &mut stats };
            picker.pick(&mut ctx, c).unwrap()
        };
        state.flip(v);
    }
    state.assignment().clone()
}

pub fn clause_vars(f: &Formula, c: usize) -> Vec<Var> {
    f.clause(c).iter().map(|l| l.var()).collect()
}

/// Break values of `c`'s variables by flip-and-recount.
pub fn oracle_breaks(state: &SolverState, c: usize) -> Vec<(Var, usize)> {
    clause_vars(state.formula(), c).into_iter().map(|v| (v, state.break_oracle(v))).collect()
}

/// Chi-square test of homogeneity for two histograms over the same
/// categories; categories empty in both are dropped. Returns the p-value,
/// or 1.0 when fewer than two categories remain.
pub fn two_sample_chi2_p(a: &[u64], b: &[u64]) -> f64 {
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let total = na + nb;
    let mut stat = 0.0;
    let mut cats = 0;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        cats += 1;
        let ea = na * col / total;
        let eb = nb * col / total;
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    if cats < 2 {
        return 1.0;
    }
    1.0 - ChiSquared::new((cats - 1) as f64).unwrap().cdf(stat)
}

/// Goodness-of-fit p-value of `observed` against equal expected counts.
pub fn uniform_chi2_p(observed: &[u64]) -> f64 {
    let n = observed.iter().sum::<u64>() as f64;
    let e = n / observed.len() as f64;
    let stat: f64 = observed.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    1.0 - ChiSquared::new((observed.len() - 1) as f64).unwrap().cdf(stat)
}

/// Histogram of `draws` picks from clause `c` over the clause's positions.
pub fn pick_histogram(
    picker: &mut dyn Picker,
    state: &SolverState,
    c: usize,
    noise: f64,
    draws: usize,
    seed: u64,
) -> Vec<u64> {
    let vars = clause_vars(state.formula(), c);
    let mut hist = vec![0u64; vars.len()];
    let mut rng = SolverRng::new(seed);
    let mut stats = PickStats::default();
    for _ in 0..draws {
        let mut ctx = PickContext { state, rng: &mut rng, noise, stats: &mut stats };
        let v = picker.pick(&mut ctx, c).unwrap();
        hist[vars.iter().position(|&x| x == v).unwrap()] += 1;
    }
    hist
}
