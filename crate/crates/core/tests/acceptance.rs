//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use walksnc::bench::{compute_par10, compute_suc, run_benchmark, verify_model, write_csv, RunRecord};
use walksnc::cnf::{emit_dimacs, Var};
use walksnc::pickers::{
    CachingPicker, PickContext, PickStats, PickStrategy, Picker, SeparatedPicker, DEFAULT_NOISE,
};
use walksnc::rng::SolverRng;
use walksnc::solver::{random_assignment, solve, SolveStatus, SolverConfig};
use walksnc::state::SolverState;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Walks random 3-SAT instances (n = 50, ratio 4.2) and hands every visited
/// (state, unsat clause) pair to `visit` until `samples` pairs were seen.
fn sample_walk_pairs(samples: usize, mut visit: impl FnMut(&SolverState, usize)) {
    let mut seen = 0;
    let mut instance = 0u64;
    while seen < samples {
        let f = random_3sat(50, 4.2, 10_000 + instance);
        let mut rng = SolverRng::new(instance);
        let mut state = SolverState::new(&f, random_assignment(50, &mut rng)).unwrap();
        let mut mover = SeparatedPicker::new();
        let mut stats = PickStats::default();
        for _ in 0..2_000 {
            if state.is_satisfied() || seen >= samples {
                break;
            }
            let c = state.pick_random_unsat(&mut rng).unwrap();
            visit(&state, c);
            seen += 1;
            let v = mover
                .pick(
                    &mut PickContext {
                        state: &state,
                        rng: &mut rng,
                        noise: DEFAULT_NOISE,
                        stats: &mut stats,
                    },
                    c,
                )
                .unwrap();
            state.flip(v);
        }
        instance += 1;
    }
}

fn oracle_equivalence_and_zero_break() -> (Outcome, Outcome) {
    const SAMPLES: usize = 100_000;
    let mut picker = SeparatedPicker::new();
    let mut rng = SolverRng::new(0xacce);
    let (mut min_ok, mut zero_ok, mut with_zero) = (0usize, 0usize, 0usize);
    sample_walk_pairs(SAMPLES, |state, c| {
        let breaks = oracle_breaks(state, c);
        let min = breaks.iter().map(|b| b.1).min().unwrap();
        let mut stats = PickStats::default();
        let v =
            picker.pick(&mut PickContext { state, rng: &mut rng, noise: 0.0, stats: &mut stats }, c).unwrap();
        let picked = breaks.iter().find(|b| b.0 == v).unwrap().1;
        min_ok += (picked == min) as usize;
        zero_ok += ((picked == 0) == (min == 0)) as usize;
        with_zero += (min == 0) as usize;
    });
    (
        check(min_ok == SAMPLES, format!("{min_ok}/{SAMPLES} picks at the oracle minimum break")),
        check(
            zero_ok == SAMPLES,
            format!("{zero_ok}/{SAMPLES} agree on 0-break existence ({with_zero} pairs had one)"),
        ),
    )
}

fn distributional_equivalence() -> Outcome {
    const STATES: usize = 20;
    const DRAWS: usize = 10_000;
    let mut worst = 1.0f64;
    let mut failures = 0;
    let mut states = 0;
    let mut seed = 0u64;
    while states < STATES {
        seed += 1;
        let f = random_3sat(40, 4.2, 50_000 + seed);
        let a = walked_assignment(&f, 20 + (seed as usize % 7) * 10, seed);
        let state = SolverState::new(&f, a).unwrap();
        if state.is_satisfied() {
            continue;
        }
        let c = state.unsat_clauses()[0] as usize;
        states += 1;
        let hists: Vec<Vec<u64>> = PickStrategy::ALL
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let mut picker = walksnc::pickers::AnyPicker::new(s, &state);
                pick_histogram(&mut picker, &state, c, DEFAULT_NOISE, DRAWS, seed * 7 + i as u64)
            })
            .collect();
        for i in 0..3 {
            for j in i + 1..3 {
                let p = two_sample_chi2_p(&hists[i], &hists[j]);
                worst = worst.min(p);
                failures += (p < 0.001) as usize;
            }
        }
    }
    check(failures == 0, format!("{STATES} states x 3 pairs, min p-value {worst:.4}, {failures} below 0.001"))
}

fn incremental_integrity() -> Outcome {
    let mut bad = Vec::new();
    for i in 0..100u64 {
        let f = random_3sat(200, 4.2, 70_000 + i);
        let mut rng = SolverRng::new(i);
        let mut state = SolverState::new(&f, random_assignment(200, &mut rng)).unwrap();
        let mut caching = CachingPicker::new(&state);
        for _ in 0..10_000 {
            let v = Var::new(rng.uniform_below(200) as u32 + 1);
            caching.flip(&mut state, v);
        }
        let cache_ok = f.vars().all(|v| caching.break_value(v) as usize == state.break_oracle(v));
        if !state.is_consistent() || !cache_ok {
            bad.push(i);
        }
    }
    check(bad.is_empty(), format!("100 instances x 10000 flips, mismatching instances: {bad:?}"))
}

fn run_strategy(
    f: &walksnc::Formula,
    strategy: PickStrategy,
    seed: u64,
    max_flips: u64,
) -> walksnc::SolveOutcome {
    solve(f, &SolverConfig { strategy, seed, max_flips, ..Default::default() }).unwrap()
}

fn visit_count() -> Outcome {
    let (mut sep, mut nc) = (PickStats::default(), PickStats::default());
    for i in 0..10u64 {
        let f = random_3sat(10_000, 4.2, 90_000 + i);
        sep.merge(&run_strategy(&f, PickStrategy::Separated, i, 1_000_000).pick_stats);
        nc.merge(&run_strategy(&f, PickStrategy::NonCaching, i, 1_000_000).pick_stats);
    }
    let (s, n) = (sep.mean_visited_per_pick(), nc.mean_visited_per_pick());
    check(s < 18.9 && s < n, format!("separated {s:.3} visited/pick, noncaching {n:.3}, bound 18.9"))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

fn throughput() -> Outcome {
    const FLIPS: u64 = 5_000_000;
    let (mut sep, mut nc) = (Vec::new(), Vec::new());
    for i in 0..5u64 {
        let f = random_3sat(10_000, 4.2, 95_000 + i);
        // two interleaved rounds per instance, best of each
        let (mut best_s, mut best_n) = (0.0f64, 0.0f64);
        for round in 0..2 {
            best_s =
                best_s.max(run_strategy(&f, PickStrategy::Separated, i + 100 * round, FLIPS).flips_per_sec());
            best_n = best_n
                .max(run_strategy(&f, PickStrategy::NonCaching, i + 100 * round, FLIPS).flips_per_sec());
        }
        sep.push(best_s);
        nc.push(best_n);
    }
    let (ms, mn) = (median(sep), median(nc));
    check(ms >= mn, format!("median flips/s separated {ms:.0}, noncaching {mn:.0}, ratio {:.3}", ms / mn))
}

fn end_to_end() -> Outcome {
    let mut solved = 0;
    let mut slowest = Duration::ZERO;
    for i in 0..10u64 {
        let f = random_3sat(2000, 4.0, 120_000 + i);
        let cfg = SolverConfig { seed: i, timeout: Some(Duration::from_secs(60)), ..Default::default() };
        let out = solve(&f, &cfg).unwrap();
        slowest = slowest.max(out.elapsed);
        let verified = out.model.as_ref().is_some_and(|m| verify_model(&f, m).unwrap());
        solved +=
            (out.status == SolveStatus::Sat && verified && out.elapsed <= Duration::from_secs(60)) as usize;
    }
    check(solved == 10, format!("{solved}/10 solved and verified, slowest {:.3}s", slowest.as_secs_f64()))
}

fn harness_arithmetic() -> Outcome {
    let rec = |status, elapsed_s| RunRecord {
        instance: "x".into(),
        seed: 0,
        status,
        elapsed_s,
        flips: 0,
        flips_per_sec: 0.0,
        mean_visited_per_pick: 0.0,
    };
    let records =
        [rec(SolveStatus::Sat, 10.0), rec(SolveStatus::Sat, 20.0), rec(SolveStatus::Unknown, 100.0)];
    let par10 = compute_par10(&records, 100.0).unwrap();
    let suc = compute_suc(&records).unwrap();
    check(
        (par10 - 343.33).abs() <= 0.01 && (suc - 66.67).abs() <= 0.01,
        format!("par10 {par10:.4}, suc {suc:.4}"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let instances: Vec<_> = (0..4u64)
        .map(|i| {
            let path = dir.path().join(format!("d{i}.cnf"));
            std::fs::write(&path, emit_dimacs(&random_3sat(500, 4.0, 130_000 + i))).unwrap();
            path
        })
        .collect();
    let cfg = SolverConfig { seed: 2024, ..Default::default() };
    let columns = |workers| {
        let report = run_benchmark(&instances, &cfg, 5, 60.0, workers).unwrap();
        let mut buf = Vec::new();
        write_csv(&report.records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        text.lines()
            .map(|l| {
                let cols: Vec<&str> = l.split(',').collect();
                format!("{},{}\n", cols[2], cols[4])
            })
            .collect::<String>()
    };
    let (a, b) = (columns(4), columns(4));
    check(a.as_bytes() == b.as_bytes(), format!("{} rows compared", a.lines().count() - 1))
}

fn main() {
    let mut results: Vec<(&str, Outcome, Duration)> = Vec::new();
    let mut timed = |name, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        println!(
            "{} {name}: {} ({:.1}s)",
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            dt.as_secs_f64()
        );
        results.push((name, out, dt));
    };

    let mut pair = None;
    timed("oracle equivalence", &mut || {
        let (a, b) = oracle_equivalence_and_zero_break();
        pair = Some(b);
        a
    });
    timed("zero-break detection", &mut || pair.take().unwrap());
    timed("distributional equivalence", &mut distributional_equivalence);
    timed("incremental-state integrity", &mut incremental_integrity);
    timed("visit count", &mut visit_count);
    timed("throughput ordering", &mut throughput);
    timed("end-to-end solving", &mut end_to_end);
    timed("harness arithmetic", &mut harness_arithmetic);
    timed("determinism", &mut determinism);

    let failed: Vec<_> = results.iter().filter(|r| !r.1.pass).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
    } else {
        println!("acceptance: FAILED {failed:?}");
        std::process::exit(1);
    }
}
