mod common;

use std::path::PathBuf;

use common::random_3sat;
use walksnc::bench::{read_csv, run_benchmark, summarize, verify_model, write_csv};
use walksnc::cnf::emit_dimacs;
use walksnc::solver::{solve, SolveStatus, SolverConfig};
use walksnc::PickStrategy;

fn write_instances(dir: &std::path::Path, count: usize, n: usize, ratio: f64) -> Vec<PathBuf> {
    (0..count)
        .map(|i| {
            let path = dir.join(format!("inst{i:02}.cnf"));
            std::fs::write(&path, emit_dimacs(&random_3sat(n, ratio, 1000 + i as u64))).unwrap();
            path
        })
        .collect()
}

#[test]
fn strategies_agree_on_satisfiable_instances() {
    for i in 0..50u64 {
        let f = random_3sat(150 + (i as usize % 4) * 100, 4.0, 500 + i);
        let mut statuses = Vec::new();
        for strategy in PickStrategy::ALL {
            let cfg = SolverConfig { strategy, seed: i, max_flips: 50_000_000, ..Default::default() };
            let out = solve(&f, &cfg).unwrap();
            if let Some(model) = &out.model {
                assert!(verify_model(&f, model).unwrap());
            }
            assert!(out.flips <= cfg.max_flips);
            statuses.push(out.status);
        }
        assert!(statuses.iter().all(|&s| s == SolveStatus::Sat), "instance {i}: {statuses:?}");
    }
}

#[test]
fn identical_config_replays_identically() {
    let f = random_3sat(400, 4.2, 77);
    for strategy in PickStrategy::ALL {
        let cfg = SolverConfig { strategy, seed: 5, max_flips: 200_000, restarts: 3, ..Default::default() };
        let a = solve(&f, &cfg).unwrap();
        let b = solve(&f, &cfg).unwrap();
        assert_eq!(
            (a.status, a.flips, a.pick_stats, a.restarts_used),
            (b.status, b.flips, b.pick_stats, b.restarts_used)
        );
        assert_eq!(a.model, b.model);
    }
}

#[test]
fn noncaching_and_caching_take_the_same_walk() {
    // identical selection rule and draw order, so identical trajectories
    let f = random_3sat(300, 4.2, 8);
    let run = |strategy| {
        solve(&f, &SolverConfig { strategy, seed: 3, max_flips: 300_000, ..Default::default() }).unwrap()
    };
    let (nc, c) = (run(PickStrategy::NonCaching), run(PickStrategy::Caching));
    assert_eq!(nc.flips, c.flips);
    assert_eq!(nc.model, c.model);
    assert_eq!(nc.pick_stats.zero_break_hits, c.pick_stats.zero_break_hits);
}

#[test]
fn bench_counts_and_worker_independence() {
    let dir = tempfile::tempdir().unwrap();
    let instances = write_instances(dir.path(), 2, 200, 4.0);
    let cfg = SolverConfig { seed: 42, max_flips: 5_000_000, ..Default::default() };
    let one = run_benchmark(&instances, &cfg, 10, 30.0, 1).unwrap();
    let four = run_benchmark(&instances, &cfg, 10, 30.0, 4).unwrap();
    assert_eq!(one.records.len(), 20);
    let key = |r: &walksnc::bench::RunRecord| (r.instance.clone(), r.seed, r.status, r.flips);
    assert_eq!(
        one.records.iter().map(key).collect::<Vec<_>>(),
        four.records.iter().map(key).collect::<Vec<_>>()
    );
    assert_eq!(one.summary.runs, 20);
    assert_eq!(one.summary.suc, 100.0);
    assert!(one.summary.par10 >= one.summary.mean_success_time.unwrap() - 1e-12);
}

#[test]
fn summary_recomputed_from_csv_matches() {
    let dir = tempfile::tempdir().unwrap();
    let instances = write_instances(dir.path(), 3, 150, 4.1);
    // small budget so that some runs fail
    let cfg = SolverConfig { seed: 1, max_flips: 3_000, ..Default::default() };
    let report = run_benchmark(&instances, &cfg, 4, 10.0, 2).unwrap();
    let mut buf = Vec::new();
    write_csv(&report.records, &mut buf).unwrap();
    let back = read_csv(&buf[..]).unwrap();
    assert_eq!(back, report.records);
    assert_eq!(summarize(&back, 10.0).unwrap(), report.summary);
}

#[test]
fn bench_rejects_unparseable_instance() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cnf");
    std::fs::write(&bad, "p cnf 2 2\n1 0\n").unwrap();
    let err = run_benchmark(&[bad], &SolverConfig::default(), 1, 1.0, 1).unwrap_err();
    assert!(err.to_string().contains("bad.cnf"), "{err}");
}
