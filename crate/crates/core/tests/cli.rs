use std::path::Path;
use std::process::{Command, Output};

fn walksnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walksnc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_is_deterministic_and_honours_ratio() {
    let a = walksnc(&["gen", "-n", "100", "-k", "3", "-m", "420", "--seed", "7"]);
    let b = walksnc(&["gen", "-n", "100", "-k", "3", "-r", "4.2", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("p cnf 100 420\n"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.cnf");
    assert!(walksnc(&["gen", "-n", "10", "-r", "4.26", "-o", p(&out)]).status.success());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("p cnf 10 43\n"));

    assert_eq!(walksnc(&["gen", "-n", "2", "-k", "3", "-m", "4"]).status.code(), Some(1));
    assert_eq!(walksnc(&["gen", "-n", "5"]).status.code(), Some(1));
}

#[test]
fn solve_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("i.cnf");
    assert!(walksnc(&["gen", "-n", "300", "-r", "4.0", "--seed", "3", "-o", p(&cnf)]).status.success());
    let out = walksnc(&["solve", p(&cnf), "--strategy", "caching", "--seed", "11"]);
    assert_eq!(out.status.code(), Some(10));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "s SATISFIABLE"));
    assert!(text.lines().last().unwrap().ends_with(" 0"));
    let model = dir.path().join("model.txt");
    std::fs::write(&model, &text).unwrap();
    assert_eq!(walksnc(&["verify", p(&cnf), p(&model)]).status.code(), Some(0));

    // flip every value of the model: a random 3-SAT formula is then falsified
    let flipped: String = text
        .lines()
        .filter(|l| l.starts_with('v'))
        .map(|l| {
            let lits: Vec<String> = l[1..]
                .split_whitespace()
                .map(|t| if t == "0" { "0".to_owned() } else { (-t.parse::<i64>().unwrap()).to_string() })
                .collect();
            format!("v {}\n", lits.join(" "))
        })
        .collect();
    std::fs::write(&model, flipped).unwrap();
    assert_eq!(walksnc(&["verify", p(&cnf), p(&model)]).status.code(), Some(1));
}

#[test]
fn solve_unknown_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("u.cnf");
    std::fs::write(&cnf, "p cnf 1 2\n1 0\n-1 0\n").unwrap();
    let out = walksnc(&["solve", p(&cnf), "--max-flips", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "s UNKNOWN"));

    std::fs::write(&cnf, "p cnf 1 2\n1 0\n").unwrap();
    assert_eq!(walksnc(&["solve", p(&cnf)]).status.code(), Some(1));
    assert_eq!(walksnc(&["solve", p(&cnf), "--strategy", "tabu"]).status.code(), Some(1));
    assert_eq!(walksnc(&["solve", "/nonexistent.cnf"]).status.code(), Some(1));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..2 {
        let path = dir.path().join(format!("b{i}.cnf"));
        let seed = i.to_string();
        assert!(walksnc(&["gen", "-n", "100", "-r", "4.0", "--seed", &seed, "-o", p(&path)])
            .status
            .success());
    }
    let csv = dir.path().join("results.csv");
    let out = walksnc(&[
        "bench",
        p(dir.path()),
        "--strategy",
        "separated",
        "--runs",
        "3",
        "--cutoff",
        "10",
        "--seed",
        "1",
        "--workers",
        "2",
        "-o",
        p(&csv),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,seed,status,elapsed_s,flips,flips_per_sec,mean_visited_per_pick"
    );
    assert_eq!(lines.count(), 6);
    assert!(String::from_utf8_lossy(&out.stderr).contains("suc 100.00%"));

    // list-file input with a relative entry
    let list = dir.path().join("list.txt");
    std::fs::write(&list, "# instances\nb0.cnf\n").unwrap();
    let out = walksnc(&["bench", p(&list), "--runs", "2", "--cutoff", "5", "--seed", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 3);
}
