use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand};

use walksnc::bench::{collect_instances, parse_model, run_benchmark, verify_model, write_csv};
use walksnc::cnf::{clauses_for_ratio, emit_dimacs, generate_uniform_ksat, read_dimacs_file};
use walksnc::pickers::DEFAULT_NOISE;
use walksnc::solver::{solve, SolveOutcome, UnknownReason};
use walksnc::{PickStrategy, SolverConfig};

const EXIT_SAT: u8 = 10;
const EXIT_UNKNOWN: u8 = 0;
const EXIT_ERROR: u8 = 1;

#[derive(Parser)]
#[command(
    name = "walksnc",
    version,
    about = "WalkSAT local search with separated non-caching break computation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a uniform random k-SAT instance in DIMACS format.
    Gen(GenArgs),
    /// Search for a model of a DIMACS instance.
    Solve(SolveArgs),
    /// Run a strategy repeatedly over an instance set and report suc/par10.
    Bench(BenchArgs),
    /// Check a model file against a DIMACS instance.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("size").required(true).args(["clauses", "ratio"])))]
struct GenArgs {
    #[arg(short = 'n', long = "vars")]
    vars: usize,
    #[arg(short = 'k', long = "width", default_value_t = 3)]
    width: usize,
    #[arg(short = 'm', long = "clauses")]
    clauses: Option<usize>,
    /// Clause/variable ratio; the clause count is round(ratio * n).
    #[arg(short = 'r', long = "ratio")]
    ratio: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// separated | noncaching | caching
    #[arg(long, default_value = "separated")]
    strategy: PickStrategy,
    #[arg(long, default_value_t = DEFAULT_NOISE)]
    noise: f64,
    #[arg(long = "max-flips", default_value_t = 1_000_000_000)]
    max_flips: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    restarts: u32,
}

impl SearchArgs {
    fn config(&self, timeout: Option<f64>) -> SolverConfig {
        SolverConfig {
            strategy: self.strategy,
            noise: self.noise,
            max_flips: self.max_flips,
            timeout: timeout.map(Duration::from_secs_f64),
            seed: self.seed,
            restarts: self.restarts,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .cnf files, or a file listing instance paths.
    source: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
    #[arg(long, default_value_t = 10)]
    runs: u32,
    /// Per-run cutoff in seconds.
    #[arg(long)]
    cutoff: f64,
    #[arg(long)]
    workers: Option<usize>,
    /// CSV destination; stdout when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    cnf: PathBuf,
    model: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Gen(args) => gen(args),
        Command::Solve(args) => solve_cmd(args),
        Command::Bench(args) => bench(args),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

type CmdResult = Result<u8, Box<dyn std::error::Error>>;

fn gen(args: GenArgs) -> CmdResult {
    let m = match (args.clauses, args.ratio) {
        (Some(m), _) => m,
        (None, Some(r)) => clauses_for_ratio(args.vars, r),
        (None, None) => unreachable!("clap enforces -m or -r"),
    };
    let f = generate_uniform_ksat(args.vars, args.width, m, args.seed)?;
    let text = emit_dimacs(&f);
    match args.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn solve_cmd(args: SolveArgs) -> CmdResult {
    let f = read_dimacs_file(&args.file)?;
    let cfg = args.search.config(args.timeout);
    let out = solve(&f, &cfg)?;
    let stdout = io::stdout();
    let mut w = BufWriter::new(stdout.lock());
    write_outcome(&mut w, &cfg, &out)?;
    w.flush()?;
    Ok(if out.is_sat() { EXIT_SAT } else { EXIT_UNKNOWN })
}

fn write_outcome<W: Write>(w: &mut W, cfg: &SolverConfig, out: &SolveOutcome) -> io::Result<()> {
    writeln!(w, "c strategy {} noise {} seed {}", cfg.strategy, cfg.noise, cfg.seed)?;
    writeln!(
        w,
        "c flips {} time {:.3}s flips/s {:.0} visited/pick {:.3}",
        out.flips,
        out.elapsed.as_secs_f64(),
        out.flips_per_sec(),
        out.pick_stats.mean_visited_per_pick()
    )?;
    match &out.model {
        Some(model) => {
            writeln!(w, "s SATISFIABLE")?;
            for chunk in model.to_dimacs().chunks(16) {
                write!(w, "v")?;
                for lit in chunk {
                    write!(w, " {lit}")?;
                }
                writeln!(w)?;
            }
            writeln!(w, "v 0")?;
        }
        None => {
            if let Some(UnknownReason::EmptyClause(c)) = out.reason {
                writeln!(w, "c clause {c} is empty")?;
            }
            writeln!(w, "s UNKNOWN")?;
        }
    }
    Ok(())
}

fn bench(args: BenchArgs) -> CmdResult {
    let instances = collect_instances(&args.source)?;
    if instances.is_empty() {
        return Err(format!("no instances found in {}", args.source.display()).into());
    }
    let workers = args.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = args.search.config(None);
    let report = run_benchmark(&instances, &cfg, args.runs, args.cutoff, workers)?;
    match &args.output {
        Some(path) => write_csv(&report.records, fs::File::create(path)?)?,
        None => write_csv(&report.records, io::stdout().lock())?,
    }
    let s = &report.summary;
    eprintln!(
        "strategy {} instances {} runs {} successes {} suc {:.2}% par10 {:.3}s",
        cfg.strategy,
        instances.len(),
        s.runs,
        s.successes,
        s.suc,
        s.par10
    );
    if let Some(t) = s.mean_success_time {
        eprintln!("mean successful time {t:.3}s");
    }
    Ok(0)
}

fn verify(args: VerifyArgs) -> CmdResult {
    let f = read_dimacs_file(&args.cnf)?;
    let model = parse_model(&fs::read_to_string(&args.model)?, f.num_vars())?;
    if verify_model(&f, &model)? {
        println!("c model satisfies all {} clauses", f.num_clauses());
        Ok(0)
    } else {
        println!("c model falsifies at least one clause");
        Ok(1)
    }
}
