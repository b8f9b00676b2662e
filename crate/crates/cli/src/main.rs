//! `rainbow`: generate instances, solve them, audit the results.
//!
//! Exit status: 0 success, 1 error or failed check, 2 counterexample
//! candidate, 3 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_matching::generators::{
    gen_double_k4, gen_latin_bridge, gen_random, gen_triangle_extremal, read_bridge_matching, LatinSquare,
    RandomSpec,
};
use rainbow_matching::io::{parse_instance, parse_rainbow, write_instance};
use rainbow_matching::rng::derive_seed;
use rainbow_matching::solvers::{exact_max, greedy_extend, local_search, Reason, SolveResult, SolverBudget};
use rainbow_matching::verifiers::{
    lemma_audit, sampling_experiment, stress_conjecture, StressConfig,
};
use rainbow_matching::{Instance, Maximality, RainbowMatching};

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow matchings in clique-coloured multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file.
    Generate(GenerateArgs),
    /// Find a large rainbow matching.
    Solve(SolveArgs),
    /// Check a matching file, or run the lemma audits.
    Verify(VerifyArgs),
    /// Search seeded random instances for a missing full rainbow matching.
    Stress(StressArgs),
    /// Run the vertex-sampling experiment.
    Sample(SampleArgs),
    /// Partial transversals of a Latin square through the bridge instance.
    Latin(LatinArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    TriangleExtremal,
    DoubleK4,
    LatinBridge,
    Random,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    /// Defaults to `n` (no cap).
    #[arg(long)]
    max_mult: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    triangle_fraction: Option<f64>,
    #[arg(long)]
    vertex_count: Option<usize>,
    #[arg(long)]
    square: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    c: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Greedy,
    Exact,
    Local,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: Method,
    #[arg(long)]
    target: Option<usize>,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    /// Rainbow matching or solve result file.
    matching: Option<PathBuf>,
    #[arg(long)]
    lemmas: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StressArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    v: usize,
    #[arg(long)]
    trials: usize,
    /// Defaults to `n` (no cap).
    #[arg(long)]
    max_mult: Option<usize>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "stress-replays")]
    replay_dir: PathBuf,
    /// Run the triangle construction as trial 0.
    #[arg(long)]
    include_extremal: bool,
    #[arg(long)]
    node_limit: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    instance: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// Directory for one report file per run.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct LatinArgs {
    square: PathBuf,
    #[arg(long, default_value_t = 0)]
    c: usize,
    #[arg(long)]
    solve: bool,
    /// Write the bridge instance here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn describe(inst: &Instance) -> String {
    format!(
        "n={} vertex_count={} min_cover={} max_multiplicity={}",
        inst.n(),
        inst.vertex_count(),
        inst.min_cover(),
        inst.max_multiplicity()
    )
}

fn generate(args: GenerateArgs) -> Result<u8> {
    let need_n = || args.n.context("--n is required");
    let inst = match args.kind {
        Kind::TriangleExtremal => gen_triangle_extremal(need_n()?)?,
        Kind::DoubleK4 => gen_double_k4(),
        Kind::LatinBridge => {
            let path = args.square.as_deref().context("--square is required")?;
            let parsed = LatinSquare::parse(&read(path)?)?;
            if parsed.one_based {
                eprintln!("note: {} uses symbols 1..n; shifted to 0..n-1", path.display());
            }
            gen_latin_bridge(&parsed.square, args.c)?
        }
        Kind::Random => {
            let n = need_n()?;
            let v = args.v.context("--v is required")?;
            let seed = args.seed.context("--seed is required")?;
            let mut spec = RandomSpec::new(n, v, args.max_mult.unwrap_or(n), seed);
            if let Some(f) = args.triangle_fraction {
                spec.triangle_fraction = f;
            }
            spec.vertex_count = args.vertex_count;
            gen_random(&spec)?
        }
    };
    let text = write_instance(&inst);
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            println!("{}", describe(&inst));
        }
        None => {
            print!("{text}");
            eprintln!("{}", describe(&inst));
        }
    }
    Ok(EXIT_OK)
}

/// Wraps a heuristic answer: proved optimal at size `n` (or the vertex
/// bound), target reached, and otherwise reported as budget-exhausted.
fn heuristic_result(inst: &Instance, best: RainbowMatching, target: Option<usize>) -> SolveResult {
    let bound = inst.n().min(inst.covered_vertices().len() / 2);
    let optimal = best.len() >= bound;
    let reason = match target {
        Some(t) if best.len() >= t => Reason::TargetReached,
        _ if optimal => Reason::ProvedOptimal,
        _ => Reason::BudgetExhausted,
    };
    SolveResult {
        best,
        optimal,
        nodes_explored: 0,
        reason,
    }
}

fn solve(args: SolveArgs) -> Result<u8> {
    let inst = load_instance(&args.instance)?;
    let mut budget = SolverBudget::default();
    if let Some(limit) = args.node_limit {
        budget.node_limit = limit;
    }
    if let Some(secs) = args.time_limit {
        if !(secs > 0.0 && secs.is_finite()) {
            bail!("--time-limit must be positive");
        }
        budget = budget.with_time_limit(secs);
    }
    if let Some(t) = args.target {
        budget = budget.with_target(t);
    }
    budget.check()?;
    let result = match args.method {
        Method::Exact => exact_max(&inst, budget)?,
        Method::Local => local_search(&inst, budget)?,
        Method::Greedy => {
            let best = greedy_extend(&inst, &RainbowMatching::default())?.canonical();
            heuristic_result(&inst, best, args.target)
        }
    };
    if let Some(path) = &args.out {
        write(path, &result.to_json())?;
    }
    println!("{}", result.summary());
    Ok(match result.reason {
        Reason::BudgetExhausted => EXIT_BUDGET,
        _ => EXIT_OK,
    })
}

fn verify(args: VerifyArgs) -> Result<u8> {
    if args.matching.is_none() && !args.lemmas {
        bail!("give a matching file or --lemmas");
    }
    let inst = load_instance(&args.instance)?;
    let mut code = EXIT_OK;
    if let Some(path) = &args.matching {
        let rm = parse_rainbow(&read(path)?).with_context(|| format!("{}", path.display()))?;
        match inst.verify_rainbow(&rm) {
            Err(v) => {
                println!("valid=false: {v}");
                code = EXIT_FAIL;
            }
            Ok(()) => match inst.is_maximal(&rm)? {
                Maximality::Maximal => println!("valid=true maximal=true size={}", rm.len()),
                Maximality::Extendable { pair, colour } => println!(
                    "valid=true maximal=false size={} extend={pair} colour={colour}",
                    rm.len()
                ),
            },
        }
    }
    if args.lemmas {
        let seed = args.seed.context("--lemmas needs --seed")?;
        let audit = lemma_audit(&inst, seed)?;
        for v in &audit.violations {
            eprintln!("VIOLATION {v}");
        }
        println!("{}", audit.summary());
        if let Some(path) = &args.out {
            write(path, &(serde_json::to_string_pretty(&audit)? + "\n"))?;
        }
        if !audit.ok() {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn stress(args: StressArgs) -> Result<u8> {
    let mut config = StressConfig::new(args.n, args.v, args.trials, args.max_mult.unwrap_or(args.n), args.seed);
    config.include_extremal = args.include_extremal;
    if let Some(limit) = args.node_limit {
        config.node_limit = limit;
    }
    let report = stress_conjecture(&config, args.jobs)?;
    if !report.cases.is_empty() {
        let paths = report.write_replays(&args.replay_dir)?;
        for p in paths {
            eprintln!("replay written: {}", p.display());
        }
    }
    if let Some(path) = &args.out {
        write(path, &report.to_json())?;
    }
    println!("{}", report.summary());
    Ok(if report.failures > 0 {
        EXIT_COUNTEREXAMPLE
    } else if report.unresolved > 0 {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn sample(args: SampleArgs) -> Result<u8> {
    if args.runs == 0 {
        bail!("--runs must be positive");
    }
    let inst = load_instance(&args.instance)?;
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let (mut events, mut expected, mut combined) = (0usize, 0f64, 0usize);
    for run in 0..args.runs {
        let report = sampling_experiment(&inst, derive_seed(args.seed, run as u64))?;
        println!("run={run} {}", report.summary());
        events += report.few_edge_events;
        expected += report.chernoff_expected_events;
        combined += report.combined_size;
        if let Some(dir) = &args.out_dir {
            let path = dir.join(format!("sample-{run:04}.json"));
            write(&path, &(serde_json::to_string(&report)? + "\n"))?;
        }
    }
    let colour_runs = (inst.n() * args.runs).max(1) as f64;
    println!(
        "runs={} p={} few_edge_rate={:.6} chernoff_rate={:.3e} mean_combined={:.2}",
        args.runs,
        rainbow_matching::verifiers::sampling_probability(inst.n()),
        events as f64 / colour_runs,
        expected / colour_runs,
        combined as f64 / args.runs as f64
    );
    Ok(EXIT_OK)
}

fn latin(args: LatinArgs) -> Result<u8> {
    let parsed = LatinSquare::parse(&read(&args.square)?).with_context(|| format!("{}", args.square.display()))?;
    if parsed.one_based {
        eprintln!("note: {} uses symbols 1..n; shifted to 0..n-1", args.square.display());
    }
    let square = parsed.square;
    let inst = gen_latin_bridge(&square, args.c)?;
    if let Some(path) = &args.out {
        write(path, &write_instance(&inst))?;
    }
    println!("order={} c={} {}", square.order(), args.c, describe(&inst));
    if !args.solve {
        return Ok(EXIT_OK);
    }
    let result = exact_max(&inst, SolverBudget::default())?;
    let t = read_bridge_matching(&square, args.c, &result.best)?;
    println!(
        "transversal size={} cells={} stars={} optimal={}",
        t.len(),
        t.cells.len(),
        t.stars.len(),
        result.optimal
    );
    for (r, c, s) in &t.cells {
        println!("cell {r} {c} {s}");
    }
    for (k, s) in &t.stars {
        println!("star {k} {s}");
    }
    Ok(if result.optimal { EXIT_OK } else { EXIT_BUDGET })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_FAIL } else { EXIT_OK });
        }
    };
    let outcome = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Stress(a) => stress(a),
        Command::Sample(a) => sample(a),
        Command::Latin(a) => latin(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}
