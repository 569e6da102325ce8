//! `mgb` — compute, verify and benchmark Gröbner bases of multigraded
//! homogeneous ideals.
//!
//! Exit codes: 0 success, 1 input error, 2 internal invariant violation,
//! 3 certificate failure.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use mgb_core::buchberger::CriteriaConfig;
use mgb_core::ideals::{builtin_problem, parse_problem, ProblemSpec};
use mgb_core::lattice::AntichainStrategy;
use mgb_core::poly::OrderKind;
use mgb_core::report::{
    bench_sweep, csv_rows, parse_basis_file, read_checkpoint, render_basis, run, run_from,
    summary_text, RunConfig, RunOutcome,
};
use mgb_core::verify_basis;

#[derive(Parser)]
#[command(
    name = "mgb",
    version,
    about = "Gröbner bases of multigraded homogeneous ideals, serial or antichain-parallel"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the raw and reduced Gröbner bases plus a run report.
    Compute(ComputeArgs),
    /// Check the Gröbner certificate of a basis file against a problem.
    Verify(VerifyArgs),
    /// Worker-count sweep over a builtin family; emits plot-ready CSV.
    Bench(BenchArgs),
    /// Print a builtin problem in the problem-file grammar.
    Example {
        /// Builtin name, e.g. commuting:2.
        name: String,
    },
}

#[derive(Args)]
struct ComputeArgs {
    /// Problem file (or use --builtin).
    problem: Option<PathBuf>,
    /// Builtin problem, e.g. commuting:3. Note: commuting:4 is expensive
    /// (hours-scale on typical hardware).
    #[arg(long, conflicts_with = "problem")]
    builtin: Option<String>,
    /// Worker threads; 1 runs the serial reference engine.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Antichain strategy: min-occupied or total-degree.
    #[arg(long, default_value = "min-occupied")]
    strategy: AntichainStrategy,
    /// Override the problem's monomial order: lex, grlex or degrevlex.
    #[arg(long)]
    order: Option<OrderKind>,
    /// S-pair elimination: none, product or product+chain.
    #[arg(long, default_value = "product")]
    criteria: CriteriaConfig,
    /// Write a checkpoint after every round; resume from it if it exists.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Output directory for basis.txt, basis.reduced.txt, report.csv,
    /// summary.txt.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Basis file produced by `compute`.
    basis: PathBuf,
    /// Problem file the basis claims to solve (or use --builtin).
    problem: Option<PathBuf>,
    /// Builtin problem name instead of a problem file.
    #[arg(long, conflicts_with = "problem")]
    builtin: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Builtin family instance, e.g. commuting:3.
    family: String,
    /// Worker range, e.g. 1..7 (inclusive) or a single count.
    #[arg(long, default_value = "1..4")]
    workers: String,
    /// Antichain strategy for every run.
    #[arg(long, default_value = "min-occupied")]
    strategy: AntichainStrategy,
    /// S-pair elimination for every run.
    #[arg(long, default_value = "product")]
    criteria: CriteriaConfig,
    /// Output directory for bench.csv and bench-summary.txt.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

enum CliError {
    Input(String),
    Internal(String),
    Certificate(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
            CliError::Certificate(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Internal(m) | CliError::Certificate(m) => {
                f.write_str(m)
            }
        }
    }
}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            std::process::exit(1);
        }
        Err(e) => {
            // --help / --version.
            let _ = e.print();
            std::process::exit(0);
        }
    };
    let result = std::panic::catch_unwind(|| dispatch(cli));
    let code = match result {
        Ok(Ok(())) => 0,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
        Err(_) => {
            // The panic hook already printed the message.
            eprintln!("error: internal invariant violation");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Example { name } => {
            let problem = builtin_problem(&name).map_err(input_err)?;
            print!("{}", problem.to_text());
            Ok(())
        }
    }
}

fn load_problem(
    file: &Option<PathBuf>,
    builtin: &Option<String>,
) -> Result<(ProblemSpec, String), CliError> {
    match (file, builtin) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
            let problem = parse_problem(&text)
                .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            Ok((problem, path.display().to_string()))
        }
        (None, Some(name)) => {
            let problem = builtin_problem(name).map_err(input_err)?;
            Ok((problem, name.clone()))
        }
        _ => Err(CliError::Input(
            "specify exactly one of a problem file or --builtin NAME".into(),
        )),
    }
}

fn engine_err(e: mgb_core::EngineError) -> CliError {
    match e {
        mgb_core::EngineError::WorkerFailure { .. } => CliError::Internal(e.to_string()),
        mgb_core::EngineError::Checkpoint(_) => CliError::Input(e.to_string()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| input_err(format!("cannot write {}: {e}", path.display())))
}

fn cmd_compute(args: ComputeArgs) -> Result<(), CliError> {
    let (mut problem, label) = load_problem(&args.problem, &args.builtin)?;
    if let Some(kind) = args.order {
        problem = problem.with_order(kind);
    }
    let cfg = RunConfig {
        workers: args.workers.max(1),
        strategy: args.strategy,
        criteria: args.criteria,
        checkpoint: args.checkpoint.clone(),
    };

    let resumed = match &args.checkpoint {
        Some(path) if path.exists() => {
            let state = read_checkpoint(path, &problem).map_err(input_err)?;
            eprintln!(
                "resuming from {} at round {}",
                path.display(),
                state.round
            );
            Some(state)
        }
        _ => None,
    };
    let outcome: RunOutcome = match resumed {
        Some(state) => run_from(state, &problem, &label, &cfg).map_err(engine_err)?,
        None => run(&problem, &label, &cfg).map_err(engine_err)?,
    };

    fs::create_dir_all(&args.out)
        .map_err(|e| input_err(format!("cannot create {}: {e}", args.out.display())))?;
    write_file(&args.out.join("basis.txt"), &render_basis(&problem, &outcome.raw))?;
    write_file(
        &args.out.join("basis.reduced.txt"),
        &render_basis(&problem, &outcome.reduced),
    )?;
    write_file(&args.out.join("report.csv"), &csv_rows(&[&outcome.report]))?;
    let summary = summary_text(&outcome.report);
    write_file(&args.out.join("summary.txt"), &summary)?;
    print!("{summary}");
    println!("outputs written to {}", args.out.display());
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.basis)
        .map_err(|e| input_err(format!("cannot read {}: {e}", args.basis.display())))?;
    let basis = parse_basis_file(&text)
        .map_err(|e| input_err(format!("{}: {e}", args.basis.display())))?;
    let (problem, label) = load_problem(&args.problem, &args.builtin)?;

    if basis.problem.ring() != problem.ring() || basis.problem.grading() != problem.grading() {
        return Err(CliError::Input(
            "basis file and problem disagree on ring, order or grading".into(),
        ));
    }

    match verify_basis(&problem, &basis.store) {
        Ok(()) => {
            println!(
                "certificate OK: {} elements, every S-pair and every generator of {label} reduces to zero",
                basis.store.len()
            );
            Ok(())
        }
        Err(failure) => Err(CliError::Certificate(format!(
            "certificate FAILED for {label}: {failure}"
        ))),
    }
}

fn parse_worker_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, CliError> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| input_err(format!("bad worker count `{t}`: {e}")))
    };
    let range = match text.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi)?,
        None => {
            let n = parse(text)?;
            n..=n
        }
    };
    if range.is_empty() || *range.start() < 1 {
        return Err(CliError::Input(format!("empty or invalid worker range `{text}`")));
    }
    Ok(range)
}

fn cmd_bench(args: BenchArgs) -> Result<(), CliError> {
    let problem = builtin_problem(&args.family).map_err(input_err)?;
    let workers = parse_worker_range(&args.workers)?;
    let outcomes = bench_sweep(&problem, &args.family, workers, args.strategy, args.criteria)
        .map_err(engine_err)?;

    // Every worker count must land on the same reduced basis.
    let renderings: Vec<String> = outcomes
        .iter()
        .map(|o| render_basis(&problem, &o.reduced))
        .collect();
    if renderings.windows(2).any(|w| w[0] != w[1]) {
        return Err(CliError::Internal(
            "reduced bases differ across worker counts".into(),
        ));
    }

    fs::create_dir_all(&args.out)
        .map_err(|e| input_err(format!("cannot create {}: {e}", args.out.display())))?;
    let reports: Vec<_> = outcomes.iter().map(|o| &o.report).collect();
    write_file(&args.out.join("bench.csv"), &csv_rows(&reports))?;
    let mut summary = String::new();
    for o in &outcomes {
        summary.push_str(&summary_text(&o.report));
        summary.push('\n');
    }
    write_file(&args.out.join("bench-summary.txt"), &summary)?;
    print!("{summary}");
    println!(
        "identical reduced bases across workers {}; outputs written to {}",
        args.workers,
        args.out.display()
    );
    Ok(())
}
