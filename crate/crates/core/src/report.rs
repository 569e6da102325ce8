//! Run orchestration and every file format the tool emits: basis files,
//! the per-degree CSV, the human summary, and round checkpoints.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use thiserror::Error;

use crate::buchberger::{
    init_state, interreduce, run_serial_from, BasisStore, CriteriaConfig, DegreeStats,
    EngineConfig, EngineError, EngineOutcome, EngineState, PairCounters, SPair,
};
use crate::ideals::{parse_entry_polynomial, parse_ring_file, ProblemError, ProblemSpec};
use crate::lattice::AntichainStrategy;
use crate::poly::polynomial_to_string;
use crate::scheduler::{run_master_from, MasterConfig};

/// The exact per-degree CSV schema; pinned for external tooling.
pub const CSV_HEADER: &str =
    "workers,round,degree,spairs_in,zero_reductions,new_elements,reduce_ms,genpairs_ms,worker_id";

/// How to run a computation. `workers == 1` routes to the serial engine;
/// anything larger to the scheduler with that many worker threads.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub workers: usize,
    pub strategy: AntichainStrategy,
    pub criteria: CriteriaConfig,
    pub checkpoint: Option<std::path::PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            workers: 1,
            strategy: AntichainStrategy::default(),
            criteria: CriteriaConfig::default(),
            checkpoint: None,
        }
    }
}

/// Per-round aggregates over the workers active in that round, matching
/// the benchmark's max/min/mean presentation.
#[derive(Debug, Clone)]
pub struct RoundAggregate {
    pub round: u64,
    pub degrees: u64,
    pub spairs: u64,
    pub span: Duration,
    pub reduce_max: Duration,
    pub reduce_min: Duration,
    pub reduce_mean: Duration,
    pub genpairs_max: Duration,
    pub genpairs_min: Duration,
    pub genpairs_mean: Duration,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub problem: String,
    pub workers: usize,
    pub strategy: AntichainStrategy,
    pub criteria: CriteriaConfig,
    pub wallclock: Duration,
    pub rows: Vec<DegreeStats>,
    pub rounds: Vec<RoundAggregate>,
    pub counters: PairCounters,
    pub raw_size: usize,
    pub reduced_size: usize,
}

/// A finished computation: the raw basis, its reduced form, and the report.
#[derive(Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub raw: BasisStore,
    pub reduced: BasisStore,
}

/// Runs a problem under the configured engine and assembles the report.
pub fn run(problem: &ProblemSpec, label: &str, cfg: &RunConfig) -> Result<RunOutcome, EngineError> {
    let state = init_state(problem, &cfg.criteria);
    run_from(state, problem, label, cfg)
}

/// Continues from an existing (e.g. checkpointed) state.
pub fn run_from(
    state: EngineState,
    problem: &ProblemSpec,
    label: &str,
    cfg: &RunConfig,
) -> Result<RunOutcome, EngineError> {
    let engine = EngineConfig {
        criteria: cfg.criteria,
        strategy: cfg.strategy,
        checkpoint: cfg.checkpoint.clone(),
    };
    let outcome = if cfg.workers <= 1 {
        run_serial_from(state, problem, &engine)?
    } else {
        run_master_from(
            state,
            problem,
            &MasterConfig {
                workers: cfg.workers,
                engine,
            },
        )?
    };
    Ok(assemble(problem, label, cfg, outcome))
}

fn assemble(
    problem: &ProblemSpec,
    label: &str,
    cfg: &RunConfig,
    outcome: EngineOutcome,
) -> RunOutcome {
    let reduced = interreduce(problem, &outcome.store);
    let rounds = aggregate_rounds(&outcome.rows, &outcome.round_spans);
    debug_assert!(
        rounds
            .iter()
            .all(|r| outcome.wallclock >= r.span || r.span.is_zero()),
        "wallclock below a round span"
    );
    let report = RunReport {
        problem: label.to_string(),
        workers: cfg.workers,
        strategy: cfg.strategy,
        criteria: cfg.criteria,
        wallclock: outcome.wallclock,
        rows: outcome.rows,
        rounds,
        counters: outcome.counters,
        raw_size: outcome.store.len(),
        reduced_size: reduced.len(),
    };
    RunOutcome {
        report,
        raw: outcome.store,
        reduced,
    }
}

fn aggregate_rounds(rows: &[DegreeStats], spans: &[(u64, Duration)]) -> Vec<RoundAggregate> {
    let span_of: BTreeMap<u64, Duration> = spans.iter().copied().collect();
    let mut by_round: BTreeMap<u64, Vec<&DegreeStats>> = BTreeMap::new();
    for r in rows {
        by_round.entry(r.round).or_default().push(r);
    }
    let mut out = Vec::with_capacity(by_round.len());
    for (round, rows) in by_round {
        let mut per_worker: BTreeMap<usize, (Duration, Duration)> = BTreeMap::new();
        for r in &rows {
            let slot = per_worker.entry(r.worker).or_default();
            slot.0 += r.reduce_time;
            slot.1 += r.genpairs_time;
        }
        let reduce: Vec<Duration> = per_worker.values().map(|v| v.0).collect();
        let genpairs: Vec<Duration> = per_worker.values().map(|v| v.1).collect();
        let mean = |v: &[Duration]| {
            if v.is_empty() {
                Duration::ZERO
            } else {
                v.iter().sum::<Duration>() / v.len() as u32
            }
        };
        out.push(RoundAggregate {
            round,
            degrees: rows.len() as u64,
            spairs: rows.iter().map(|r| r.spairs_in).sum(),
            span: span_of.get(&round).copied().unwrap_or(Duration::ZERO),
            reduce_max: reduce.iter().max().copied().unwrap_or(Duration::ZERO),
            reduce_min: reduce.iter().min().copied().unwrap_or(Duration::ZERO),
            reduce_mean: mean(&reduce),
            genpairs_max: genpairs.iter().max().copied().unwrap_or(Duration::ZERO),
            genpairs_min: genpairs.iter().min().copied().unwrap_or(Duration::ZERO),
            genpairs_mean: mean(&genpairs),
        });
    }
    out
}

fn ms(d: Duration) -> String {
    format!("{:.3}", d.as_secs_f64() * 1e3)
}

/// Per-degree CSV rows for one or more runs, under the pinned header.
/// The degree field is quoted because its textual form contains commas.
pub fn csv_rows(reports: &[&RunReport]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for report in reports {
        for r in &report.rows {
            let _ = writeln!(
                out,
                "{},{},\"{}\",{},{},{},{},{},{}",
                report.workers,
                r.round,
                r.degree,
                r.spairs_in,
                r.zero_reductions,
                r.new_elements,
                ms(r.reduce_time),
                ms(r.genpairs_time),
                r.worker
            );
        }
    }
    out
}

/// Human-readable run summary with the per-round aggregate table.
pub fn summary_text(report: &RunReport) -> String {
    let mut out = String::new();
    let engine = if report.workers <= 1 {
        "serial".to_string()
    } else {
        format!("scheduler ({} workers)", report.workers)
    };
    let _ = writeln!(out, "problem: {}", report.problem);
    let _ = writeln!(out, "engine: {engine}");
    let _ = writeln!(out, "strategy: {}", report.strategy);
    let _ = writeln!(out, "criteria: {}", report.criteria);
    let _ = writeln!(out, "wallclock: {:.3} s", report.wallclock.as_secs_f64());
    let _ = writeln!(out, "raw basis: {} elements", report.raw_size);
    let _ = writeln!(out, "reduced basis: {} elements", report.reduced_size);
    let c = report.counters;
    let _ = writeln!(
        out,
        "pairs: generated {}, enqueued {}, culled at generation {}, culled pending {}",
        c.generated, c.enqueued, c.culled_generation, c.culled_pending
    );
    let _ = writeln!(
        out,
        "round degrees spairs span_ms reduce_max reduce_min reduce_mean gen_max gen_min gen_mean"
    );
    for r in &report.rounds {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {} {} {} {} {}",
            r.round,
            r.degrees,
            r.spairs,
            ms(r.span),
            ms(r.reduce_max),
            ms(r.reduce_min),
            ms(r.reduce_mean),
            ms(r.genpairs_max),
            ms(r.genpairs_min),
            ms(r.genpairs_mean),
        );
    }
    out
}

/// Canonical basis file: the ring header, then one polynomial per line,
/// sorted by (multidegree text form, then leading monomial). Stable across
/// runs; used for golden comparisons.
pub fn render_basis(problem: &ProblemSpec, store: &BasisStore) -> String {
    let ring = problem.ring();
    let grading = problem.grading();
    let mut out = String::new();
    let _ = writeln!(out, "modulus: {}", ring.field().modulus());
    let _ = writeln!(out, "vars: {}", ring.vars().join(" "));
    let _ = writeln!(out, "grading-dim: {}", grading.dim());
    for (i, v) in ring.vars().iter().enumerate() {
        let _ = writeln!(out, "degree: {v} {}", grading.var_degree(i));
    }
    let _ = writeln!(out, "order: {}", ring.order().kind());
    let mut elems: Vec<_> = store.elements().iter().collect();
    elems.sort_by(|a, b| {
        a.degree.cmp(&b.degree).then_with(|| {
            ring.order()
                .cmp(a.poly.leading_monomial(), b.poly.leading_monomial())
        })
    });
    for e in elems {
        let _ = writeln!(
            out,
            "elem: {} {}",
            e.degree,
            polynomial_to_string(ring, &e.poly)
        );
    }
    out
}

/// A basis file read back: its own ring context plus the elements.
pub struct BasisFile {
    pub problem: ProblemSpec,
    pub store: BasisStore,
}

/// Parses a basis file. Elements are normalized monic; each stored degree
/// is validated against the grading.
pub fn parse_basis_file(text: &str) -> Result<BasisFile, ProblemError> {
    let parsed = parse_ring_file(text, "elem")?;
    let ring = parsed.ring;
    let grading = parsed.grading;
    let mut store = BasisStore::new();
    for (line, col, value) in &parsed.entries {
        let Some((deg_text, poly_text)) = value.split_once(char::is_whitespace) else {
            return Err(ProblemError::Syntax {
                line: *line,
                col: *col,
                message: "elem needs `<degree> <polynomial>`".into(),
            });
        };
        let degree: crate::lattice::Multidegree =
            deg_text.parse().map_err(|e| ProblemError::Syntax {
                line: *line,
                col: *col,
                message: e,
            })?;
        let poly = parse_entry_polynomial(&ring, *line, *col, poly_text.trim_start())?;
        if poly.is_zero() {
            return Err(ProblemError::Syntax {
                line: *line,
                col: *col,
                message: "a basis cannot contain the zero polynomial".into(),
            });
        }
        let computed = grading
            .homogeneous_degree(&poly)
            .map_err(|e| ProblemError::Syntax {
                line: *line,
                col: *col,
                message: format!("element is not homogeneous: {e}"),
            })?;
        if computed != degree {
            return Err(ProblemError::Syntax {
                line: *line,
                col: *col,
                message: format!("stored degree {degree} disagrees with computed {computed}"),
            });
        }
        store.append_unchecked(ring.make_monic(&poly), degree);
    }
    // A basis file carries no generators of its own.
    let problem = ProblemSpec::new(ring, grading, Vec::new())
        .expect("an empty generator list is always valid");
    Ok(BasisFile { problem, store })
}

/// Errors specific to checkpoint files.
#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("checkpoint was written for a different problem")]
    ProblemMismatch,
}

fn fnv1a(text: &str) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for b in text.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Writes the canonical serialization of the engine state: problem
/// fingerprint, counters, store in append order, pending pairs. Written
/// atomically (tmp + rename) after every round.
pub fn write_checkpoint(
    path: &Path,
    problem: &ProblemSpec,
    state: &EngineState,
) -> std::io::Result<()> {
    let ring = problem.ring();
    let mut out = String::new();
    let _ = writeln!(out, "checkpoint: 1");
    let _ = writeln!(out, "problem-fingerprint: {:016x}", fnv1a(&problem.to_text()));
    let _ = writeln!(out, "round: {}", state.round);
    let c = state.counters;
    let _ = writeln!(
        out,
        "pairs: {} {} {} {} {}",
        c.generated, c.enqueued, c.culled_generation, c.culled_pending, c.processed
    );
    for e in state.store.elements() {
        let _ = writeln!(
            out,
            "elem: {} {}",
            e.degree,
            polynomial_to_string(ring, &e.poly)
        );
    }
    for p in state.pending.iter_pairs() {
        let _ = writeln!(out, "pair: {} {}", p.i, p.j);
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, out)?;
    fs::rename(&tmp, path)
}

/// Reads a checkpoint back into an engine state for the given problem.
pub fn read_checkpoint(path: &Path, problem: &ProblemSpec) -> Result<EngineState, CheckpointError> {
    let text = fs::read_to_string(path)?;
    let ring = problem.ring();
    let grading = problem.grading();
    let malformed = |line: usize, message: String| CheckpointError::Malformed { line, message };

    let mut state = EngineState {
        store: BasisStore::new(),
        pending: crate::buchberger::PendingQueue::new(),
        round: 0,
        counters: PairCounters::default(),
    };
    let mut seen_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(malformed(line_no, format!("expected `key: value`, found `{line}`")));
        };
        let value = value.trim();
        match key.trim() {
            "checkpoint" => {
                if value != "1" {
                    return Err(malformed(line_no, format!("unsupported version {value}")));
                }
                seen_header = true;
            }
            "problem-fingerprint" => {
                let expect = format!("{:016x}", fnv1a(&problem.to_text()));
                if value != expect {
                    return Err(CheckpointError::ProblemMismatch);
                }
            }
            "round" => {
                state.round = value
                    .parse()
                    .map_err(|e| malformed(line_no, format!("bad round: {e}")))?;
            }
            "pairs" => {
                let nums: Vec<u64> = value
                    .split_whitespace()
                    .map(|t| t.parse::<u64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| malformed(line_no, format!("bad counters: {e}")))?;
                if nums.len() != 5 {
                    return Err(malformed(line_no, "expected five counters".into()));
                }
                state.counters = PairCounters {
                    generated: nums[0],
                    enqueued: nums[1],
                    culled_generation: nums[2],
                    culled_pending: nums[3],
                    processed: nums[4],
                };
            }
            "elem" => {
                let Some((deg_text, poly_text)) = value.split_once(char::is_whitespace) else {
                    return Err(malformed(line_no, "elem needs `<degree> <polynomial>`".into()));
                };
                let degree: crate::lattice::Multidegree = deg_text
                    .parse()
                    .map_err(|e| malformed(line_no, e))?;
                let poly = crate::poly::parse_polynomial(ring, poly_text.trim())
                    .map_err(|e| malformed(line_no, e.to_string()))?;
                let computed = grading.homogeneous_degree(&poly).map_err(|e| {
                    malformed(line_no, format!("element is not homogeneous: {e}"))
                })?;
                if computed != degree {
                    return Err(malformed(
                        line_no,
                        format!("stored degree {degree} disagrees with computed {computed}"),
                    ));
                }
                state.store.append(ring.make_monic(&poly), degree);
            }
            "pair" => {
                let nums: Vec<usize> = value
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| malformed(line_no, format!("bad pair: {e}")))?;
                if nums.len() != 2 || nums[0] >= nums[1] || nums[1] >= state.store.len() {
                    return Err(malformed(line_no, "pair indices out of range".into()));
                }
                state
                    .pending
                    .insert(SPair::new(nums[0], nums[1], &state.store, grading));
            }
            other => {
                return Err(malformed(line_no, format!("unknown key `{other}`")));
            }
        }
    }
    if !seen_header {
        return Err(malformed(1, "not a checkpoint file".into()));
    }
    Ok(state)
}

/// Runs the same problem once per worker count; the data behind the
/// worker-sweep benchmark.
pub fn bench_sweep(
    problem: &ProblemSpec,
    label: &str,
    workers: std::ops::RangeInclusive<usize>,
    strategy: AntichainStrategy,
    criteria: CriteriaConfig,
) -> Result<Vec<RunOutcome>, EngineError> {
    let mut out = Vec::new();
    for w in workers {
        let cfg = RunConfig {
            workers: w,
            strategy,
            criteria,
            checkpoint: None,
        };
        out.push(run(problem, label, &cfg)?);
    }
    Ok(out)
}
