//! The degree-by-degree Buchberger engine: shared state, bucket reduction,
//! merging, the serial driver and interreduction.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::ideals::ProblemSpec;
use crate::lattice::{AntichainStrategy, Multidegree};
use crate::poly::{GradingMap, PolyRing, Polynomial};
use crate::util::strict_checks;

use super::pairs::{cull_pending, generate_pairs, s_polynomial, CriteriaConfig, PendingQueue, SPair};
use super::reduce::{normal_form, normal_form_against_list, ReducerScope};
use super::store::{BasisElement, BasisStore};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("worker {worker} failed; aborting the computation: {message}")]
    WorkerFailure { worker: usize, message: String },
    #[error("checkpoint i/o: {0}")]
    Checkpoint(#[from] std::io::Error),
}

/// Per-degree measurements, one row per processed bucket. These are the
/// quantities the benchmark harness aggregates.
#[derive(Debug, Clone)]
pub struct DegreeStats {
    pub degree: Multidegree,
    pub round: u64,
    pub worker: usize,
    pub spairs_in: u64,
    pub zero_reductions: u64,
    pub new_elements: u64,
    pub reduce_time: Duration,
    pub genpairs_time: Duration,
}

/// Running totals for the work-conservation check: once the queue is
/// empty, `processed + culled_pending == enqueued`. Checkpoints persist
/// these, so the identity survives interrupted runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairCounters {
    /// Raw candidate pairs considered at generation time.
    pub generated: u64,
    /// Pairs that actually entered the pending queue.
    pub enqueued: u64,
    /// Candidates eliminated at generation time by the enabled criteria.
    pub culled_generation: u64,
    /// Previously pending pairs removed by the chain criterion.
    pub culled_pending: u64,
    /// Pairs handed to reduction (drained from the queue).
    pub processed: u64,
}

/// Everything the computation carries between rounds. Checkpoints are a
/// serialization of this plus the problem.
#[derive(Debug, Clone)]
pub struct EngineState {
    pub store: BasisStore,
    pub pending: PendingQueue,
    pub round: u64,
    pub counters: PairCounters,
}

/// Result of a completed run, before interreduction.
#[derive(Debug)]
pub struct EngineOutcome {
    pub store: BasisStore,
    pub rows: Vec<DegreeStats>,
    pub rounds: u64,
    /// (round number, wall span) for every round this process executed;
    /// resumed runs only cover the rounds after the checkpoint.
    pub round_spans: Vec<(u64, Duration)>,
    pub counters: PairCounters,
    pub wallclock: Duration,
}

/// Knobs shared by the serial driver and the scheduler.
#[derive(Debug, Clone, Default)]
pub struct EngineConfig {
    pub criteria: CriteriaConfig,
    pub strategy: AntichainStrategy,
    pub checkpoint: Option<PathBuf>,
}

/// Seeds the computation: input generators are normalized (zeros and
/// duplicates dropped, each made monic, then interreduced), stored, and all
/// initial pairs enqueued.
pub fn init_state(problem: &ProblemSpec, criteria: &CriteriaConfig) -> EngineState {
    let ring = problem.ring();
    let grading = problem.grading();

    let mut gens: Vec<Polynomial> = Vec::new();
    for g in problem.generators() {
        if g.is_zero() {
            continue;
        }
        let monic = ring.make_monic(g);
        if !gens.contains(&monic) {
            gens.push(monic);
        }
    }
    let gens = interreduce_list(ring, grading, gens);

    let mut state = EngineState {
        store: BasisStore::new(),
        pending: PendingQueue::new(),
        round: 0,
        counters: PairCounters::default(),
    };
    let mut indices = Vec::with_capacity(gens.len());
    for g in gens {
        let degree = grading
            .homogeneous_degree(&g)
            .expect("problem generators are homogeneous");
        indices.push(state.store.append(g, degree));
    }
    for &j in &indices {
        enqueue_pairs_for(grading, j, &mut state, criteria);
    }
    state
}

/// Mutual full reduction until stable; zeros dropped, results monic.
fn interreduce_list(
    ring: &PolyRing,
    grading: &GradingMap,
    gens: Vec<Polynomial>,
) -> Vec<Polynomial> {
    let mut entries: Vec<(Polynomial, Multidegree)> = gens
        .into_iter()
        .map(|g| {
            let d = grading
                .homogeneous_degree(&g)
                .expect("generators are homogeneous");
            (g, d)
        })
        .collect();
    loop {
        let mut changed = false;
        for i in 0..entries.len() {
            if entries[i].0.is_zero() {
                continue;
            }
            let current = entries[i].0.clone();
            let nf = normal_form_against_list(ring, grading, current.clone(), &entries, Some(i));
            let nf = if nf.is_zero() { nf } else { ring.make_monic(&nf) };
            if nf != current {
                changed = true;
                entries[i].0 = nf;
            }
        }
        if !changed {
            break;
        }
    }
    entries
        .into_iter()
        .filter(|(g, _)| !g.is_zero())
        .map(|(g, _)| g)
        .collect()
}

/// Generates, counts and enqueues the pairs of a newly stored element,
/// applying the chain criterion to already pending pairs when enabled.
fn enqueue_pairs_for(
    grading: &GradingMap,
    j: usize,
    state: &mut EngineState,
    criteria: &CriteriaConfig,
) -> Vec<SPair> {
    if criteria.chain {
        state.counters.culled_pending += cull_pending(&state.store, j, &mut state.pending);
    }
    let pairs = generate_pairs(grading, &[j], &state.store, criteria);
    state.counters.generated += j as u64;
    state.counters.enqueued += pairs.len() as u64;
    state.counters.culled_generation += j as u64 - pairs.len() as u64;
    state.pending.extend(pairs.iter().cloned());
    pairs
}

pub(crate) struct BucketOutcome {
    pub new_elements: Vec<BasisElement>,
    pub spairs_in: u64,
    pub zero_reductions: u64,
    pub reduce_time: Duration,
}

/// Reduces every pair of one degree bucket against the base restricted to
/// `{degree ≤ d}` plus the elements this very call appends. Pure with
/// respect to the base store; both the serial driver and the workers go
/// through here.
pub(crate) fn reduce_bucket(
    ring: &PolyRing,
    grading: &GradingMap,
    degree: &Multidegree,
    mut pairs: Vec<SPair>,
    base: &BasisStore,
) -> BucketOutcome {
    let start = Instant::now();
    // Deterministic processing order: lcm under the monomial order, then
    // index pair.
    pairs.sort_by(|a, b| {
        ring.order()
            .cmp(&a.lcm, &b.lcm)
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    });

    let mut locals: Vec<BasisElement> = Vec::new();
    let mut zero_reductions = 0u64;
    let spairs_in = pairs.len() as u64;
    for pair in &pairs {
        debug_assert_eq!(&pair.degree, degree, "pair filed under the wrong bucket");
        let f = &base.element(pair.i).poly;
        let g = &base.element(pair.j).poly;
        let s = s_polynomial(ring, f, g);
        let scope = ReducerScope {
            view: base.view(Some(degree)),
            locals: &locals,
        };
        let nf = normal_form(ring, grading, s, &scope);
        if nf.is_zero() {
            zero_reductions += 1;
        } else {
            if strict_checks() {
                assert_eq!(
                    grading.homogeneous_degree(&nf).as_ref(),
                    Ok(degree),
                    "normal form left its degree"
                );
            }
            locals.push(BasisElement {
                poly: ring.make_monic(&nf),
                degree: degree.clone(),
            });
        }
    }
    BucketOutcome {
        new_elements: locals,
        spairs_in,
        zero_reductions,
        reduce_time: start.elapsed(),
    }
}

/// Appends freshly reduced elements to the store and generates their pairs
/// against the merged store. Returns the spawned pairs and the time spent
/// generating them.
pub(crate) fn merge_new_elements(
    grading: &GradingMap,
    state: &mut EngineState,
    elements: Vec<BasisElement>,
    criteria: &CriteriaConfig,
) -> (Vec<BasisElement>, Vec<SPair>, Duration) {
    let start = Instant::now();
    let mut spawned = Vec::new();
    for e in &elements {
        let idx = state.store.append(e.poly.clone(), e.degree.clone());
        spawned.extend(enqueue_pairs_for(grading, idx, state, criteria));
    }
    (elements, spawned, start.elapsed())
}

/// Processes one occupied degree of the serial schedule: drain the bucket,
/// reduce it against the `{≤ d}` view (including elements appended within
/// this call), append survivors, spawn their pairs.
pub fn process_degree(
    problem: &ProblemSpec,
    state: &mut EngineState,
    degree: &Multidegree,
    criteria: &CriteriaConfig,
) -> (Vec<BasisElement>, Vec<SPair>, DegreeStats) {
    let ring = problem.ring();
    let grading = problem.grading();
    let bucket = state.pending.take_bucket(degree);
    state.counters.processed += bucket.len() as u64;
    let outcome = reduce_bucket(ring, grading, degree, bucket, &state.store);
    let spairs_in = outcome.spairs_in;
    let zero_reductions = outcome.zero_reductions;
    let reduce_time = outcome.reduce_time;
    let (appended, spawned, genpairs_time) =
        merge_new_elements(grading, state, outcome.new_elements, criteria);
    let stats = DegreeStats {
        degree: degree.clone(),
        round: state.round,
        worker: 0,
        spairs_in,
        zero_reductions,
        new_elements: appended.len() as u64,
        reduce_time,
        genpairs_time,
    };
    (appended, spawned, stats)
}

/// One serial round: extract the antichain, process its degrees in
/// ascending textual order. Returns the per-degree rows.
pub fn serial_round(
    problem: &ProblemSpec,
    state: &mut EngineState,
    criteria: &CriteriaConfig,
    strategy: AntichainStrategy,
) -> Vec<DegreeStats> {
    if state.pending.is_empty() {
        return Vec::new();
    }
    state.round += 1;
    let plan = crate::scheduler::round_plan(&state.pending, strategy);
    let mut rows = Vec::with_capacity(plan.len());
    for degree in plan.iter() {
        if !state.pending.contains_degree(degree) {
            // The chain criterion may have emptied this bucket mid-round.
            continue;
        }
        let (_, _, stats) = process_degree(problem, state, degree, criteria);
        rows.push(stats);
    }
    rows
}

/// The serial reference engine: the same degree-wise schedule as the
/// parallel master, executed on one thread. Serves as the oracle the
/// scheduler is compared against.
pub fn run_serial(problem: &ProblemSpec, cfg: &EngineConfig) -> Result<EngineOutcome, EngineError> {
    run_serial_from(init_state(problem, &cfg.criteria), problem, cfg)
}

/// Continues a (possibly checkpointed) state to completion.
pub fn run_serial_from(
    mut state: EngineState,
    problem: &ProblemSpec,
    cfg: &EngineConfig,
) -> Result<EngineOutcome, EngineError> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut spans = Vec::new();
    while !state.pending.is_empty() {
        let round_start = Instant::now();
        rows.extend(serial_round(problem, &mut state, &cfg.criteria, cfg.strategy));
        spans.push((state.round, round_start.elapsed()));
        if let Some(path) = &cfg.checkpoint {
            crate::report::write_checkpoint(path, problem, &state)?;
        }
    }
    finish_outcome(state, rows, spans, start.elapsed())
}

pub(crate) fn finish_outcome(
    state: EngineState,
    rows: Vec<DegreeStats>,
    round_spans: Vec<(u64, Duration)>,
    wallclock: Duration,
) -> Result<EngineOutcome, EngineError> {
    if strict_checks() {
        assert_eq!(
            state.counters.processed + state.counters.culled_pending,
            state.counters.enqueued,
            "work conservation violated"
        );
        for r in &rows {
            assert_eq!(r.spairs_in, r.zero_reductions + r.new_elements);
        }
    }
    Ok(EngineOutcome {
        store: state.store,
        rows,
        rounds: state.round,
        round_spans,
        counters: state.counters,
        wallclock,
    })
}

/// Convenience wrapper returning just the raw Gröbner basis.
pub fn buchberger_serial(
    problem: &ProblemSpec,
    criteria: &CriteriaConfig,
    strategy: AntichainStrategy,
) -> BasisStore {
    let cfg = EngineConfig {
        criteria: *criteria,
        strategy,
        checkpoint: None,
    };
    run_serial(problem, &cfg)
        .expect("serial engine cannot fail without a checkpoint path")
        .store
}

/// The reduced Gröbner basis: minimal, monic, every element fully reduced
/// against the others, in canonical order (degree text form, then leading
/// monomial ascending). Unique for a given ideal and order, hence usable as
/// a fingerprint.
pub fn interreduce(problem: &ProblemSpec, store: &BasisStore) -> BasisStore {
    let ring = problem.ring();
    let grading = problem.grading();

    // Minimality: drop any element whose leading monomial is divisible by
    // another element's.
    let mut kept: Vec<(Polynomial, Multidegree)> = Vec::new();
    for (i, e) in store.elements().iter().enumerate() {
        let dominated = store.elements().iter().enumerate().any(|(j, other)| {
            j != i
                && other
                    .poly
                    .leading_monomial()
                    .divides(e.poly.leading_monomial())
        });
        if !dominated {
            kept.push((e.poly.clone(), e.degree.clone()));
        }
    }

    // Tail reduction to a fixpoint; leading monomials are immutable here
    // since no other survivor divides them.
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let current = kept[i].0.clone();
            let nf = normal_form_against_list(ring, grading, current.clone(), &kept, Some(i));
            let nf = ring.make_monic(&nf);
            if nf != current {
                changed = true;
                kept[i].0 = nf;
            }
        }
        if !changed {
            break;
        }
    }

    kept.sort_by(|(fa, da), (fb, db)| {
        da.cmp(db)
            .then_with(|| ring.order().cmp(fa.leading_monomial(), fb.leading_monomial()))
    });
    let mut out = BasisStore::new();
    for (f, d) in kept {
        out.append(f, d);
    }
    out
}

/// Equality of basis contents as ordered (degree, polynomial) sequences.
pub fn stores_equal(a: &BasisStore, b: &BasisStore) -> bool {
    a.len() == b.len()
        && a.elements()
            .iter()
            .zip(b.elements())
            .all(|(x, y)| x.degree == y.degree && x.poly == y.poly)
}
