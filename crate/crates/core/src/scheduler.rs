//! The master–worker engine: the master owns the queue and the store,
//! dispatches the incomparable degrees of each round's antichain to
//! workers, merges their results, and iterates until nothing is pending.
//!
//! Degrees processed concurrently are pairwise incomparable, so their
//! reductions cannot observe each other; workers therefore run against a
//! round-start snapshot and never touch shared state.

use std::collections::VecDeque;
use std::sync::mpsc::{Receiver, RecvTimeoutError, Sender};
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use crate::buchberger::{
    finish_outcome, init_state, merge_new_elements, reduce_bucket, BasisElement, BasisStore,
    DegreeStats, EngineConfig, EngineError, EngineOutcome, EngineState, PendingQueue, SPair,
};
use crate::ideals::ProblemSpec;
use crate::lattice::{AntichainStrategy, DegreeOrd, DegreeSet, Multidegree};
use crate::poly::{GradingMap, PolyRing};
use crate::util::strict_checks;

/// The wire protocol between master and workers. Values are immutable;
/// the snapshot is shared by reference count.
pub enum SchedulerMessage {
    /// Work on one degree of the current antichain against the round-start
    /// snapshot.
    Dispatch {
        degree: Multidegree,
        pairs: Vec<SPair>,
        snapshot: Arc<BasisStore>,
    },
    /// A worker finished a degree.
    Done {
        worker: usize,
        degree: Multidegree,
        new_elements: Vec<BasisElement>,
        stats: DegreeStats,
    },
    /// Shut down.
    Finish,
}

/// Immutable context a worker runs with.
pub struct WorkerContext<'a> {
    pub id: usize,
    pub ring: &'a PolyRing,
    pub grading: &'a GradingMap,
}

/// Algorithm-2 loop: receive a degree, reduce all its S-polynomials against
/// the snapshot restricted to `{≤ degree}`, report back. Returns on Finish
/// or when the master goes away.
pub fn run_worker(
    ctx: &WorkerContext<'_>,
    inbox: &Receiver<SchedulerMessage>,
    outbox: &Sender<SchedulerMessage>,
) {
    loop {
        match inbox.recv() {
            Err(_) | Ok(SchedulerMessage::Finish) => return,
            Ok(SchedulerMessage::Dispatch {
                degree,
                pairs,
                snapshot,
            }) => {
                let outcome = reduce_bucket(ctx.ring, ctx.grading, &degree, pairs, &snapshot);
                let stats = DegreeStats {
                    degree: degree.clone(),
                    round: 0, // filled in by the master at merge time
                    worker: ctx.id,
                    spairs_in: outcome.spairs_in,
                    zero_reductions: outcome.zero_reductions,
                    new_elements: outcome.new_elements.len() as u64,
                    reduce_time: outcome.reduce_time,
                    genpairs_time: Duration::ZERO,
                };
                let done = SchedulerMessage::Done {
                    worker: ctx.id,
                    degree,
                    new_elements: outcome.new_elements,
                    stats,
                };
                if outbox.send(done).is_err() {
                    return;
                }
            }
            Ok(SchedulerMessage::Done { .. }) => {
                panic!("protocol error: worker received a Done message");
            }
        }
    }
}

/// The antichain of occupied degrees for the next round. The queue must be
/// nonempty; the master checks before planning.
pub fn round_plan(pending: &PendingQueue, strategy: AntichainStrategy) -> DegreeSet {
    assert!(!pending.is_empty(), "round_plan on an empty queue");
    let plan = strategy.extract(&pending.occupied());
    debug_assert!(plan.is_antichain());
    debug_assert!(plan.iter().all(|d| pending.contains_degree(d)));
    plan
}

/// Runs the full master–worker computation with `workers ≥ 1` worker
/// threads (the master is the coordinating thread and is not counted).
pub fn run_master(problem: &ProblemSpec, cfg: &MasterConfig) -> Result<EngineOutcome, EngineError> {
    run_master_from(init_state(problem, &cfg.engine.criteria), problem, cfg)
}

#[derive(Debug, Clone, Default)]
pub struct MasterConfig {
    pub workers: usize,
    pub engine: EngineConfig,
}

/// Continues a (possibly checkpointed) state to completion on the parallel
/// engine.
pub fn run_master_from(
    state: EngineState,
    problem: &ProblemSpec,
    cfg: &MasterConfig,
) -> Result<EngineOutcome, EngineError> {
    assert!(cfg.workers >= 1, "need at least one worker");
    let ring = problem.ring();
    let grading = problem.grading();

    thread::scope(|scope| {
        let (done_tx, done_rx) = std::sync::mpsc::channel::<SchedulerMessage>();
        let mut worker_txs = Vec::with_capacity(cfg.workers);
        let mut handles = Vec::with_capacity(cfg.workers);
        for id in 1..=cfg.workers {
            let (tx, rx) = std::sync::mpsc::channel::<SchedulerMessage>();
            let done_tx = done_tx.clone();
            handles.push(scope.spawn(move || {
                let ctx = WorkerContext { id, ring, grading };
                run_worker(&ctx, &rx, &done_tx);
            }));
            worker_txs.push(tx);
        }
        drop(done_tx);

        let result = master_loop(state, problem, cfg, &worker_txs, &done_rx, &handles);

        for tx in &worker_txs {
            let _ = tx.send(SchedulerMessage::Finish);
        }
        for h in handles {
            // Swallow panics here; master_loop already surfaced the failure.
            let _ = h.join();
        }
        result
    })
}

struct InFlight {
    degree: Multidegree,
    worker: usize,
}

fn master_loop(
    mut state: EngineState,
    problem: &ProblemSpec,
    cfg: &MasterConfig,
    worker_txs: &[Sender<SchedulerMessage>],
    done_rx: &Receiver<SchedulerMessage>,
    handles: &[thread::ScopedJoinHandle<'_, ()>],
) -> Result<EngineOutcome, EngineError> {
    let grading = problem.grading();
    let start = Instant::now();
    let mut rows: Vec<DegreeStats> = Vec::new();
    let mut spans: Vec<(u64, Duration)> = Vec::new();

    let mut idle: VecDeque<usize> = (1..=cfg.workers).collect();
    let mut waiting: VecDeque<Multidegree> = VecDeque::new();
    let mut in_flight: Vec<InFlight> = Vec::new();
    let mut snapshot: Arc<BasisStore> = Arc::new(BasisStore::new());
    let mut running_round: Option<(u64, Instant)> = None;
    let mut processed = DegreeSet::new();

    loop {
        if !waiting.is_empty() && !idle.is_empty() {
            // Dispatch the next waiting degree of the round's antichain.
            let degree = waiting.pop_front().expect("checked nonempty");
            if !state.pending.contains_degree(&degree) {
                // Bucket emptied by the chain criterion mid-round.
                continue;
            }
            if strict_checks() {
                assert_safe_to_dispatch(&degree, &in_flight, &processed);
            }
            let worker = idle.pop_front().expect("checked nonempty");
            let pairs = state.pending.take_bucket(&degree);
            state.counters.processed += pairs.len() as u64;
            let msg = SchedulerMessage::Dispatch {
                degree: degree.clone(),
                pairs,
                snapshot: snapshot.clone(),
            };
            if worker_txs[worker - 1].send(msg).is_err() {
                return Err(EngineError::WorkerFailure {
                    worker,
                    message: "worker hung up before Finish".into(),
                });
            }
            in_flight.push(InFlight { degree, worker });
        } else if !in_flight.is_empty() {
            // All workers busy, or nothing left to hand out this round:
            // block for the next Done.
            let done = wait_for_done(done_rx, &in_flight, handles)?;
            let SchedulerMessage::Done {
                worker,
                degree,
                new_elements,
                mut stats,
            } = done
            else {
                return Err(EngineError::WorkerFailure {
                    worker: 0,
                    message: "protocol error: master received a non-Done message".into(),
                });
            };
            let slot = in_flight
                .iter()
                .position(|f| f.degree == degree && f.worker == worker)
                .expect("Done must match a dispatched degree");
            in_flight.swap_remove(slot);
            let (_, _, genpairs_time) = merge_new_elements(
                grading,
                &mut state,
                new_elements,
                &cfg.engine.criteria,
            );
            stats.genpairs_time = genpairs_time;
            stats.round = state.round;
            rows.push(stats);
            processed.insert(degree);
            idle.push_back(worker);
        } else if !state.pending.is_empty() {
            // Round boundary: nothing dispatched, nothing in flight.
            if let Some((round, started)) = running_round.take() {
                spans.push((round, started.elapsed()));
                if let Some(path) = &cfg.engine.checkpoint {
                    crate::report::write_checkpoint(path, problem, &state)?;
                }
            }
            state.round += 1;
            running_round = Some((state.round, Instant::now()));
            let plan = round_plan(&state.pending, cfg.engine.strategy);
            assert!(!plan.is_empty(), "scheduler stalled: nonempty queue, empty plan");
            waiting = plan.iter().cloned().collect();
            snapshot = Arc::new(state.store.clone());
        } else {
            // Finish up: queue empty and nothing in flight.
            if let Some((round, started)) = running_round.take() {
                spans.push((round, started.elapsed()));
                if let Some(path) = &cfg.engine.checkpoint {
                    crate::report::write_checkpoint(path, problem, &state)?;
                }
            }
            break;
        }
    }

    rows.sort_by(|a, b| {
        (a.round, &a.degree, a.worker).cmp(&(b.round, &b.degree, b.worker))
    });
    finish_outcome(state, rows, spans, start.elapsed())
}

/// Every dispatched degree must be incomparable to everything in flight,
/// and nothing strictly below or equal to it may have been processed
/// already (prefix-completeness).
fn assert_safe_to_dispatch(
    degree: &Multidegree,
    in_flight: &[InFlight],
    processed: &DegreeSet,
) {
    for f in in_flight {
        assert_eq!(
            degree.compare(&f.degree),
            DegreeOrd::Incomparable,
            "dispatch would break the in-flight antichain: {degree} vs {}",
            f.degree
        );
    }
    for q in processed.iter() {
        assert!(
            !matches!(degree.compare(q), DegreeOrd::Less | DegreeOrd::Equal),
            "dispatching {degree} after {q} was already processed"
        );
    }
}

fn wait_for_done(
    done_rx: &Receiver<SchedulerMessage>,
    in_flight: &[InFlight],
    handles: &[thread::ScopedJoinHandle<'_, ()>],
) -> Result<SchedulerMessage, EngineError> {
    loop {
        match done_rx.recv_timeout(Duration::from_millis(25)) {
            Ok(msg) => return Ok(msg),
            Err(RecvTimeoutError::Timeout) => {
                // A busy worker whose thread is gone has panicked.
                for f in in_flight {
                    if handles[f.worker - 1].is_finished() {
                        return Err(EngineError::WorkerFailure {
                            worker: f.worker,
                            message: format!("worker died while processing degree {}", f.degree),
                        });
                    }
                }
            }
            Err(RecvTimeoutError::Disconnected) => {
                return Err(EngineError::WorkerFailure {
                    worker: 0,
                    message: "all workers disconnected".into(),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchberger::{
        buchberger_serial, interreduce, run_serial, stores_equal, CriteriaConfig,
    };
    use crate::ideals::commuting_matrices;

    fn master_cfg(workers: usize) -> MasterConfig {
        MasterConfig {
            workers,
            engine: EngineConfig::default(),
        }
    }

    #[test]
    fn single_worker_matches_serial_engine() {
        let problem = commuting_matrices(2);
        let serial = buchberger_serial(
            &problem,
            &CriteriaConfig::default(),
            AntichainStrategy::MinimalOccupied,
        );
        let parallel = run_master(&problem, &master_cfg(1)).unwrap().store;
        assert!(stores_equal(
            &interreduce(&problem, &serial),
            &interreduce(&problem, &parallel)
        ));
    }

    #[test]
    fn trivial_problem_finishes_immediately() {
        let problem = commuting_matrices(1);
        let outcome = run_master(&problem, &master_cfg(2)).unwrap();
        assert!(outcome.store.is_empty());
        assert_eq!(outcome.rounds, 0);
        assert!(outcome.rows.is_empty());
    }

    #[test]
    fn round_plan_extracts_occupied_antichains() {
        let problem = commuting_matrices(2);
        let state = init_state(&problem, &CriteriaConfig::NONE);
        let plan = round_plan(&state.pending, AntichainStrategy::MinimalOccupied);
        assert!(plan.is_antichain());
        assert!(!plan.is_empty());
        for d in plan.iter() {
            assert!(state.pending.contains_degree(d));
        }
    }

    #[test]
    #[should_panic(expected = "empty queue")]
    fn round_plan_requires_pending_work() {
        round_plan(&PendingQueue::new(), AntichainStrategy::MinimalOccupied);
    }

    #[test]
    fn worker_returns_on_finish_first() {
        let problem = commuting_matrices(2);
        let ring = problem.ring();
        let grading = problem.grading();
        let (to_worker, inbox) = std::sync::mpsc::channel();
        let (outbox, from_worker) = std::sync::mpsc::channel();
        to_worker.send(SchedulerMessage::Finish).unwrap();
        let ctx = WorkerContext {
            id: 1,
            ring,
            grading,
        };
        run_worker(&ctx, &inbox, &outbox);
        assert!(from_worker.try_recv().is_err());
    }

    #[test]
    fn worker_handles_empty_dispatch() {
        let problem = commuting_matrices(2);
        let ring = problem.ring();
        let grading = problem.grading();
        let (to_worker, inbox) = std::sync::mpsc::channel();
        let (outbox, from_worker) = std::sync::mpsc::channel();
        let degree = Multidegree::new(vec![1, 1]);
        to_worker
            .send(SchedulerMessage::Dispatch {
                degree: degree.clone(),
                pairs: Vec::new(),
                snapshot: Arc::new(BasisStore::new()),
            })
            .unwrap();
        to_worker.send(SchedulerMessage::Finish).unwrap();
        let ctx = WorkerContext {
            id: 1,
            ring,
            grading,
        };
        run_worker(&ctx, &inbox, &outbox);
        match from_worker.try_recv().unwrap() {
            SchedulerMessage::Done {
                degree: d,
                new_elements,
                stats,
                ..
            } => {
                assert_eq!(d, degree);
                assert!(new_elements.is_empty());
                assert_eq!(stats.spairs_in, 0);
            }
            _ => panic!("expected Done"),
        }
    }

    #[test]
    fn first_occupied_degree_matches_serial_trace() {
        // A dispatched worker must report the same element and reduction
        // counts the serial engine records for the same degree.
        let problem = commuting_matrices(2);
        let serial = run_serial(&problem, &EngineConfig::default()).unwrap();

        let mut state = init_state(&problem, &CriteriaConfig::default());
        let first = state
            .pending
            .occupied()
            .iter()
            .next()
            .expect("I_2 seeds pending pairs")
            .clone();
        let serial_row = serial
            .rows
            .iter()
            .find(|r| r.degree == first)
            .expect("serial engine processed the first occupied degree");

        let pairs = state.pending.take_bucket(&first);
        assert!(!pairs.is_empty());
        let snapshot = Arc::new(state.store.clone());
        let (to_worker, inbox) = std::sync::mpsc::channel();
        let (outbox, from_worker) = std::sync::mpsc::channel();
        to_worker
            .send(SchedulerMessage::Dispatch {
                degree: first.clone(),
                pairs,
                snapshot,
            })
            .unwrap();
        to_worker.send(SchedulerMessage::Finish).unwrap();
        let ctx = WorkerContext {
            id: 1,
            ring: problem.ring(),
            grading: problem.grading(),
        };
        run_worker(&ctx, &inbox, &outbox);
        match from_worker.try_recv().unwrap() {
            SchedulerMessage::Done { stats, .. } => {
                assert_eq!(stats.new_elements, serial_row.new_elements);
                assert_eq!(stats.spairs_in, serial_row.spairs_in);
                assert_eq!(stats.zero_reductions, serial_row.zero_reductions);
            }
            _ => panic!("expected Done"),
        }
    }

    #[test]
    fn worker_counts_two_through_four_agree_on_i2() {
        let problem = commuting_matrices(2);
        let reference = interreduce(
            &problem,
            &run_serial(&problem, &EngineConfig::default()).unwrap().store,
        );
        for workers in 2..=4 {
            let outcome = run_master(&problem, &master_cfg(workers)).unwrap();
            assert!(
                stores_equal(&reference, &interreduce(&problem, &outcome.store)),
                "workers = {workers}"
            );
        }
    }
}
