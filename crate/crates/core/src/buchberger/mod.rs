//! S-pair generation, normal-form reduction, and the serial
//! degree-by-degree Buchberger engine that serves as the oracle for the
//! parallel scheduler.

mod engine;
mod pairs;
mod reduce;
mod store;
mod verify;

pub use engine::{
    buchberger_serial, init_state, interreduce, process_degree, run_serial, run_serial_from,
    serial_round, stores_equal, DegreeStats, EngineConfig, EngineError, EngineOutcome,
    EngineState, PairCounters,
};
pub use pairs::{generate_pairs, s_polynomial, CriteriaConfig, PendingQueue, SPair};
pub use reduce::reduce;
pub use store::{BasisElement, BasisStore, BasisView};
pub use verify::{verify_basis, CertificateFailure};

pub(crate) use engine::{finish_outcome, merge_new_elements, reduce_bucket};
