//! Gröbner bases of multigraded homogeneous polynomial ideals over prime
//! fields.
//!
//! The multigrading decomposes the ring into components indexed by ℕ^d;
//! reduction of a homogeneous S-polynomial only ever consults basis
//! elements of smaller-or-equal degree, so S-polynomials whose degrees are
//! pairwise incomparable can be reduced independently. The crate provides:
//!
//! - [`lattice`]: the partially ordered monoid ℕ^d and antichain
//!   extraction,
//! - [`poly`]: exact arithmetic over F_p, monomial orders, multigrading,
//! - [`buchberger`]: S-pairs, normal forms, the serial degree-by-degree
//!   engine, interreduction and the definition-level verifier,
//! - [`scheduler`]: the master–worker engine dispatching one antichain
//!   degree per worker and merging between rounds,
//! - [`ideals`]: the commuting-matrices family, the problem-file grammar,
//!   and random problem corpora,
//! - [`report`]: run orchestration, CSV/summary emission, basis files and
//!   round checkpoints.

pub mod buchberger;
pub mod ideals;
pub mod lattice;
pub mod poly;
pub mod report;
pub mod scheduler;
mod util;

pub use buchberger::{
    buchberger_serial, interreduce, verify_basis, BasisStore, CriteriaConfig, DegreeStats,
    EngineError,
};
pub use ideals::{commuting_matrices, parse_problem, ProblemError, ProblemSpec};
pub use lattice::{AntichainStrategy, DegreeOrd, DegreeSet, Multidegree};
pub use poly::{GradingMap, Monomial, OrderKind, PolyRing, Polynomial, PrimeField};
pub use report::{RunConfig, RunOutcome, RunReport};
