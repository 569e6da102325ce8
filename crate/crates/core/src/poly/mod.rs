//! Exact multivariate polynomial arithmetic over a prime field, monomial
//! orders, and the multigrading machinery.

mod field;
mod grading;
mod monomial;
mod order;
mod polynomial;
mod text;

pub use field::{FieldError, PrimeField};
pub use grading::{GradingError, GradingMap, NotHomogeneous};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{PolyRing, Polynomial, RingError, Term};
pub use text::{parse_polynomial, polynomial_to_string, PolyParseError};
