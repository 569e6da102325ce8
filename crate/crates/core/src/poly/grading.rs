//! Multigrading: the variable→degree assignment and what it induces on
//! monomials and polynomials.

use thiserror::Error;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::lattice::Multidegree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GradingError {
    #[error("grading must cover at least one variable")]
    Empty,
    #[error("variable {var} has degree dimension {found}, expected {expected}")]
    DimensionMismatch {
        var: usize,
        expected: usize,
        found: usize,
    },
    #[error("variable {var} has the zero degree; every variable must be graded nonzero")]
    ZeroDegree { var: usize },
}

/// Degrees assigned to the ring variables. All degrees share one dimension
/// and none is zero, so the only monomial of degree (0,…,0) is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingMap {
    dim: usize,
    var_degrees: Vec<Multidegree>,
}

/// A polynomial whose terms disagree on multidegree; carries two witnesses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not homogeneous: terms of degree {first} and {second}")]
pub struct NotHomogeneous {
    pub first: Multidegree,
    pub second: Multidegree,
}

impl GradingMap {
    pub fn new(var_degrees: Vec<Multidegree>) -> Result<Self, GradingError> {
        let Some(first) = var_degrees.first() else {
            return Err(GradingError::Empty);
        };
        let dim = first.dim();
        for (var, d) in var_degrees.iter().enumerate() {
            if d.dim() != dim {
                return Err(GradingError::DimensionMismatch {
                    var,
                    expected: dim,
                    found: d.dim(),
                });
            }
            if d.is_zero() {
                return Err(GradingError::ZeroDegree { var });
            }
        }
        Ok(GradingMap { dim, var_degrees })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.var_degrees.len()
    }

    pub fn var_degree(&self, var: usize) -> &Multidegree {
        &self.var_degrees[var]
    }

    /// Degree of a monomial: the exponent-weighted sum of variable degrees.
    pub fn monomial_degree(&self, m: &Monomial) -> Multidegree {
        assert_eq!(m.nvars(), self.nvars(), "monomial from a different ring");
        let mut acc = vec![0u64; self.dim];
        for (var, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            for (slot, &c) in acc.iter_mut().zip(self.var_degrees[var].components()) {
                *slot = c
                    .checked_mul(e as u64)
                    .and_then(|w| slot.checked_add(w))
                    .expect("multidegree component overflow");
            }
        }
        Multidegree::new(acc)
    }

    /// The common multidegree of all terms of a nonzero polynomial.
    pub fn homogeneous_degree(&self, f: &Polynomial) -> Result<Multidegree, NotHomogeneous> {
        assert!(!f.is_zero(), "the zero polynomial has no degree");
        let mut terms = f.terms().iter();
        let first = self.monomial_degree(&terms.next().unwrap().monomial);
        for t in terms {
            let d = self.monomial_degree(&t.monomial);
            if d != first {
                return Err(NotHomogeneous {
                    first,
                    second: d,
                });
            }
        }
        Ok(first)
    }

    /// All monomials of exactly the given multidegree, in exponent-vector
    /// enumeration order. Intended for small degrees (test corpora, random
    /// problem generation); the count grows quickly.
    pub fn monomials_of_degree(&self, target: &Multidegree) -> Vec<Monomial> {
        assert_eq!(target.dim(), self.dim, "degree dimension mismatch");
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        self.enumerate(target.clone(), 0, &mut exps, &mut out);
        out
    }

    fn enumerate(
        &self,
        remaining: Multidegree,
        var: usize,
        exps: &mut [u32],
        out: &mut Vec<Monomial>,
    ) {
        if var == self.nvars() {
            if remaining.is_zero() {
                out.push(Monomial::from_exps(exps.to_vec()));
            }
            return;
        }
        let vd = &self.var_degrees[var];
        // Largest exponent that still fits componentwise.
        let mut max_e = u64::MAX;
        for (&c, &r) in vd.components().iter().zip(remaining.components()) {
            if c > 0 {
                max_e = max_e.min(r / c);
            }
        }
        for e in 0..=max_e.min(u32::MAX as u64) {
            let used: Vec<u64> = vd.components().iter().map(|&c| c * e).collect();
            let left: Vec<u64> = remaining
                .components()
                .iter()
                .zip(&used)
                .map(|(&r, &u)| r - u)
                .collect();
            exps[var] = e as u32;
            self.enumerate(Multidegree::new(left), var + 1, exps, out);
        }
        exps[var] = 0;
    }
}
