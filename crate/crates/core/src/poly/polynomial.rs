//! Polynomials as order-sorted term lists, and the ring context that owns
//! the coefficient field, variable names and monomial order.

use std::cmp::Ordering;

use thiserror::Error;

use super::field::PrimeField;
use super::monomial::Monomial;
use super::order::{MonomialOrder, OrderKind};

/// One coefficient–monomial pair. The coefficient is a canonical field
/// representative and never zero inside a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: u64,
    pub monomial: Monomial,
}

/// A polynomial: terms strictly decreasing under the ambient order, no
/// zero coefficients, no duplicate monomials. The zero polynomial is the
/// empty list. Values are immutable; all arithmetic returns fresh results.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under the ambient order. The zero polynomial has none;
    /// calling this on it is a bug.
    pub fn leading(&self) -> &Term {
        self.terms.first().expect("leading term of the zero polynomial")
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.leading().monomial
    }

    pub fn leading_coeff(&self) -> u64 {
        self.leading().coeff
    }

    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("a ring needs at least one variable")]
    NoVariables,
}

/// The polynomial ring context: field, named variables, monomial order.
/// Polynomials are plain values; every operation on them goes through the
/// ring that created them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, kind: OrderKind) -> Result<Self, RingError> {
        let order = MonomialOrder::new(kind, vars.len());
        PolyRing::with_order(field, vars, order)
    }

    pub fn with_order(
        field: PrimeField,
        vars: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Self, RingError> {
        if vars.is_empty() {
            return Err(RingError::NoVariables);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(RingError::DuplicateVariable(v.clone()));
            }
        }
        assert_eq!(order.nvars(), vars.len());
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Builds a polynomial from arbitrary (coefficient, monomial) pairs:
    /// coefficients are reduced mod p, like monomials are merged, zeros
    /// dropped, and terms sorted descending.
    pub fn polynomial(&self, terms: impl IntoIterator<Item = (u64, Monomial)>) -> Polynomial {
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(c, m)| {
                assert_eq!(m.nvars(), self.nvars(), "monomial from a different ring");
                Term {
                    coeff: self.field.from_u64(c),
                    monomial: m,
                }
            })
            .collect();
        terms.sort_by(|a, b| self.order.cmp(&b.monomial, &a.monomial));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = self.field.add(last.coeff, t.coeff);
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != 0);
        Polynomial { terms: merged }
    }

    /// Merge-add of two sorted term lists.
    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let mut it_f = f.terms.iter().peekable();
        let mut it_g = g.terms.iter().peekable();
        loop {
            match (it_f.peek(), it_g.peek()) {
                (Some(a), Some(b)) => match self.order.cmp(&a.monomial, &b.monomial) {
                    Ordering::Greater => out.push((*it_f.next().unwrap()).clone()),
                    Ordering::Less => out.push((*it_g.next().unwrap()).clone()),
                    Ordering::Equal => {
                        let a = it_f.next().unwrap();
                        let b = it_g.next().unwrap();
                        let c = self.field.add(a.coeff, b.coeff);
                        if c != 0 {
                            out.push(Term {
                                coeff: c,
                                monomial: a.monomial.clone(),
                            });
                        }
                    }
                },
                (Some(_), None) => out.push((*it_f.next().unwrap()).clone()),
                (None, Some(_)) => out.push((*it_g.next().unwrap()).clone()),
                (None, None) => break,
            }
        }
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(self.field.neg(1), f)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, c: u64, f: &Polynomial) -> Polynomial {
        let c = self.field.from_u64(c);
        if c == 0 {
            return Polynomial::zero();
        }
        let terms = f
            .terms
            .iter()
            .map(|t| Term {
                coeff: self.field.mul(c, t.coeff),
                monomial: t.monomial.clone(),
            })
            .collect();
        Polynomial { terms }
    }

    /// Multiply by a single term. Term order is preserved because monomial
    /// orders are multiplicative.
    pub fn mul_term(&self, t: &Term, f: &Polynomial) -> Polynomial {
        let c = self.field.from_u64(t.coeff);
        if c == 0 {
            return Polynomial::zero();
        }
        let terms = f
            .terms
            .iter()
            .map(|ft| Term {
                coeff: self.field.mul(c, ft.coeff),
                monomial: ft.monomial.mul(&t.monomial),
            })
            .collect();
        Polynomial { terms }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for t in &f.terms {
            acc = self.add(&acc, &self.mul_term(t, g));
        }
        acc
    }

    /// Scales so the leading coefficient is 1. `f` must be nonzero.
    pub fn make_monic(&self, f: &Polynomial) -> Polynomial {
        let lc = f.leading_coeff();
        if lc == 1 {
            return f.clone();
        }
        self.scale(self.field.inv(lc), f)
    }
}
