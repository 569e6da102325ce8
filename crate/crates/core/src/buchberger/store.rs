//! The append-only basis store and its degree-restricted views.

use std::collections::BTreeMap;

use crate::lattice::{DegreeSet, Multidegree};
use crate::poly::{Monomial, Polynomial};
use crate::util::strict_checks;

/// One basis element: a monic homogeneous polynomial with its multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub poly: Polynomial,
    pub degree: Multidegree,
}

/// Append-only indexed Gröbner basis. Indices of existing elements never
/// change, which is what keeps S-pair references stable across rounds.
#[derive(Debug, Clone, Default)]
pub struct BasisStore {
    elements: Vec<BasisElement>,
    by_degree: BTreeMap<Multidegree, Vec<usize>>,
}

impl BasisStore {
    pub fn new() -> Self {
        BasisStore::default()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn leading_monomial(&self, i: usize) -> &Monomial {
        self.elements[i].poly.leading_monomial()
    }

    pub fn indices_of_degree(&self, d: &Multidegree) -> &[usize] {
        self.by_degree.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn occupied_degrees(&self) -> DegreeSet {
        self.by_degree.keys().cloned().collect()
    }

    /// Appends a monic homogeneous element and returns its index. Under
    /// strict checks, asserts the Noetherian invariant: no earlier leading
    /// monomial divides the new one.
    pub fn append(&mut self, poly: Polynomial, degree: Multidegree) -> usize {
        assert!(!poly.is_zero(), "cannot store the zero polynomial");
        assert_eq!(poly.leading_coeff(), 1, "stored elements must be monic");
        if strict_checks() {
            for (i, e) in self.elements.iter().enumerate() {
                assert!(
                    !e.poly.leading_monomial().divides(poly.leading_monomial()),
                    "leading monomial of element {i} divides a later one"
                );
            }
        }
        let index = self.elements.len();
        self.by_degree.entry(degree.clone()).or_default().push(index);
        self.elements.push(BasisElement { poly, degree });
        index
    }

    /// Append without the engine invariants (monicity is still normalized
    /// by callers). Used when loading externally produced basis files,
    /// which may legitimately contain redundant elements.
    pub(crate) fn append_unchecked(&mut self, poly: Polynomial, degree: Multidegree) -> usize {
        assert!(!poly.is_zero(), "cannot store the zero polynomial");
        let index = self.elements.len();
        self.by_degree.entry(degree.clone()).or_default().push(index);
        self.elements.push(BasisElement { poly, degree });
        index
    }

    /// View of everything with degree ≤ `bound`; `None` means the whole
    /// store.
    pub fn view<'a>(&'a self, bound: Option<&'a Multidegree>) -> BasisView<'a> {
        BasisView { store: self, bound }
    }
}

/// A read-only restriction of a store to the principal ideal of degrees
/// below a bound. Reduction only ever sees the store through a view, which
/// is what enforces scheduling locality.
#[derive(Clone, Copy)]
pub struct BasisView<'a> {
    store: &'a BasisStore,
    bound: Option<&'a Multidegree>,
}

impl<'a> BasisView<'a> {
    pub fn store_len(&self) -> usize {
        self.store.len()
    }

    pub fn bound(&self) -> Option<&'a Multidegree> {
        self.bound
    }

    fn admits(&self, e: &BasisElement) -> bool {
        match self.bound {
            Some(b) => e.degree.leq(b),
            None => true,
        }
    }

    /// Elements in index order, restricted to the bound.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &'a BasisElement)> + '_ {
        self.store
            .elements
            .iter()
            .enumerate()
            .filter(|(_, e)| self.admits(e))
    }

    /// Earliest-appended element whose leading monomial divides `m`.
    pub(crate) fn find_reducer(&self, m: &Monomial) -> Option<(usize, &'a BasisElement)> {
        self.iter()
            .find(|(_, e)| e.poly.leading_monomial().divides(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, OrderKind, PolyRing, PrimeField};

    fn setup() -> (PolyRing, BasisStore) {
        let ring = PolyRing::new(
            PrimeField::new(101).unwrap(),
            vec!["x".into(), "y".into()],
            OrderKind::DegRevLex,
        )
        .unwrap();
        (ring, BasisStore::new())
    }

    fn md(c: &[u64]) -> Multidegree {
        Multidegree::new(c.to_vec())
    }

    #[test]
    fn append_indexes_by_degree() {
        let (ring, mut store) = setup();
        let x2 = ring.polynomial([(1, Monomial::from_exps(vec![2, 0]))]);
        let y2 = ring.polynomial([(1, Monomial::from_exps(vec![0, 2]))]);
        assert_eq!(store.append(x2, md(&[2, 0])), 0);
        assert_eq!(store.append(y2, md(&[0, 2])), 1);
        assert_eq!(store.indices_of_degree(&md(&[2, 0])), &[0]);
        assert_eq!(store.occupied_degrees().len(), 2);
    }

    #[test]
    #[should_panic(expected = "monic")]
    fn append_rejects_non_monic() {
        let (ring, mut store) = setup();
        let f = ring.polynomial([(2, Monomial::from_exps(vec![1, 0]))]);
        store.append(f, md(&[1, 0]));
    }

    #[test]
    #[should_panic(expected = "divides a later one")]
    fn append_rejects_divisible_leading_monomial() {
        let (ring, mut store) = setup();
        let x = ring.polynomial([(1, Monomial::from_exps(vec![1, 0]))]);
        let x2 = ring.polynomial([(1, Monomial::from_exps(vec![2, 0]))]);
        store.append(x, md(&[1, 0]));
        store.append(x2, md(&[2, 0]));
    }

    #[test]
    fn view_restricts_by_degree() {
        let (ring, mut store) = setup();
        store.append(
            ring.polynomial([(1, Monomial::from_exps(vec![2, 0]))]),
            md(&[2, 0]),
        );
        store.append(
            ring.polynomial([(1, Monomial::from_exps(vec![0, 2]))]),
            md(&[0, 2]),
        );
        let bound = md(&[2, 1]);
        let view = store.view(Some(&bound));
        let seen: Vec<usize> = view.iter().map(|(i, _)| i).collect();
        assert_eq!(seen, vec![0]);
        assert_eq!(store.view(None).iter().count(), 2);
    }
}
