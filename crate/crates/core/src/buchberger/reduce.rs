//! Normal-form reduction. Reducers are only ever consulted through a
//! degree-bounded view plus the elements appended within the same degree,
//! which is exactly the locality the multigrading guarantees.

use crate::lattice::Multidegree;
use crate::poly::{GradingMap, PolyRing, Polynomial, Term};
use crate::util::strict_checks;

use super::store::{BasisElement, BasisView};

/// Where reduction looks for reducers: a store view, optionally followed by
/// elements appended during the current degree (their indices come after
/// every store index, preserving the earliest-appended selection rule).
pub(crate) struct ReducerScope<'a> {
    pub view: BasisView<'a>,
    pub locals: &'a [BasisElement],
}

impl<'a> ReducerScope<'a> {
    fn find(&self, m: &crate::poly::Monomial) -> Option<&'a BasisElement> {
        if let Some((_, e)) = self.view.find_reducer(m) {
            return Some(e);
        }
        self.locals
            .iter()
            .find(|e| e.poly.leading_monomial().divides(m))
    }
}

/// Full normal form of `p` against the view: no monomial of the result is
/// divisible by any visible leading monomial. `p` must be homogeneous or
/// zero; the result is zero or homogeneous of the same multidegree.
pub fn reduce(
    ring: &PolyRing,
    grading: &GradingMap,
    p: &Polynomial,
    view: &BasisView<'_>,
) -> Polynomial {
    normal_form(
        ring,
        grading,
        p.clone(),
        &ReducerScope {
            view: *view,
            locals: &[],
        },
    )
}

pub(crate) fn normal_form(
    ring: &PolyRing,
    grading: &GradingMap,
    p: Polynomial,
    scope: &ReducerScope<'_>,
) -> Polynomial {
    if p.is_zero() {
        return p;
    }
    let checks = strict_checks();
    let degree = if checks {
        Some(
            grading
                .homogeneous_degree(&p)
                .expect("reduce requires a homogeneous input"),
        )
    } else {
        None
    };

    let field = ring.field();
    let mut done: Vec<Term> = Vec::new();
    let mut work = p;
    while !work.is_zero() {
        let lt = work.leading().clone();
        match scope.find(&lt.monomial) {
            Some(reducer) => {
                // work −= (lt / lt(reducer)) · reducer; the leading terms
                // cancel exactly.
                let q = &reducer.poly;
                let step = Term {
                    coeff: field.neg(field.div(lt.coeff, q.leading_coeff())),
                    monomial: lt.monomial.quotient(q.leading_monomial()),
                };
                if let Some(d) = &degree {
                    assert_eq!(
                        &grading.monomial_degree(&step.monomial).add(&reducer.degree),
                        d,
                        "reduction step changed the multidegree"
                    );
                }
                work = ring.add(&work, &ring.mul_term(&step, q));
                if checks {
                    if let Some(new_lt) = work.terms().first() {
                        assert_eq!(
                            ring.order().cmp(&new_lt.monomial, &lt.monomial),
                            std::cmp::Ordering::Less,
                            "reduction step did not shrink the leading monomial"
                        );
                    }
                }
            }
            None => {
                // The leading monomial is irreducible; move it to the result.
                done.push(lt);
                work = Polynomial::from_sorted_terms(work.terms()[1..].to_vec());
            }
        }
    }
    let result = Polynomial::from_sorted_terms(done);
    if let Some(d) = &degree {
        if !result.is_zero() {
            assert_eq!(
                grading.homogeneous_degree(&result).as_ref(),
                Ok(d),
                "normal form is not homogeneous of the input degree"
            );
        }
    }
    result
}

/// Normal form against an explicit list of (polynomial, degree) reducers,
/// optionally skipping one index. Used for interreduction, where the basis
/// being cleaned up is not a store yet.
pub(crate) fn normal_form_against_list(
    ring: &PolyRing,
    grading: &GradingMap,
    p: Polynomial,
    reducers: &[(Polynomial, Multidegree)],
    skip: Option<usize>,
) -> Polynomial {
    if p.is_zero() {
        return p;
    }
    let field = ring.field();
    let mut done: Vec<Term> = Vec::new();
    let mut work = p;
    while !work.is_zero() {
        let lt = work.leading().clone();
        let hit = reducers.iter().enumerate().find(|(i, (q, _))| {
            Some(*i) != skip && !q.is_zero() && q.leading_monomial().divides(&lt.monomial)
        });
        match hit {
            Some((_, (q, _))) => {
                let step = Term {
                    coeff: field.neg(field.div(lt.coeff, q.leading_coeff())),
                    monomial: lt.monomial.quotient(q.leading_monomial()),
                };
                work = ring.add(&work, &ring.mul_term(&step, q));
            }
            None => {
                done.push(lt);
                work = Polynomial::from_sorted_terms(work.terms()[1..].to_vec());
            }
        }
    }
    let _ = grading;
    Polynomial::from_sorted_terms(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::buchberger::store::BasisStore;
    use crate::poly::{GradingMap, Monomial, OrderKind, PolyRing, PrimeField};

    fn setup() -> (PolyRing, GradingMap) {
        let ring = PolyRing::new(
            PrimeField::new(101).unwrap(),
            vec!["x".into(), "y".into()],
            OrderKind::DegRevLex,
        )
        .unwrap();
        let grading = GradingMap::new(vec![
            Multidegree::new(vec![1, 0]),
            Multidegree::new(vec![0, 1]),
        ])
        .unwrap();
        (ring, grading)
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn reduce_eliminates_divisible_monomials() {
        let (ring, _) = setup();
        // Total-degree grading keeps x²y + xy² homogeneous.
        let grading = GradingMap::new(vec![
            Multidegree::new(vec![1]),
            Multidegree::new(vec![1]),
        ])
        .unwrap();
        let mut store = BasisStore::new();
        store.append(ring.polynomial([(1, m(&[1, 1]))]), Multidegree::new(vec![2]));
        // x²y + xy² reduces to zero in two steps against {xy}.
        let p = ring.polynomial([(1, m(&[2, 1])), (1, m(&[1, 2]))]);
        assert!(reduce(&ring, &grading, &p, &store.view(None)).is_zero());
    }

    #[test]
    fn reduce_single_step() {
        let (ring, _) = setup();
        // x² + y² is not homogeneous under the x/y grading, so grade both
        // variables equally for this case.
        let grading = GradingMap::new(vec![
            Multidegree::new(vec![1]),
            Multidegree::new(vec![1]),
        ])
        .unwrap();
        let mut store = BasisStore::new();
        store.append(ring.polynomial([(1, m(&[2, 0]))]), Multidegree::new(vec![2]));
        let p = ring.polynomial([(1, m(&[2, 0])), (1, m(&[0, 2]))]);
        let nf = reduce(&ring, &grading, &p, &store.view(None));
        assert_eq!(nf, ring.polynomial([(1, m(&[0, 2]))]));
    }

    #[test]
    fn reduce_with_empty_basis_is_identity() {
        let (ring, grading) = setup();
        let store = BasisStore::new();
        let p = ring.polynomial([(1, m(&[1, 1]))]);
        assert_eq!(reduce(&ring, &grading, &p, &store.view(None)), p);
        assert!(reduce(&ring, &grading, &Polynomial::zero(), &store.view(None)).is_zero());
    }

    #[test]
    fn bounded_view_matches_full_store_on_homogeneous_input() {
        let (ring, grading) = setup();
        let mut store = BasisStore::new();
        store.append(
            ring.polynomial([(1, m(&[1, 1]))]),
            Multidegree::new(vec![1, 1]),
        );
        store.append(
            ring.polynomial([(1, m(&[0, 3]))]),
            Multidegree::new(vec![0, 3]),
        );
        let p = ring.polynomial([(1, m(&[2, 1]))]);
        let bound = grading.homogeneous_degree(&p).unwrap();
        let full = reduce(&ring, &grading, &p, &store.view(None));
        let bounded = reduce(&ring, &grading, &p, &store.view(Some(&bound)));
        assert_eq!(full, bounded);
        assert!(full.is_zero());
    }
}
