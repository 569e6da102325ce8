//! Definition-level Gröbner certificate: every S-pair of the basis reduces
//! to zero with all criteria disabled, and every input generator lies in
//! the ideal of the basis. This is the primary oracle the engines are held
//! against.

use thiserror::Error;

use crate::ideals::ProblemSpec;
use crate::poly::polynomial_to_string;

use super::pairs::s_polynomial;
use super::reduce::reduce;
use super::store::BasisStore;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    #[error("S-pair ({i}, {j}) does not reduce to zero; normal form: {remainder}")]
    SPairNotZero {
        i: usize,
        j: usize,
        remainder: String,
    },
    #[error("generator {index} does not reduce to zero; normal form: {remainder}")]
    GeneratorNotZero { index: usize, remainder: String },
}

pub fn verify_basis(problem: &ProblemSpec, store: &BasisStore) -> Result<(), CertificateFailure> {
    let ring = problem.ring();
    let grading = problem.grading();
    let view = store.view(None);

    for i in 0..store.len() {
        for j in (i + 1)..store.len() {
            let s = s_polynomial(ring, &store.element(i).poly, &store.element(j).poly);
            let nf = reduce(ring, grading, &s, &view);
            if !nf.is_zero() {
                return Err(CertificateFailure::SPairNotZero {
                    i,
                    j,
                    remainder: polynomial_to_string(ring, &nf),
                });
            }
        }
    }

    for (index, g) in problem.generators().iter().enumerate() {
        let nf = reduce(ring, grading, g, &view);
        if !nf.is_zero() {
            return Err(CertificateFailure::GeneratorNotZero {
                index,
                remainder: polynomial_to_string(ring, &nf),
            });
        }
    }

    Ok(())
}
