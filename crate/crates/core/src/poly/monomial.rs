//! Power products as dense exponent vectors.

use std::fmt;

/// A monomial in a ring with a fixed number of variables. Exponent
/// arithmetic is checked; overflow indicates a bug upstream.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The monomial 1.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The single variable x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomial variable count mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
            .collect();
        Monomial { exps }
    }

    /// True iff `self` divides `other` (every exponent ≤).
    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "monomial variable count mismatch");
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "monomial variable count mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial { exps }
    }

    /// `self / divisor`. The divisor must divide; anything else is a
    /// caller bug.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        assert!(
            divisor.divides(self),
            "monomial quotient by a non-divisor"
        );
        let exps = self
            .exps
            .iter()
            .zip(&divisor.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial { exps }
    }

    /// No variable appears in both monomials.
    pub fn coprime(&self, other: &Monomial) -> bool {
        assert_eq!(self.nvars(), other.nvars(), "monomial variable count mismatch");
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn divides_cases() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert!(!m(&[0, 2]).divides(&m(&[3, 1])));
        let x = m(&[2, 3]);
        assert!(x.divides(&x));
    }

    #[test]
    fn lcm_and_quotient_cases() {
        assert_eq!(m(&[2, 0, 1]).lcm(&m(&[1, 3, 0])), m(&[2, 3, 1]));
        assert_eq!(m(&[2, 3, 1]).quotient(&m(&[1, 3, 0])), m(&[1, 0, 1]));
        let x = m(&[4, 1]);
        assert_eq!(x.lcm(&x), x);
        assert!(m(&[1, 1]).quotient(&m(&[1, 1])).is_one());
    }

    #[test]
    #[should_panic(expected = "non-divisor")]
    fn quotient_requires_divisibility() {
        m(&[1, 0]).quotient(&m(&[0, 1]));
    }

    #[test]
    fn coprime_cases() {
        assert!(m(&[2, 0]).coprime(&m(&[0, 2])));
        assert!(!m(&[1, 1]).coprime(&m(&[1, 0])));
        assert!(m(&[0, 0]).coprime(&m(&[5, 5])));
    }
}
