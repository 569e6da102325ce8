//! Monomial orders: total, multiplicative well-orders refining divisibility.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrLex,
    DegRevLex,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OrderKind::Lex => "lex",
            OrderKind::GrLex => "grlex",
            OrderKind::DegRevLex => "degrevlex",
        };
        f.write_str(name)
    }
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grlex" => Ok(OrderKind::GrLex),
            "degrevlex" => Ok(OrderKind::DegRevLex),
            other => Err(format!(
                "unknown monomial order `{other}` (expected lex, grlex or degrevlex)"
            )),
        }
    }
}

/// A monomial order together with the variable ordering it reads the
/// exponent vector in. `ranks[0]` is the strongest variable; the default
/// is declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranks: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            ranks: (0..nvars).collect(),
        }
    }

    /// `ranks` must be a permutation of `0..nvars`.
    pub fn with_variable_order(kind: OrderKind, ranks: Vec<usize>) -> Self {
        let mut seen = vec![false; ranks.len()];
        for &r in &ranks {
            assert!(r < ranks.len() && !seen[r], "variable ranks must be a permutation");
            seen[r] = true;
        }
        MonomialOrder { kind, ranks }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.ranks.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars());
        debug_assert_eq!(b.nvars(), self.nvars());
        match self.kind {
            OrderKind::Lex => self.lex(a, b),
            OrderKind::GrLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.lex(a, b)),
            OrderKind::DegRevLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| self.revlex(a, b)),
        }
    }

    fn lex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.ranks {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => {}
                non_eq => return non_eq,
            }
        }
        Ordering::Equal
    }

    // At equal total degree the monomial with the smaller exponent on the
    // weakest variable is the larger one, scanning from the weakest
    // variable backwards.
    fn revlex(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in self.ranks.iter().rev() {
            match a.exp(v).cmp(&b.exp(v)) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn degrevlex_known_comparisons() {
        let ord = MonomialOrder::new(OrderKind::DegRevLex, 3);
        // Total degree dominates.
        assert_eq!(ord.cmp(&m(&[3, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        // x^2 > xy > y^2 > xz > yz > z^2 for x > y > z.
        let deg2 = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in deg2.windows(2) {
            assert_eq!(ord.cmp(&w[0], &w[1]), Ordering::Greater, "{:?} vs {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn lex_ignores_total_degree() {
        let ord = MonomialOrder::new(OrderKind::Lex, 2);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn grlex_breaks_ties_by_lex() {
        let ord = MonomialOrder::new(OrderKind::GrLex, 3);
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn permuted_variable_order() {
        // Rank y above x: in lex, y wins.
        let ord = MonomialOrder::with_variable_order(OrderKind::Lex, vec![1, 0]);
        assert_eq!(ord.cmp(&m(&[2, 0]), &m(&[0, 1])), Ordering::Less);
    }

    fn arb_case() -> impl Strategy<Value = (OrderKind, Vec<Monomial>)> {
        let kind = prop::sample::select(vec![OrderKind::Lex, OrderKind::GrLex, OrderKind::DegRevLex]);
        (kind, 1usize..=6).prop_flat_map(|(kind, nvars)| {
            prop::collection::vec(
                prop::collection::vec(0u32..=8, nvars).prop_map(Monomial::from_exps),
                3,
            )
            .prop_map(move |ms| (kind, ms))
        })
    }

    proptest! {
        #[test]
        fn orders_are_total_and_multiplicative_with_one_minimal((kind, ms) in arb_case()) {
            let nvars = ms[0].nvars();
            let ord = MonomialOrder::new(kind, nvars);
            let (a, b, c) = (&ms[0], &ms[1], &ms[2]);

            // Total: Equal only for identical monomials.
            prop_assert_eq!(ord.cmp(a, b) == Ordering::Equal, a == b);
            // Antisymmetric + transitive through Ord semantics.
            prop_assert_eq!(ord.cmp(a, b), ord.cmp(b, a).reverse());
            if ord.cmp(a, b) != Ordering::Greater && ord.cmp(b, c) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(a, c), Ordering::Greater);
            }
            // Multiplicative: a < b implies ac < bc.
            if ord.cmp(a, b) == Ordering::Less {
                prop_assert_eq!(ord.cmp(&a.mul(c), &b.mul(c)), Ordering::Less);
            }
            // 1 is the minimum.
            let one = Monomial::one(nvars);
            prop_assert_ne!(ord.cmp(&one, a), Ordering::Greater);
            // The order refines divisibility.
            if a.divides(b) && a != b {
                prop_assert_eq!(ord.cmp(a, b), Ordering::Less);
            }
        }
    }
}
