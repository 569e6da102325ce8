//! The partially ordered monoid ℕ^d of multidegrees.
//!
//! Degrees of a multigraded ring live here: componentwise comparison,
//! componentwise addition, and the two antichain extraction strategies
//! that drive degree-by-degree scheduling.

use std::cmp::Ordering;
use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Outcome of comparing two multidegrees componentwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeOrd {
    Equal,
    /// Strictly below: every component ≤, at least one <.
    Less,
    /// Strictly above: every component ≥, at least one >.
    Greater,
    /// Some component strictly smaller and another strictly larger.
    Incomparable,
}

/// An element of ℕ^d. The dimension `d` is fixed per problem; every
/// operation asserts that both operands share it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multidegree {
    components: Vec<u64>,
}

impl Multidegree {
    pub fn new(components: Vec<u64>) -> Self {
        Multidegree { components }
    }

    /// The monoid identity (0,…,0) of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        Multidegree {
            components: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    /// Componentwise comparison in the product partial order.
    pub fn compare(&self, other: &Multidegree) -> DegreeOrd {
        assert_eq!(
            self.dim(),
            other.dim(),
            "multidegree dimension mismatch: {} vs {}",
            self.dim(),
            other.dim()
        );
        let mut less = false;
        let mut greater = false;
        for (a, b) in self.components.iter().zip(&other.components) {
            match a.cmp(b) {
                Ordering::Less => less = true,
                Ordering::Greater => greater = true,
                Ordering::Equal => {}
            }
        }
        match (less, greater) {
            (false, false) => DegreeOrd::Equal,
            (true, false) => DegreeOrd::Less,
            (false, true) => DegreeOrd::Greater,
            (true, true) => DegreeOrd::Incomparable,
        }
    }

    /// `self ≤ other` in the partial order (Less or Equal).
    pub fn leq(&self, other: &Multidegree) -> bool {
        matches!(self.compare(other), DegreeOrd::Less | DegreeOrd::Equal)
    }

    /// Componentwise sum, the monoid operation. Overflow is a hard error.
    pub fn add(&self, other: &Multidegree) -> Multidegree {
        assert_eq!(self.dim(), other.dim(), "multidegree dimension mismatch");
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_add(*b).expect("multidegree component overflow"))
            .collect();
        Multidegree { components }
    }

    /// Sum of components.
    pub fn total(&self) -> u64 {
        self.components
            .iter()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .expect("total degree overflow")
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Multidegree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("multidegree `{s}` is not parenthesized"))?;
        let components = inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|e| format!("bad multidegree component `{}`: {e}", part.trim()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if components.is_empty() {
            return Err(format!("multidegree `{s}` has no components"));
        }
        Ok(Multidegree { components })
    }
}

fn decimal_digits(v: u64, buf: &mut [u8; 20]) -> usize {
    let mut v = v;
    let mut i = buf.len();
    loop {
        i -= 1;
        buf[i] = b'0' + (v % 10) as u8;
        v /= 10;
        if v == 0 {
            break;
        }
    }
    i
}

/// Total order matching the textual form `(a,b,…)` compared as a string.
///
/// This is *not* the componentwise partial order (see [`Multidegree::compare`]);
/// it is the tiebreak used wherever a deterministic total order on degrees is
/// needed: bucket maps, round scheduling, and output files.
impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.components.iter().zip(&other.components) {
            let mut ba = [0u8; 20];
            let mut bb = [0u8; 20];
            let ia = decimal_digits(*a, &mut ba);
            let ib = decimal_digits(*b, &mut bb);
            // Byte-slice comparison of the digit strings; a strict prefix
            // compares less, matching how `,`/`)` sort below any digit.
            match ba[ia..].cmp(&bb[ib..]) {
                Ordering::Equal => {}
                non_eq => return non_eq,
            }
        }
        self.components.len().cmp(&other.components.len())
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite set of distinct multidegrees of a common dimension.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeSet {
    degrees: BTreeSet<Multidegree>,
}

impl DegreeSet {
    pub fn new() -> Self {
        DegreeSet::default()
    }

    pub fn insert(&mut self, d: Multidegree) -> bool {
        if let Some(first) = self.degrees.iter().next() {
            assert_eq!(first.dim(), d.dim(), "mixed dimensions in degree set");
        }
        self.degrees.insert(d)
    }

    pub fn contains(&self, d: &Multidegree) -> bool {
        self.degrees.contains(d)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Ascending in the textual total order.
    pub fn iter(&self) -> btree_set::Iter<'_, Multidegree> {
        self.degrees.iter()
    }

    /// True iff every distinct pair of elements is incomparable.
    pub fn is_antichain(&self) -> bool {
        let v: Vec<_> = self.degrees.iter().collect();
        for (i, a) in v.iter().enumerate() {
            for b in &v[i + 1..] {
                if a.compare(b) != DegreeOrd::Incomparable {
                    return false;
                }
            }
        }
        true
    }

    /// The elements with no strictly smaller element in the set. These
    /// generate the upward closure and always form an antichain.
    pub fn minimal(&self) -> DegreeSet {
        let degrees = self
            .degrees
            .iter()
            .filter(|d| {
                !self
                    .degrees
                    .iter()
                    .any(|e| e.compare(d) == DegreeOrd::Less)
            })
            .cloned()
            .collect();
        DegreeSet { degrees }
    }

    /// All elements whose total degree equals the minimum total degree
    /// present. Equal total degree forces pairwise incomparability, so the
    /// result is an antichain. Empty input yields the empty set.
    pub fn total_degree_slice(&self) -> DegreeSet {
        let Some(min_total) = self.degrees.iter().map(|d| d.total()).min() else {
            return DegreeSet::new();
        };
        let degrees = self
            .degrees
            .iter()
            .filter(|d| d.total() == min_total)
            .cloned()
            .collect();
        DegreeSet { degrees }
    }
}

impl FromIterator<Multidegree> for DegreeSet {
    fn from_iter<T: IntoIterator<Item = Multidegree>>(iter: T) -> Self {
        let mut s = DegreeSet::new();
        for d in iter {
            s.insert(d);
        }
        s
    }
}

/// How a round's antichain is extracted from the occupied degrees. Both
/// yield only occupied degrees, so no empty tasks are dispatched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AntichainStrategy {
    #[default]
    /// All minimal occupied degrees.
    MinimalOccupied,
    /// The occupied degrees of minimal total degree.
    TotalDegree,
}

impl AntichainStrategy {
    pub fn extract(&self, occupied: &DegreeSet) -> DegreeSet {
        match self {
            AntichainStrategy::MinimalOccupied => occupied.minimal(),
            AntichainStrategy::TotalDegree => occupied.total_degree_slice(),
        }
    }
}

impl fmt::Display for AntichainStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AntichainStrategy::MinimalOccupied => "min-occupied",
            AntichainStrategy::TotalDegree => "total-degree",
        };
        f.write_str(name)
    }
}

impl FromStr for AntichainStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min-occupied" => Ok(AntichainStrategy::MinimalOccupied),
            "total-degree" => Ok(AntichainStrategy::TotalDegree),
            other => Err(format!(
                "unknown strategy `{other}` (expected min-occupied or total-degree)"
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn md(components: &[u64]) -> Multidegree {
        Multidegree::new(components.to_vec())
    }

    fn set(items: &[&[u64]]) -> DegreeSet {
        items.iter().map(|c| md(c)).collect()
    }

    #[test]
    fn compare_cases() {
        assert_eq!(md(&[1, 2]).compare(&md(&[2, 1])), DegreeOrd::Incomparable);
        assert_eq!(md(&[0, 0]).compare(&md(&[3, 5])), DegreeOrd::Less);
        assert_eq!(md(&[3, 5]).compare(&md(&[0, 0])), DegreeOrd::Greater);
        assert_eq!(md(&[2, 3]).compare(&md(&[2, 3])), DegreeOrd::Equal);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn compare_dimension_mismatch() {
        md(&[1, 2]).compare(&md(&[1, 2, 3]));
    }

    #[test]
    fn add_cases() {
        assert_eq!(md(&[1, 0]).add(&md(&[0, 1])), md(&[1, 1]));
        assert_eq!(md(&[0, 0]).add(&md(&[4, 7])), md(&[4, 7]));
        assert_eq!(md(&[2, 1]).add(&md(&[1, 3])), md(&[3, 4]));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn add_overflow_is_fatal() {
        md(&[u64::MAX, 0]).add(&md(&[1, 0]));
    }

    #[test]
    fn total_degree_cases() {
        assert_eq!(md(&[1, 1]).total(), 2);
        assert_eq!(md(&[0, 0]).total(), 0);
        assert_eq!(md(&[3, 0]).total(), 3);
    }

    #[test]
    fn antichain_cases() {
        assert!(set(&[&[0, 3], &[1, 2], &[2, 1], &[3, 0]]).is_antichain());
        assert!(!set(&[&[1, 1], &[2, 2]]).is_antichain());
        assert!(set(&[]).is_antichain());
    }

    #[test]
    fn minimal_cases() {
        assert_eq!(
            set(&[&[1, 1], &[2, 1], &[1, 2], &[3, 0]]).minimal(),
            set(&[&[1, 1], &[3, 0]])
        );
        assert_eq!(set(&[&[2, 2]]).minimal(), set(&[&[2, 2]]));
        assert_eq!(set(&[]).minimal(), set(&[]));
    }

    #[test]
    fn total_degree_slice_cases() {
        assert_eq!(
            set(&[&[1, 1], &[2, 1], &[1, 2], &[3, 0]]).total_degree_slice(),
            set(&[&[1, 1]])
        );
        assert_eq!(
            set(&[&[0, 3], &[2, 1]]).total_degree_slice(),
            set(&[&[0, 3], &[2, 1]])
        );
        assert_eq!(set(&[]).total_degree_slice(), set(&[]));
    }

    #[test]
    fn text_round_trip() {
        for c in [vec![1, 0], vec![0, 0], vec![10, 3], vec![7]] {
            let d = Multidegree::new(c);
            assert_eq!(d.to_string().parse::<Multidegree>().unwrap(), d);
        }
        assert!("1,2".parse::<Multidegree>().is_err());
        assert!("(1,x)".parse::<Multidegree>().is_err());
        assert!("()".parse::<Multidegree>().is_err());
    }

    #[test]
    fn total_order_matches_rendered_strings() {
        let degrees = [
            md(&[1, 2]),
            md(&[10, 0]),
            md(&[2, 1]),
            md(&[0, 0]),
            md(&[12, 3]),
            md(&[123, 0]),
            md(&[9, 9]),
        ];
        for a in &degrees {
            for b in &degrees {
                assert_eq!(
                    a.cmp(b),
                    a.to_string().cmp(&b.to_string()),
                    "{a} vs {b}"
                );
            }
        }
    }

    fn arb_degree(dim: usize) -> impl Strategy<Value = Multidegree> {
        prop::collection::vec(0u64..=10, dim).prop_map(Multidegree::new)
    }

    fn arb_degree_set() -> impl Strategy<Value = (usize, Vec<Multidegree>)> {
        (1usize..=4).prop_flat_map(|dim| {
            prop::collection::vec(arb_degree(dim), 0..40).prop_map(move |v| (dim, v))
        })
    }

    proptest! {
        #[test]
        fn order_is_reflexive_antisymmetric_transitive(
            (_, v) in arb_degree_set().prop_filter("need 3", |(_, v)| v.len() >= 3)
        ) {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            prop_assert_eq!(a.compare(a), DegreeOrd::Equal);
            if a.leq(b) && b.leq(a) {
                prop_assert_eq!(a.compare(b), DegreeOrd::Equal);
            }
            if a.leq(b) && b.leq(c) {
                prop_assert!(a.leq(c));
            }
        }

        #[test]
        fn monoid_compatibility((_, v) in arb_degree_set().prop_filter("need 3", |(_, v)| v.len() >= 3)) {
            let (a, b, c) = (&v[0], &v[1], &v[2]);
            if a.leq(b) {
                prop_assert!(c.add(a).leq(&c.add(b)));
            }
        }

        #[test]
        fn minimal_is_antichain_and_dominated((_, v) in arb_degree_set()) {
            let s: DegreeSet = v.iter().cloned().collect();
            let min = s.minimal();
            prop_assert!(min.is_antichain());
            for d in s.iter() {
                prop_assert!(min.iter().any(|m| m.leq(d)));
            }
        }

        #[test]
        fn total_degree_slice_is_antichain((_, v) in arb_degree_set()) {
            let s: DegreeSet = v.iter().cloned().collect();
            prop_assert!(s.total_degree_slice().is_antichain());
        }

        #[test]
        fn minimal_agrees_with_pairwise_dominance_filter(
            dims in prop::collection::vec(0u64..=6, 0..200)
        ) {
            // Independent O(n²) oracle over 2-dimensional degrees.
            let v: Vec<Multidegree> = dims
                .chunks(2)
                .filter(|c| c.len() == 2)
                .map(|c| Multidegree::new(c.to_vec()))
                .collect();
            let s: DegreeSet = v.iter().cloned().collect();
            let mut expect = DegreeSet::new();
            for d in s.iter() {
                let dominated = s.iter().any(|e| {
                    e != d && e.components()[0] <= d.components()[0]
                        && e.components()[1] <= d.components()[1]
                });
                if !dominated {
                    expect.insert(d.clone());
                }
            }
            prop_assert_eq!(s.minimal(), expect);
        }
    }
}
