//! Critical pairs, the pending queue bucketed by multidegree, and the
//! elimination criteria.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::lattice::{DegreeSet, Multidegree};
use crate::poly::{GradingMap, Monomial, PolyRing, Polynomial, Term};

use super::store::BasisStore;

/// A critical pair of basis elements `i < j`, carrying the leading-monomial
/// lcm and its multidegree (which, for homogeneous inputs, is the degree of
/// the S-polynomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
    pub degree: Multidegree,
    pub sugar: u64,
}

impl SPair {
    pub fn new(i: usize, j: usize, store: &BasisStore, grading: &GradingMap) -> SPair {
        assert!(i < j, "pair indices must satisfy i < j");
        let lcm = store
            .leading_monomial(i)
            .lcm(store.leading_monomial(j));
        let degree = grading.monomial_degree(&lcm);
        let sugar = degree.total();
        SPair {
            i,
            j,
            lcm,
            degree,
            sugar,
        }
    }
}

/// Which S-pair eliminations are enabled. The product criterion is the
/// default; the chain (Gebauer–Möller) criterion sits behind a flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriteriaConfig {
    pub product: bool,
    pub chain: bool,
}

impl Default for CriteriaConfig {
    fn default() -> Self {
        CriteriaConfig {
            product: true,
            chain: false,
        }
    }
}

impl CriteriaConfig {
    pub const NONE: CriteriaConfig = CriteriaConfig {
        product: false,
        chain: false,
    };
    pub const PRODUCT: CriteriaConfig = CriteriaConfig {
        product: true,
        chain: false,
    };
    pub const PRODUCT_CHAIN: CriteriaConfig = CriteriaConfig {
        product: true,
        chain: true,
    };
}

impl fmt::Display for CriteriaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (self.product, self.chain) {
            (false, false) => "none",
            (true, false) => "product",
            (true, true) => "product+chain",
            (false, true) => "chain",
        };
        f.write_str(name)
    }
}

impl FromStr for CriteriaConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(CriteriaConfig::NONE),
            "product" => Ok(CriteriaConfig::PRODUCT),
            "product+chain" => Ok(CriteriaConfig::PRODUCT_CHAIN),
            other => Err(format!(
                "unknown criteria `{other}` (expected none, product or product+chain)"
            )),
        }
    }
}

/// S(f, g) = (L/lt f)·f − (L/lt g)·g with L = lcm(lm f, lm g). The leading
/// terms cancel by construction; for homogeneous inputs the result is zero
/// or homogeneous of degree |L|.
pub fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert!(!f.is_zero() && !g.is_zero(), "S-polynomial of zero");
    let field = ring.field();
    let lcm = f.leading_monomial().lcm(g.leading_monomial());
    let tf = Term {
        coeff: field.inv(f.leading_coeff()),
        monomial: lcm.quotient(f.leading_monomial()),
    };
    let tg = Term {
        coeff: field.inv(g.leading_coeff()),
        monomial: lcm.quotient(g.leading_monomial()),
    };
    ring.sub(&ring.mul_term(&tf, f), &ring.mul_term(&tg, g))
}

/// All pairs (i, j) with `j` ranging over `new_indices` and `i < j`, minus
/// pairs eliminated by the enabled criteria. Indices must be valid in the
/// (already merged) store.
pub fn generate_pairs(
    grading: &GradingMap,
    new_indices: &[usize],
    store: &BasisStore,
    criteria: &CriteriaConfig,
) -> Vec<SPair> {
    let mut out = Vec::new();
    for &j in new_indices {
        out.extend(pairs_for_element(grading, j, store, criteria));
    }
    out
}

fn pairs_for_element(
    grading: &GradingMap,
    j: usize,
    store: &BasisStore,
    criteria: &CriteriaConfig,
) -> Vec<SPair> {
    let candidates: Vec<SPair> = (0..j).map(|i| SPair::new(i, j, store, grading)).collect();
    if criteria.chain {
        gebauer_moeller_new(store, candidates, criteria.product)
    } else if criteria.product {
        candidates
            .into_iter()
            .filter(|p| {
                !store
                    .leading_monomial(p.i)
                    .coprime(store.leading_monomial(p.j))
            })
            .collect()
    } else {
        candidates
    }
}

// The M and F steps of the Gebauer–Möller update for the pairs of one new
// element: drop a pair whose lcm is a proper multiple of another new pair's
// lcm; among equal lcms keep one representative, or none when the class
// contains a coprime pair.
fn gebauer_moeller_new(
    store: &BasisStore,
    candidates: Vec<SPair>,
    product: bool,
) -> Vec<SPair> {
    let survives_m = |p: &SPair| {
        !candidates
            .iter()
            .any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm))
    };
    let mut classes: Vec<(Monomial, Vec<&SPair>)> = Vec::new();
    for p in candidates.iter().filter(|p| survives_m(p)) {
        match classes.iter_mut().find(|(l, _)| *l == p.lcm) {
            Some((_, class)) => class.push(p),
            None => classes.push((p.lcm.clone(), vec![p])),
        }
    }
    let mut kept = Vec::new();
    for (_, class) in classes {
        let coprime = class.iter().any(|p| {
            store
                .leading_monomial(p.i)
                .coprime(store.leading_monomial(p.j))
        });
        if product && coprime {
            continue;
        }
        // Smallest (i, j) as the representative, for determinism.
        let rep = class
            .into_iter()
            .min_by_key(|p| (p.i, p.j))
            .expect("class is nonempty");
        kept.push(rep.clone());
    }
    kept.sort_by_key(|p| (p.i, p.j));
    kept
}

/// The B step of the Gebauer–Möller update: pending pairs made redundant by
/// the new element `t` are removed. Returns how many were culled.
pub(crate) fn cull_pending(
    store: &BasisStore,
    t: usize,
    pending: &mut PendingQueue,
) -> u64 {
    let lm_t = store.leading_monomial(t).clone();
    pending.cull(|p| {
        if !lm_t.divides(&p.lcm) {
            return true;
        }
        let lcm_it = store.leading_monomial(p.i).lcm(&lm_t);
        let lcm_jt = store.leading_monomial(p.j).lcm(&lm_t);
        // Keep unless both mixed lcms differ from the pair's own lcm.
        lcm_it == p.lcm || lcm_jt == p.lcm
    })
}

/// Unprocessed S-pairs, partitioned by multidegree. Empty buckets are
/// removed eagerly, so `occupied()` is exactly the set of degrees holding
/// work.
#[derive(Debug, Clone, Default)]
pub struct PendingQueue {
    buckets: BTreeMap<Multidegree, Vec<SPair>>,
    total: usize,
}

impl PendingQueue {
    pub fn new() -> Self {
        PendingQueue::default()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.total
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    pub fn insert(&mut self, pair: SPair) {
        self.total += 1;
        self.buckets
            .entry(pair.degree.clone())
            .or_default()
            .push(pair);
    }

    pub fn extend(&mut self, pairs: impl IntoIterator<Item = SPair>) {
        for p in pairs {
            self.insert(p);
        }
    }

    /// Removes and returns the bucket for `d` (empty if none).
    pub fn take_bucket(&mut self, d: &Multidegree) -> Vec<SPair> {
        let bucket = self.buckets.remove(d).unwrap_or_default();
        self.total -= bucket.len();
        bucket
    }

    pub fn occupied(&self) -> DegreeSet {
        self.buckets.keys().cloned().collect()
    }

    pub fn contains_degree(&self, d: &Multidegree) -> bool {
        self.buckets.contains_key(d)
    }

    /// Keeps only pairs satisfying the predicate; drops buckets that become
    /// empty. Returns the number removed.
    pub fn cull(&mut self, mut keep: impl FnMut(&SPair) -> bool) -> u64 {
        let mut removed = 0u64;
        self.buckets.retain(|_, bucket| {
            bucket.retain(|p| {
                let k = keep(p);
                if !k {
                    removed += 1;
                }
                k
            });
            !bucket.is_empty()
        });
        self.total -= removed as usize;
        removed
    }

    /// Deterministic iteration: degree order, then insertion order.
    pub fn iter_pairs(&self) -> impl Iterator<Item = &SPair> {
        self.buckets.values().flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{OrderKind, PolyRing, PrimeField};

    fn ring() -> PolyRing {
        PolyRing::new(
            PrimeField::new(101).unwrap(),
            vec!["x".into(), "y".into()],
            OrderKind::DegRevLex,
        )
        .unwrap()
    }

    fn grading() -> GradingMap {
        GradingMap::new(vec![
            Multidegree::new(vec![1, 0]),
            Multidegree::new(vec![0, 1]),
        ])
        .unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn s_polynomial_cases() {
        let r = ring();
        // Monomials cancel exactly.
        let x2 = r.polynomial([(1, m(&[2, 0]))]);
        let xy = r.polynomial([(1, m(&[1, 1]))]);
        assert!(s_polynomial(&r, &x2, &xy).is_zero());

        // f = xy + y², g = x² (degrevlex x > y): S = x·f − y·g = xy².
        let f = r.polynomial([(1, m(&[1, 1])), (1, m(&[0, 2]))]);
        let g = r.polynomial([(1, m(&[2, 0]))]);
        let s = s_polynomial(&r, &f, &g);
        assert_eq!(s, r.polynomial([(1, m(&[1, 2]))]));

        assert!(s_polynomial(&r, &f, &f).is_zero());
    }

    #[test]
    fn generate_pairs_cases() {
        let r = ring();
        let g = grading();
        let mut store = BasisStore::new();
        store.append(
            r.polynomial([(1, m(&[2, 0]))]),
            Multidegree::new(vec![2, 0]),
        );
        store.append(
            r.polynomial([(1, m(&[0, 2]))]),
            Multidegree::new(vec![0, 2]),
        );

        let all = generate_pairs(&g, &[1], &store, &CriteriaConfig::NONE);
        assert_eq!(all.len(), 1);
        assert_eq!((all[0].i, all[0].j), (0, 1));
        assert_eq!(all[0].lcm, m(&[2, 2]));
        assert_eq!(all[0].degree, Multidegree::new(vec![2, 2]));
        assert_eq!(all[0].sugar, 4);

        // Coprime leading monomials: culled by the product criterion.
        let culled = generate_pairs(&g, &[1], &store, &CriteriaConfig::PRODUCT);
        assert!(culled.is_empty());

        assert!(generate_pairs(&g, &[], &store, &CriteriaConfig::NONE).is_empty());
    }

    #[test]
    fn pending_queue_buckets_by_degree() {
        let r = ring();
        let g = grading();
        let mut store = BasisStore::new();
        store.append(
            r.polynomial([(1, m(&[1, 1]))]),
            Multidegree::new(vec![1, 1]),
        );
        store.append(
            r.polynomial([(1, m(&[2, 0]))]),
            Multidegree::new(vec![2, 0]),
        );
        store.append(
            r.polynomial([(1, m(&[0, 2]))]),
            Multidegree::new(vec![0, 2]),
        );
        let mut q = PendingQueue::new();
        q.extend(generate_pairs(&g, &[1, 2], &store, &CriteriaConfig::NONE));
        assert_eq!(q.pair_count(), 3);
        assert_eq!(q.bucket_count(), 3);

        let d = Multidegree::new(vec![2, 1]);
        let bucket = q.take_bucket(&d);
        assert_eq!(bucket.len(), 1);
        assert_eq!(q.pair_count(), 2);
        assert!(!q.contains_degree(&d));

        let removed = q.cull(|_| false);
        assert_eq!(removed, 2);
        assert!(q.is_empty());
    }
}
