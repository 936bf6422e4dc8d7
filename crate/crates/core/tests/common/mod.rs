//! Random generators and definition-level oracles shared by the integration
//! suites. Nothing here calls into the library's own predicates.

#![allow(dead_code)]

use ordermono::majorization::Dist;
use ordermono::monotones::{IncreasingFamily, MultiUtility, ValueTable};
use ordermono::order::{ElementSet, FinitePreorder};
use ordermono::rational::{self, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Transitive closure of random pairs, each present with probability `density`.
pub fn random_preorder(rng: &mut impl Rng, n: usize, density: f64) -> FinitePreorder {
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.random_bool(density) {
                pairs.push((x, y));
            }
        }
    }
    FinitePreorder::from_relation_pairs(n, &pairs).unwrap()
}

/// `k` random integer functions and the preorder they define as a
/// multi-utility.
pub fn random_multi_utility(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    max_value: i64,
) -> (FinitePreorder, MultiUtility) {
    let tables: Vec<Vec<i64>> = (0..k)
        .map(|_| (0..n).map(|_| rng.random_range(0..=max_value)).collect())
        .collect();
    let p = FinitePreorder::from_fn(n, |x, y| tables.iter().all(|t| t[x] <= t[y]));
    let u = MultiUtility::new(tables.iter().map(|t| ValueTable::from_ints(t)).collect()).unwrap();
    (p, u)
}

/// `f(x) = Σ_{z ⪯ x} w_z` with weights drawn from `weights`. Monotone; strict
/// when every weight is positive.
pub fn down_weight_table(rng: &mut impl Rng, p: &FinitePreorder, weights: &[i64]) -> ValueTable {
    let n = p.len();
    let w: Vec<i64> = (0..n)
        .map(|_| weights[rng.random_range(0..weights.len())])
        .collect();
    ValueTable::from_ints(
        &(0..n)
            .map(|x| (0..n).filter(|&z| oracle_leq(p, z, x)).map(|z| w[z]).sum())
            .collect::<Vec<_>>(),
    )
}

pub fn random_table(rng: &mut impl Rng, n: usize, max_value: i64) -> ValueTable {
    ValueTable::from_ints(
        &(0..n)
            .map(|_| rng.random_range(0..=max_value))
            .collect::<Vec<_>>(),
    )
}

/// Each set is the union of the up-sets of a random handful of elements.
pub fn random_increasing_family(
    rng: &mut impl Rng,
    p: &FinitePreorder,
    len: usize,
) -> IncreasingFamily {
    let n = p.len();
    let sets = (0..len)
        .map(|_| {
            let mut s = ElementSet::empty(n);
            for x in 0..n {
                if rng.random_bool(0.3) {
                    for y in 0..n {
                        if oracle_leq(p, x, y) {
                            s.insert(y);
                        }
                    }
                }
            }
            s
        })
        .collect();
    IncreasingFamily::new(n, sets).unwrap()
}

/// Every preorder on `n ≤ 4` labelled points.
pub fn all_preorders(n: usize) -> Vec<FinitePreorder> {
    assert!(n <= 4);
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << off.len()) {
        let rel = |x: usize, y: usize| {
            x == y
                || off
                    .iter()
                    .position(|&e| e == (x, y))
                    .is_some_and(|i| mask >> i & 1 == 1)
        };
        let transitive =
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(rel(x, y) && rel(y, z)) || rel(x, z))));
        if transitive {
            out.push(FinitePreorder::from_fn(n, rel));
        }
    }
    out
}

pub fn oracle_leq(p: &FinitePreorder, x: usize, y: usize) -> bool {
    p.leq(x, y)
}

pub fn oracle_lt(p: &FinitePreorder, x: usize, y: usize) -> bool {
    p.leq(x, y) && !p.leq(y, x)
}

pub fn oracle_equiv(p: &FinitePreorder, x: usize, y: usize) -> bool {
    p.leq(x, y) && p.leq(y, x)
}

/// Monotone, strict, and injective predicates straight from the definitions.
pub fn oracle_monotone(p: &FinitePreorder, f: &ValueTable) -> bool {
    let n = p.len();
    (0..n).all(|x| (0..n).all(|y| !p.leq(x, y) || f.get(x) <= f.get(y)))
}

pub fn oracle_strict(p: &FinitePreorder, f: &ValueTable) -> bool {
    let n = p.len();
    oracle_monotone(p, f)
        && (0..n).all(|x| (0..n).all(|y| !oracle_lt(p, x, y) || f.get(x) < f.get(y)))
}

pub fn oracle_injective(p: &FinitePreorder, f: &ValueTable) -> bool {
    let n = p.len();
    oracle_strict(p, f)
        && (0..n).all(|x| (0..n).all(|y| f.get(x) != f.get(y) || oracle_equiv(p, x, y)))
}

pub fn oracle_multi_utility(p: &FinitePreorder, u: &MultiUtility) -> bool {
    let n = p.len();
    (0..n)
        .all(|x| (0..n).all(|y| p.leq(x, y) == u.functions().iter().all(|f| f.get(x) <= f.get(y))))
}

pub fn oracle_maximal(p: &FinitePreorder, subset: &[usize]) -> Vec<usize> {
    subset
        .iter()
        .copied()
        .filter(|&x| !subset.iter().any(|&y| oracle_lt(p, x, y)))
        .collect()
}

/// `Σ_{n : x ∈ Aₙ} rⁿ`, evaluated term by term.
pub fn oracle_aggregate(family: &IncreasingFamily, x: usize, r: &Rational) -> Rational {
    let mut total = rational::int(0);
    let mut power = rational::int(1);
    for set in family.sets() {
        if set.contains(x) {
            total += &power;
        }
        power *= r;
    }
    total
}

/// `true` when the first set telling `x` and `y` apart holds `y`.
pub fn oracle_first_split_favours(family: &IncreasingFamily, x: usize, y: usize) -> bool {
    family
        .sets()
        .iter()
        .find(|s| s.contains(x) != s.contains(y))
        .is_some_and(|s| s.contains(y))
}

/// Random distribution with denominators at most `max_weight · n`.
pub fn random_dist(rng: &mut impl Rng, n: usize, max_weight: i64) -> Dist {
    loop {
        let w: Vec<i64> = (0..n).map(|_| rng.random_range(0..=max_weight)).collect();
        let total: i64 = w.iter().sum();
        if total > 0 {
            return Dist::new(w.iter().map(|&v| rational::frac(v, total)).collect()).unwrap();
        }
    }
}

/// Partial sums of the entries sorted non-increasing.
pub fn oracle_partial_sums(p: &Dist) -> Vec<Rational> {
    let mut v = p.probs().to_vec();
    v.sort();
    v.reverse();
    let mut acc = rational::int(0);
    v.into_iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

pub fn oracle_uncertainty_leq(p: &Dist, q: &Dist) -> bool {
    oracle_partial_sums(p)
        .iter()
        .zip(oracle_partial_sums(q))
        .all(|(a, b)| *a >= b)
}

pub fn oracle_incomparable(p: &Dist, q: &Dist) -> bool {
    !oracle_uncertainty_leq(p, q) && !oracle_uncertainty_leq(q, p)
}

pub fn oracle_strictly_below(p: &Dist, q: &Dist) -> bool {
    oracle_uncertainty_leq(p, q) && !oracle_uncertainty_leq(q, p)
}

pub fn oracle_entropy(p: &Dist) -> f64 {
    p.probs()
        .iter()
        .map(rational::to_f64)
        .filter(|&v| v > 0.0)
        .map(|v| -v * v.ln())
        .sum()
}
