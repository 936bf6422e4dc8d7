//! Families of increasing sets and the geometric aggregate built from them.
//!
//! For `r ∈ (0, 1/2)` the aggregate `c(x) = Σ_{n<N} rⁿ χ_{Aₙ}(x)` compares
//! two elements exactly like their membership vectors compare
//! lexicographically: `c(x) < c(y)` iff the first set containing exactly one
//! of them contains `y`. Every tail satisfies `rᵐ > Σ_{n>m} rⁿ`, so the first
//! difference dominates everything after it.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{
    check_ratio, classify, require_multi_utility, MonotoneClass, MultiUtility, ValueTable,
};
use crate::error::{Error, Result};
use crate::order::{ElementSet, FinitePreorder};
use crate::rational::{self, Rational};

/// Ordered sequence `(A₀, …, A_{N−1})` of subsets of `0..n`.
///
/// Construction only checks indices; whether every member is increasing
/// depends on the preorder and is checked by [`check_separating`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncreasingFamily {
    n: usize,
    sets: Vec<ElementSet>,
}

impl IncreasingFamily {
    pub fn new(n: usize, sets: Vec<ElementSet>) -> Result<Self> {
        for s in &sets {
            if s.ground_size() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: s.ground_size(),
                });
            }
        }
        Ok(IncreasingFamily { n, sets })
    }

    pub fn from_members(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let sets = sets
            .iter()
            .map(|m| ElementSet::from_members(n, m.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        IncreasingFamily::new(n, sets)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The family reordered so that position `k` holds `A_{order[k]}`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        IncreasingFamily {
            n: self.n,
            sets: order.iter().map(|&k| self.sets[k].clone()).collect(),
        }
    }

    /// Same family with positions `a` and `b` exchanged.
    pub fn transposed(&self, a: usize, b: usize) -> Self {
        let mut sets = self.sets.clone();
        sets.swap(a, b);
        IncreasingFamily { n: self.n, sets }
    }

    pub fn first_non_increasing(&self, p: &FinitePreorder) -> Option<usize> {
        self.sets.iter().position(|s| !p.is_increasing(s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson::from(self)).expect("serializable")
    }

    pub fn from_json(n: usize, text: &str) -> Result<Self> {
        let raw: FamilyJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let sets = raw
            .sets
            .into_iter()
            .map(|m| ElementSet::from_members(n, m))
            .collect::<Result<Vec<_>>>()?;
        IncreasingFamily::new(n, sets)
    }
}

/// On-disk form: `{"sets": [[int,...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub sets: Vec<Vec<usize>>,
}

impl From<&IncreasingFamily> for FamilyJson {
    fn from(f: &IncreasingFamily) -> Self {
        FamilyJson {
            sets: f.sets.iter().map(ElementSet::members).collect(),
        }
    }
}

/// `c(x) = Σ_{n<N} rⁿ χ_{Aₙ}(x)`, exact, for `r ∈ (0, 1)`.
pub fn geometric_aggregate(family: &IncreasingFamily, r: &Rational) -> Result<ValueTable> {
    check_ratio(r, false)?;
    let mut values = vec![Rational::zero(); family.n];
    let mut weight = Rational::one();
    for set in &family.sets {
        for x in set.iter() {
            values[x] += &weight;
        }
        weight *= r;
    }
    Ok(ValueTable::new(values))
}

/// Which side the first differing set falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divergence {
    /// `x ∉ A_m`, `y ∈ A_m`.
    XAbsentYPresent,
    /// `x ∈ A_m`, `y ∉ A_m`.
    XPresentYAbsent,
}

/// Smallest `m` where `x` and `y` differ in membership of `A_m`.
pub fn first_divergence(
    family: &IncreasingFamily,
    x: usize,
    y: usize,
) -> Option<(usize, Divergence)> {
    family
        .sets
        .iter()
        .enumerate()
        .find_map(|(m, s)| match (s.contains(x), s.contains(y)) {
            (false, true) => Some((m, Divergence::XAbsentYPresent)),
            (true, false) => Some((m, Divergence::XPresentYAbsent)),
            _ => None,
        })
}

/// Separation flags for a family of increasing sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    /// Every `x ≺ y` has a set with `x ∉ A`, `y ∈ A`.
    pub strict_ok: bool,
    /// `strict_ok`, and every `x ⋈ y` is separated in some direction.
    pub injective_ok: bool,
}

fn separates(family: &IncreasingFamily, x: usize, y: usize) -> bool {
    family.sets.iter().any(|s| !s.contains(x) && s.contains(y))
}

pub fn check_separating(p: &FinitePreorder, family: &IncreasingFamily) -> Result<Separation> {
    if family.n != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: family.n,
        });
    }
    if let Some(index) = family.first_non_increasing(p) {
        return Err(Error::NotIncreasing { index });
    }
    let n = p.len();
    let mut strict_ok = true;
    let mut incomparable_ok = true;
    for x in 0..n {
        for y in 0..n {
            if p.lt(x, y) && !separates(family, x, y) {
                strict_ok = false;
            }
            if x < y && p.incomparable(x, y) && !separates(family, x, y) && !separates(family, y, x)
            {
                incomparable_ok = false;
            }
        }
    }
    Ok(Separation {
        strict_ok,
        injective_ok: strict_ok && incomparable_ok,
    })
}

/// Upper level sets `{x | f(x) ≥ q}` at the midpoints `q` between
/// consecutive distinct values of `f`, ascending.
fn threshold_sets(f: &ValueTable) -> Vec<ElementSet> {
    let distinct = f.distinct_sorted();
    distinct
        .windows(2)
        .map(|w| {
            let q = rational::midpoint(&w[0], &w[1]);
            let mut set = ElementSet::empty(f.len());
            for (x, v) in f.values.iter().enumerate() {
                if *v >= q {
                    set.insert(x);
                }
            }
            set
        })
        .collect()
}

/// Threshold sets of every member of a multi-utility, listed by function
/// index and then ascending threshold. The result separates every strictly
/// ordered pair and every incomparable pair.
pub fn thresholds_family(p: &FinitePreorder, family: &MultiUtility) -> Result<IncreasingFamily> {
    require_multi_utility(p, family)?;
    let sets = family.functions().iter().flat_map(threshold_sets).collect();
    let out = IncreasingFamily::new(p.len(), sets)?;
    debug_assert!(check_separating(p, &out)
        .map(|s| s.injective_ok)
        .unwrap_or(false));
    Ok(out)
}

/// Threshold family of a single strict (or injective) monotone.
pub fn separating_family_from_monotone(
    p: &FinitePreorder,
    f: &ValueTable,
) -> Result<IncreasingFamily> {
    classify(p, f)?.require(MonotoneClass::StrictMonotone)?;
    IncreasingFamily::new(p.len(), threshold_sets(f))
}
