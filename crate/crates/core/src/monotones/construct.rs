//! Constructions producing injective monotones and injective multi-utilities.

use num_traits::One;

use super::family::{geometric_aggregate, thresholds_family};
use super::{check_ratio, classify, MonotoneClass, MultiUtility, ValueTable};
use crate::error::Result;
use crate::order::{ElementSet, FinitePreorder};
use crate::rational::{self, Rational};

/// Ratio used when none is given.
pub const DEFAULT_RATIO: (i64, i64) = (1, 3);

pub fn default_ratio() -> Rational {
    rational::frac(DEFAULT_RATIO.0, DEFAULT_RATIO.1)
}

/// Geometric aggregate of the threshold family of a multi-utility. Needs
/// `r ∈ (0, 1/2)`.
pub fn injective_from_multi_utility(
    p: &FinitePreorder,
    family: &MultiUtility,
    r: &Rational,
) -> Result<ValueTable> {
    check_ratio(r, true)?;
    let sets = thresholds_family(p, family)?;
    geometric_aggregate(&sets, r)
}

/// `{c} ∪ {c_{m,p}}_{m<p}`, where `c_{m,p}` aggregates the threshold family
/// with positions `m` and `p` exchanged. Pairs are emitted in lexicographic
/// order.
///
/// For `x ⋈ y` with `c(y) < c(x)`, let `m` be the first set splitting them
/// (it holds `x`) and `p > m` a set holding `y` but not `x`; after the swap
/// the first split favours `y`, so `c_{m,p}(x) < c_{m,p}(y)`.
pub fn injective_multi_utility_swap(
    p: &FinitePreorder,
    family: &MultiUtility,
    r: &Rational,
) -> Result<MultiUtility> {
    check_ratio(r, true)?;
    let sets = thresholds_family(p, family)?;
    let mut out = vec![geometric_aggregate(&sets, r)?];
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            out.push(geometric_aggregate(&sets.transposed(a, b), r)?);
        }
    }
    MultiUtility::new(out)
}

/// `I_f = {x | ∃y: f(x) = f(y), x ⋈ y}` for a strict monotone `f`.
pub fn non_injective_set(p: &FinitePreorder, f: &ValueTable) -> Result<ElementSet> {
    classify(p, f)?.require(MonotoneClass::StrictMonotone)?;
    Ok(non_injective_unchecked(p, f))
}

fn non_injective_unchecked(p: &FinitePreorder, f: &ValueTable) -> ElementSet {
    let n = p.len();
    let mut set = ElementSet::empty(n);
    for x in 0..n {
        if (0..n).any(|y| f.get(x) == f.get(y) && p.incomparable(x, y)) {
            set.insert(x);
        }
    }
    set
}

/// Removes ties between incomparable elements of a strict monotone.
///
/// With `I_f = {x₀ < x₁ < …}` (ascending index), step `k` adds `2⁻ᵏ` to every
/// `x` with `f_{k−1}(x) ≥ f_{k−1}(x_k)` and `x ≁ x_k`. Steps never merge
/// values and never reorder them, and step `k` separates `x_k` from every
/// element it was tied with.
pub fn eliminate_noninjective(p: &FinitePreorder, f: &ValueTable) -> Result<ValueTable> {
    let ties = non_injective_set(p, f)?;
    let mut values = f.values.clone();
    let mut increment = Rational::one();
    for pivot in ties.iter() {
        let level = values[pivot].clone();
        for (x, v) in values.iter_mut().enumerate() {
            if *v >= level && !p.equiv(x, pivot) {
                *v += &increment;
            }
        }
        increment /= rational::int(2);
    }
    Ok(ValueTable::new(values))
}

/// Rank map: the k-th smallest of K distinct values goes to `k/(K+1)`.
pub fn rescale_to_unit(f: &ValueTable) -> ValueTable {
    let distinct = f.distinct_sorted();
    let denom = (distinct.len() + 1) as i64;
    ValueTable::new(
        f.values
            .iter()
            .map(|v| {
                let rank = distinct.binary_search(v).expect("value present") as i64 + 1;
                rational::frac(rank, denom)
            })
            .collect(),
    )
}

/// `{c̃} ∪ {c̃ + χ_{i(x)}}` for one representative `x` of each equivalence
/// class inside `A_c = {x | ∃y: x ⋈ y, c(x) < c(y)}`, where `c̃` is `c`
/// rescaled into `(0, 1)`. Representatives are the smallest class members,
/// in ascending order.
pub fn injective_multi_utility_from_injective(
    p: &FinitePreorder,
    c: &ValueTable,
) -> Result<MultiUtility> {
    classify(p, c)?.require(MonotoneClass::InjectiveMonotone)?;
    let base = rescale_to_unit(c);
    let n = p.len();
    let mut out = vec![base.clone()];
    let mut seen = ElementSet::empty(n);
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        let in_ac = (0..n).any(|y| p.incomparable(x, y) && base.get(x) < base.get(y));
        if !in_ac {
            continue;
        }
        for m in p.class_of(x).iter() {
            seen.insert(m);
        }
        let lift = ValueTable::indicator(&p.up_set(x, false)?);
        out.push(base.add(&lift));
    }
    MultiUtility::new(out)
}
