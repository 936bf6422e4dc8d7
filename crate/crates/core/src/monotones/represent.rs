//! Do the maximizers of a function pick out maximal elements?

use serde::{Deserialize, Serialize};

use super::ValueTable;
use crate::error::{Error, Result};
use crate::order::{ElementSet, FinitePreorder};

/// Largest ground set for which all `2ⁿ` subsets are scanned.
pub const EXHAUSTIVE_LIMIT: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    /// `argmax_B f ⊆ B_M` for every nonempty `B`.
    pub represents: bool,
    /// `argmax_B f` is exactly `[x₀] ∩ B` for a maximal `x₀`, for every
    /// nonempty `B`.
    pub injectively_represents: bool,
}

/// `{x ∈ B | ∄y ∈ B: f(x) < f(y)}`.
pub fn argmax_in(f: &ValueTable, subset: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(subset.ground_size());
    let best = subset.iter().map(|x| f.get(x)).max();
    if let Some(best) = best {
        for x in subset.iter() {
            if f.get(x) == best {
                out.insert(x);
            }
        }
    }
    out
}

/// Scans every nonempty subset of the ground set (`n ≤ 6`).
pub fn verify_representation(p: &FinitePreorder, f: &ValueTable) -> Result<Representation> {
    if p.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            n: p.len(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    verify_representation_unbounded(p, f)
}

pub(crate) fn verify_representation_unbounded(
    p: &FinitePreorder,
    f: &ValueTable,
) -> Result<Representation> {
    f.check_dimension(p.len())?;
    let n = p.len();
    let mut represents = true;
    let mut injectively = true;
    for mask in 1u64..(1u64 << n) {
        let subset = ElementSet::from_mask(n, mask);
        let argmax = argmax_in(f, &subset);
        let maximal = p.maximal_elements_in(&subset)?;
        if !argmax.is_subset(&maximal) {
            represents = false;
        }
        let x0 = argmax
            .iter()
            .next()
            .expect("nonempty subset has a maximizer");
        let class_in_subset = subset.iter().filter(|&y| p.equiv(x0, y));
        let one_class = maximal.contains(x0) && class_in_subset.eq(argmax.iter());
        if !one_class {
            injectively = false;
        }
        if !represents && !injectively {
            break;
        }
    }
    Ok(Representation {
        represents,
        injectively_represents: injectively,
    })
}
