//! Seeded generation of comparable pairs via Robin-Hood transfers.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{uncertainty_compare, Dist};
use crate::error::{Error, Result};
use crate::order::OrderRelation;
use crate::rational::{self, Rational};

const MAX_WEIGHT: i64 = 12;
const MAX_ATTEMPTS: usize = 64;

/// Moves `amount` from entry `from` to entry `to`. Needs
/// `0 < amount < p_from − p_to`, which makes the result strictly more
/// uncertain than `p`.
pub fn transfer(p: &Dist, from: usize, to: usize, amount: &Rational) -> Result<Dist> {
    for &i in &[from, to] {
        if i >= p.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: p.len(),
            });
        }
    }
    let gap = &p.probs[from] - &p.probs[to];
    if !amount.is_positive() || *amount >= gap {
        return Err(Error::Precondition(format!(
            "transfer amount {} must lie strictly between 0 and {}",
            rational::format(amount),
            rational::format(&gap)
        )));
    }
    let mut probs = p.probs.clone();
    probs[from] -= amount;
    probs[to] += amount;
    Ok(Dist::from_parts_unchecked(probs))
}

/// A random non-uniform distribution on `n ≥ 2` points with small
/// denominators.
pub fn random_dist(rng: &mut impl Rng, n: usize) -> Dist {
    loop {
        let weights: Vec<i64> = (0..n).map(|_| rng.random_range(0..=MAX_WEIGHT)).collect();
        let total: i64 = weights.iter().sum();
        if total == 0 || weights.iter().all(|&w| w == weights[0]) {
            continue;
        }
        return Dist::from_parts_unchecked(
            weights.iter().map(|&w| rational::frac(w, total)).collect(),
        );
    }
}

/// `(p, q)` with `p ≺_U q` strictly, `q` obtained from `p` by `transfers`
/// random Robin-Hood moves. Deterministic in `seed`.
pub fn random_comparable_pair(seed: u64, n: usize, transfers: usize) -> Result<(Dist, Dist)> {
    if n < 2 {
        return Err(Error::Precondition("need at least 2 outcomes".into()));
    }
    if transfers == 0 {
        return Err(Error::Precondition("need at least one transfer".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let p = random_dist(&mut rng, n);
        let mut q = p.clone();
        for _ in 0..transfers {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| q.probs[i] > q.probs[j])
                .collect();
            if pairs.is_empty() {
                break;
            }
            let (i, j) = pairs[rng.random_range(0..pairs.len())];
            let k = rng.random_range(1..=8i64);
            let amount = (&q.probs[i] - &q.probs[j]) * rational::frac(k, 16);
            debug_assert!(!amount.is_zero());
            q = transfer(&q, i, j, &amount)?;
        }
        if uncertainty_compare(&p, &q)? == OrderRelation::StrictlyLess {
            return Ok((p, q));
        }
    }
    Err(Error::NoConvergence(format!(
        "no strictly comparable pair after {MAX_ATTEMPTS} attempts"
    )))
}
