//! The uncertainty preorder on finite probability vectors.
//!
//! `p ⪯_U q` iff every Lorenz utility `u_i(p) = −Σ_{n≤i} p↓_n`
//! (`i = 1..N−1`) satisfies `u_i(p) ≤ u_i(q)`: `q` is at least as spread out
//! as `p`. Classical majorization `⪯_M` compares the same partial sums the
//! other way round and is what the trumping (catalysis) check uses.
//!
//! All comparisons are exact; only entropy is evaluated in floating point.

mod maxent;
mod random;
mod witness;

pub use maxent::{
    constraint_grid, maxent_audit, ConstraintGrid, EnergyFunction, GridRow, MaxentReport,
    ARGMAX_TOLERANCE,
};
pub use random::{random_comparable_pair, random_dist, transfer};
pub use witness::{
    equal_entropy_incomparable_pair, equal_entropy_incomparable_pair_with,
    order_dense_witness_dim2, upper_dense_witness, EqualEntropyOptions, EqualEntropyPair,
};

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monotones::{MultiUtility, ValueTable};
use crate::order::{FinitePreorder, OrderRelation};
use crate::rational::{self, Rational};

/// A probability vector with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DistJson", into = "DistJson")]
pub struct Dist {
    probs: Vec<Rational>,
}

/// On-disk form: `{"probs": ["p/q", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistJson {
    #[serde(with = "rational::serde_pq::vec")]
    pub probs: Vec<Rational>,
}

impl TryFrom<DistJson> for Dist {
    type Error = Error;
    fn try_from(raw: DistJson) -> Result<Self> {
        Dist::new(raw.probs)
    }
}

impl From<Dist> for DistJson {
    fn from(d: Dist) -> Self {
        DistJson { probs: d.probs }
    }
}

impl Dist {
    /// Entries must lie in `[0, 1]` and sum to exactly one.
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if let Some(bad) = probs
            .iter()
            .find(|p| p.is_negative() || **p > Rational::one())
        {
            return Err(Error::OutOfDomain(format!(
                "probability {} outside [0, 1]",
                rational::format(bad)
            )));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::OutOfDomain(format!(
                "probabilities sum to {}, not 1",
                rational::format(&total)
            )));
        }
        Ok(Dist { probs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Dist::new(rational::parse_list(text)?)
    }

    pub fn from_fracs(entries: &[(i64, i64)]) -> Result<Self> {
        Dist::new(entries.iter().map(|&(a, b)| rational::frac(a, b)).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Dist {
            probs: vec![rational::frac(1, n as i64); n],
        }
    }

    pub fn dirac(n: usize, at: usize) -> Self {
        let mut probs = vec![Rational::zero(); n];
        probs[at] = Rational::one();
        Dist { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(rational::to_f64).collect()
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Dist {
            probs: order.iter().map(|&i| self.probs[i].clone()).collect(),
        }
    }

    fn padded(&self, len: usize) -> Vec<Rational> {
        let mut v = self.probs.clone();
        v.resize(len, Rational::zero());
        v
    }

    pub(crate) fn from_parts_unchecked(probs: Vec<Rational>) -> Self {
        debug_assert!(probs.iter().sum::<Rational>().is_one());
        Dist { probs }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::format_list(&self.probs))
    }
}

/// Entries sorted non-increasing.
pub fn decreasing_rearrangement(p: &Dist) -> Dist {
    let mut probs = p.probs.clone();
    probs.sort_by(|a, b| b.cmp(a));
    Dist { probs }
}

/// Partial sums `Σ_{n≤k} p↓_n` for `k = 1..=len`.
pub(crate) fn sorted_partial_sums(probs: &[Rational]) -> Vec<Rational> {
    let mut sorted = probs.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut acc = Rational::zero();
    sorted
        .into_iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect()
}

/// `(u_1, …, u_{N−1})` with `u_i(p) = −Σ_{n≤i} p↓_n`.
pub fn lorenz_utilities(p: &Dist) -> Vec<Rational> {
    let mut sums = sorted_partial_sums(&p.probs);
    sums.pop();
    sums.into_iter().map(|s| -s).collect()
}

/// Relation between two vectors under "every component of `a` ≤ the
/// matching component of `b`".
pub(crate) fn componentwise(a: &[Rational], b: &[Rational]) -> OrderRelation {
    let a_le = a.iter().zip(b).all(|(x, y)| x <= y);
    let b_le = a.iter().zip(b).all(|(x, y)| y <= x);
    OrderRelation::from_leq(a_le, b_le)
}

fn check_same_len(p: &Dist, q: &Dist) -> Result<()> {
    if p.len() == q.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        })
    }
}

/// `p` versus `q` under `⪯_U`. `Equivalent` exactly when `q` is a
/// permutation of `p`.
pub fn uncertainty_compare(p: &Dist, q: &Dist) -> Result<OrderRelation> {
    check_same_len(p, q)?;
    Ok(componentwise(&lorenz_utilities(p), &lorenz_utilities(q)))
}

/// `⪯_U` restricted to `dists`, with the Lorenz utilities as a
/// multi-utility for it.
pub fn lorenz_preorder(dists: &[Dist]) -> Result<(FinitePreorder, MultiUtility)> {
    let first = dists.first().ok_or(Error::EmptyDomain)?;
    for d in dists {
        check_same_len(first, d)?;
    }
    if first.len() < 2 {
        return Err(Error::Precondition("need at least 2 outcomes".into()));
    }
    let lorenz: Vec<Vec<Rational>> = dists.iter().map(lorenz_utilities).collect();
    let p = FinitePreorder::from_fn(dists.len(), |x, y| {
        componentwise(&lorenz[x], &lorenz[y]).is_leq()
    });
    let functions = (0..first.len() - 1)
        .map(|i| ValueTable::new(lorenz.iter().map(|u| u[i].clone()).collect()))
        .collect();
    Ok((p, MultiUtility::new(functions)?))
}

/// `p` versus `q` under classical majorization, zero-padding the shorter
/// vector: `p ⪯_M q` iff `Σ_{n≤k} p↓_n ≤ Σ_{n≤k} q↓_n` for all `k`.
pub fn majorization_compare(p: &Dist, q: &Dist) -> OrderRelation {
    let len = p.len().max(q.len());
    componentwise(
        &sorted_partial_sums(&p.padded(len)),
        &sorted_partial_sums(&q.padded(len)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EntropyUnit {
    #[default]
    Nats,
    Bits,
}

impl EntropyUnit {
    pub fn name(self) -> &'static str {
        match self {
            EntropyUnit::Nats => "nats",
            EntropyUnit::Bits => "bits",
        }
    }
}

/// `−Σ pᵢ ln pᵢ` with `0 ln 0 = 0`.
pub fn shannon_entropy(p: &Dist) -> f64 {
    entropy_of(&p.to_f64())
}

pub fn shannon_entropy_in(p: &Dist, unit: EntropyUnit) -> f64 {
    match unit {
        EntropyUnit::Nats => shannon_entropy(p),
        EntropyUnit::Bits => shannon_entropy(p) / std::f64::consts::LN_2,
    }
}

pub(crate) fn entropy_of(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// `Σ −pₙ²`, an exact strictly Schur-concave monotone of `⪯_U`.
pub fn neg_sum_of_squares(p: &Dist) -> Rational {
    -p.probs.iter().map(|x| x * x).sum::<Rational>()
}

/// `p ⊗ r = (p₁r₁, …, p₁r_M, …, p_N r_M)`.
pub fn tensor(p: &Dist, r: &Dist) -> Dist {
    let probs = p
        .probs
        .iter()
        .flat_map(|a| r.probs.iter().map(move |b| a * b))
        .collect();
    Dist { probs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrumpingCheck {
    /// `p` versus `q` under `⪯_M` without a catalyst.
    pub base_relation: OrderRelation,
    /// `p ⊗ r ⪯_M q ⊗ r`.
    pub catalyzed: bool,
}

/// Verifies a supplied catalyst; it does not search for one.
pub fn trumping_check(p: &Dist, q: &Dist, catalyst: &Dist) -> Result<TrumpingCheck> {
    check_same_len(p, q)?;
    let base_relation = majorization_compare(p, q);
    let catalyzed = majorization_compare(&tensor(p, catalyst), &tensor(q, catalyst)).is_leq();
    Ok(TrumpingCheck {
        base_relation,
        catalyzed,
    })
}
