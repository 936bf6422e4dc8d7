//! Finite preordered spaces.
//!
//! A [`FinitePreorder`] lives on the index set `0..n`; the whole order is a
//! dense `n × n` boolean matrix so that every relation query is a lookup.

use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// How two elements of a preordered space relate. Exactly one variant
/// holds for any ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderRelation {
    Equivalent,
    StrictlyLess,
    StrictlyGreater,
    Incomparable,
}

impl OrderRelation {
    pub fn from_leq(x_leq_y: bool, y_leq_x: bool) -> Self {
        match (x_leq_y, y_leq_x) {
            (true, true) => OrderRelation::Equivalent,
            (true, false) => OrderRelation::StrictlyLess,
            (false, true) => OrderRelation::StrictlyGreater,
            (false, false) => OrderRelation::Incomparable,
        }
    }

    /// The relation seen from the other side of the pair.
    pub fn reverse(self) -> Self {
        match self {
            OrderRelation::StrictlyLess => OrderRelation::StrictlyGreater,
            OrderRelation::StrictlyGreater => OrderRelation::StrictlyLess,
            other => other,
        }
    }

    /// `x ⪯ y` holds.
    pub fn is_leq(self) -> bool {
        matches!(
            self,
            OrderRelation::StrictlyLess | OrderRelation::Equivalent
        )
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OrderRelation::Equivalent => "~",
            OrderRelation::StrictlyLess => "<",
            OrderRelation::StrictlyGreater => ">",
            OrderRelation::Incomparable => "><",
        }
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OrderRelation::Equivalent => "Equivalent",
            OrderRelation::StrictlyLess => "StrictlyLess",
            OrderRelation::StrictlyGreater => "StrictlyGreater",
            OrderRelation::Incomparable => "Incomparable",
        };
        f.write_str(name)
    }
}

/// A subset of the ground set `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = ElementSet::empty(n);
        for x in members {
            if x >= n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
            set.bits.insert(x);
        }
        Ok(set)
    }

    /// The subset whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = ElementSet::empty(n);
        for x in 0..n.min(64) {
            if mask >> x & 1 == 1 {
                set.bits.insert(x);
            }
        }
        set
    }

    pub fn ground_size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.set(x, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A reflexive, transitive relation on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePreorder {
    n: usize,
    leq: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FinitePreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePreorder")
            .field("n", &self.n)
            .field("pairs", &self.strict_and_equiv_pairs())
            .finish()
    }
}

impl FinitePreorder {
    /// The smallest preorder on `0..n` containing every pair `(x, y)`,
    /// read as `x ⪯ y`.
    pub fn from_relation_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
            leq[x * n + y] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        Ok(FinitePreorder {
            n,
            leq,
            labels: None,
        })
    }

    /// Builds the preorder induced by a predicate, closing it if needed.
    pub fn from_fn(n: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Self {
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && leq(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        Self::from_relation_pairs(n, &pairs).expect("indices in range by construction")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_fn(n, |_, _| false)
    }

    /// `0 ≺ 1 ≺ … ≺ n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn(n, |x, y| x <= y)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                n: self.n,
            })
        }
    }

    /// `x ⪯ y`. Panics on out-of-range indices; use [`relate`](Self::relate)
    /// for checked access.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    #[inline]
    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.leq(x, y) && !self.leq(y, x)
    }

    pub fn relate(&self, x: usize, y: usize) -> Result<OrderRelation> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok(self.relation(x, y))
    }

    #[inline]
    pub fn relation(&self, x: usize, y: usize) -> OrderRelation {
        OrderRelation::from_leq(self.leq(x, y), self.leq(y, x))
    }

    pub fn is_total(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| !self.incomparable(x, y)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| x == y || !self.equiv(x, y)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.leq(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| !self.leq(x, y) || (0..n).all(|z| !self.leq(y, z) || self.leq(x, z)))
        })
    }

    /// `i(x) = {y | x ⪯ y}`, or `r(x) = {y | x ≺ y}` when `strict`.
    pub fn up_set(&self, x: usize, strict: bool) -> Result<ElementSet> {
        self.check_index(x)?;
        let mut set = ElementSet::empty(self.n);
        for y in 0..self.n {
            let above = if strict {
                self.lt(x, y)
            } else {
                self.leq(x, y)
            };
            if above {
                set.insert(y);
            }
        }
        Ok(set)
    }

    /// The equivalence class `[x]`.
    pub fn class_of(&self, x: usize) -> ElementSet {
        let mut set = ElementSet::empty(self.n);
        for y in 0..self.n {
            if self.equiv(x, y) {
                set.insert(y);
            }
        }
        set
    }

    /// `x ∈ A ∧ x ⪯ y ⟹ y ∈ A`.
    pub fn is_increasing(&self, set: &ElementSet) -> bool {
        set.iter()
            .all(|x| (0..self.n).all(|y| !self.leq(x, y) || set.contains(y)))
    }

    /// Elements of `subset` with nothing in `subset` strictly above them.
    pub fn maximal_elements_in(&self, subset: &ElementSet) -> Result<ElementSet> {
        self.check_subset(subset)?;
        if subset.is_empty() {
            return Err(Error::EmptyDomain);
        }
        let mut out = ElementSet::empty(self.n);
        for x in subset.iter() {
            if !subset.iter().any(|y| self.lt(x, y)) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    pub fn check_subset(&self, subset: &ElementSet) -> Result<()> {
        if subset.ground_size() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: subset.ground_size(),
            });
        }
        Ok(())
    }

    /// Equivalence classes (ordered by smallest member) and the partial
    /// order they inherit.
    pub fn quotient(&self) -> Quotient {
        let mut class_index = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.n {
            if class_index[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (x..self.n).filter(|&y| self.equiv(x, y)).collect();
            for &m in &members {
                class_index[m] = id;
            }
            classes.push(members);
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let order = FinitePreorder::from_fn(reps.len(), |a, b| self.leq(reps[a], reps[b]));
        Quotient {
            classes,
            class_index,
            order,
        }
    }

    /// All pairs `x ≠ y` with `x ⪯ y`.
    pub fn strict_and_equiv_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.leq(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        pairs
    }

    /// Restriction to the listed elements, re-indexed in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Result<Self> {
        for &e in elements {
            self.check_index(e)?;
        }
        Ok(FinitePreorder::from_fn(elements.len(), |a, b| {
            self.leq(elements[a], elements[b])
        }))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PreorderJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PreorderJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        FinitePreorder::try_from(raw)
    }
}

/// Quotient `X/∼` of a preorder.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub classes: Vec<Vec<usize>>,
    /// Class id of every element.
    pub class_index: Vec<usize>,
    /// The induced (antisymmetric) order on class ids.
    pub order: FinitePreorder,
}

/// On-disk form: `{"n": int, "labels": [string]?, "pairs": [[int,int]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PreorderJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub pairs: Vec<(usize, usize)>,
}

impl From<&FinitePreorder> for PreorderJson {
    fn from(p: &FinitePreorder) -> Self {
        PreorderJson {
            n: p.n,
            labels: p.labels.clone(),
            pairs: p.strict_and_equiv_pairs(),
        }
    }
}

impl TryFrom<PreorderJson> for FinitePreorder {
    type Error = Error;

    fn try_from(raw: PreorderJson) -> Result<Self> {
        let p = FinitePreorder::from_relation_pairs(raw.n, &raw.pairs)?;
        match raw.labels {
            Some(labels) => p.with_labels(labels),
            None => Ok(p),
        }
    }
}

impl Serialize for FinitePreorder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PreorderJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePreorder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PreorderJson::deserialize(d)?;
        FinitePreorder::try_from(raw).map_err(serde::de::Error::custom)
    }
}

// The space X = [0,1] ∪ [2,3] where x ⪯ y iff x = y, or x ∈ [0,1],
// y ∈ [2,3] and y ≠ x + 2. It has an injective monotone (the identity) but
// no countable multi-utility; a finite sample can only illustrate the
// relation, not that second fact.

fn in_interval_domain(x: &Rational) -> bool {
    in_lower_interval(x) || in_upper_interval(x)
}

fn in_lower_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

fn in_upper_interval(x: &Rational) -> bool {
    *x >= rational::int(2) && *x <= rational::int(3)
}

fn interval_leq(x: &Rational, y: &Rational) -> bool {
    x == y || (in_lower_interval(x) && in_upper_interval(y) && *y != x + rational::int(2))
}

fn check_interval_domain(x: &Rational) -> Result<()> {
    if in_interval_domain(x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!(
            "{} is outside [0,1] ∪ [2,3]",
            rational::format(x)
        )))
    }
}

pub fn interval_preorder_relate(x: &Rational, y: &Rational) -> Result<OrderRelation> {
    check_interval_domain(x)?;
    check_interval_domain(y)?;
    Ok(OrderRelation::from_leq(
        interval_leq(x, y),
        interval_leq(y, x),
    ))
}

/// The interval preorder restricted to finitely many distinct points.
pub fn sample_interval_preorder(points: &[Rational]) -> Result<FinitePreorder> {
    for (i, x) in points.iter().enumerate() {
        check_interval_domain(x)?;
        if points[..i].contains(x) {
            return Err(Error::Precondition(format!(
                "duplicate sample point {}",
                rational::format(x)
            )));
        }
    }
    let p = FinitePreorder::from_fn(points.len(), |a, b| interval_leq(&points[a], &points[b]));
    debug_assert!((0..points.len())
        .all(|a| (0..points.len()).all(|b| p.leq(a, b) == interval_leq(&points[a], &points[b]))));
    Ok(p)
}
