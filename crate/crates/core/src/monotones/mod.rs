//! Real-valued functions on finite preordered spaces.
//!
//! Functions are exact rational [`ValueTable`]s. Besides classifying a table
//! (monotone, strict, injective, utility) the submodules turn one kind of
//! representation into another:
//!
//! * [`family`]: increasing-set families and the geometric aggregate
//!   `c(x) = Σ rⁿ χ_{Aₙ}(x)`, plus threshold families read off functions;
//! * [`construct`]: injective monotones and injective multi-utilities built
//!   from multi-utilities, from strict monotones by elimination, and from a
//!   single injective monotone;
//! * [`represent`]: exhaustive argmax-versus-maximal-elements checks.

pub mod construct;
pub mod family;
pub mod represent;

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::{ElementSet, FinitePreorder};
use crate::rational::{self, Rational};

pub use construct::{
    default_ratio, eliminate_noninjective, injective_from_multi_utility,
    injective_multi_utility_from_injective, injective_multi_utility_swap, non_injective_set,
    rescale_to_unit, DEFAULT_RATIO,
};
pub use family::{
    check_separating, first_divergence, geometric_aggregate, separating_family_from_monotone,
    thresholds_family, Divergence, IncreasingFamily, Separation,
};
pub use represent::{verify_representation, Representation, EXHAUSTIVE_LIMIT};

/// An exact rational value for every element of a ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValueTable {
    #[serde(with = "rational::serde_pq::vec")]
    pub values: Vec<Rational>,
}

impl ValueTable {
    pub fn new(values: Vec<Rational>) -> Self {
        ValueTable { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        ValueTable::new(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        ValueTable::new(vec![value; n])
    }

    /// `χ_A` as a table.
    pub fn indicator(set: &ElementSet) -> Self {
        ValueTable::new(
            (0..set.ground_size())
                .map(|x| rational::int(set.contains(x) as i64))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        if self.values.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                got: self.values.len(),
            })
        }
    }

    /// Distinct values in ascending order.
    pub fn distinct_sorted(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, other: &ValueTable) -> ValueTable {
        ValueTable::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The finest class a function belongs to. Classes are nested:
/// `Utility ⟹ InjectiveMonotone ⟹ StrictMonotone ⟹ Monotone`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MonotoneClass {
    NotMonotone,
    Monotone,
    StrictMonotone,
    InjectiveMonotone,
    Utility,
}

impl MonotoneClass {
    pub fn name(self) -> &'static str {
        match self {
            MonotoneClass::NotMonotone => "NotMonotone",
            MonotoneClass::Monotone => "Monotone",
            MonotoneClass::StrictMonotone => "StrictMonotone",
            MonotoneClass::InjectiveMonotone => "InjectiveMonotone",
            MonotoneClass::Utility => "Utility",
        }
    }

    pub fn is_strict(self) -> bool {
        self >= MonotoneClass::StrictMonotone
    }

    pub fn is_injective(self) -> bool {
        self >= MonotoneClass::InjectiveMonotone
    }

    pub(crate) fn require(self, required: MonotoneClass) -> Result<()> {
        if self >= required {
            Ok(())
        } else {
            Err(Error::WrongClass {
                required: required.name(),
                actual: self.name(),
            })
        }
    }
}

impl fmt::Display for MonotoneClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Finest class of `f` on `P`, by a scan over all ordered pairs.
pub fn classify(p: &FinitePreorder, f: &ValueTable) -> Result<MonotoneClass> {
    f.check_dimension(p.len())?;
    let n = p.len();
    let (mut strict, mut injective, mut utility) = (true, true, true);
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (f.get(x), f.get(y));
            if p.leq(x, y) {
                if fx > fy {
                    return Ok(MonotoneClass::NotMonotone);
                }
                if !p.leq(y, x) && fx == fy {
                    strict = false;
                }
            } else if fx <= fy {
                utility = false;
            }
            if fx == fy && !p.equiv(x, y) {
                injective = false;
            }
        }
    }
    Ok(if utility {
        MonotoneClass::Utility
    } else if injective {
        MonotoneClass::InjectiveMonotone
    } else if strict {
        MonotoneClass::StrictMonotone
    } else {
        MonotoneClass::Monotone
    })
}

/// A nonempty ordered family of functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ValueTable>", into = "Vec<ValueTable>")]
pub struct MultiUtility {
    functions: Vec<ValueTable>,
}

impl MultiUtility {
    pub fn new(functions: Vec<ValueTable>) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let n = functions[0].len();
        for f in &functions {
            f.check_dimension(n)?;
        }
        Ok(MultiUtility { functions })
    }

    pub fn functions(&self) -> &[ValueTable] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Size of the ground set every member is defined on.
    pub fn ground_size(&self) -> usize {
        self.functions[0].len()
    }

    /// `(χ_{i(x)})_{x ∈ X}`, a multi-utility of every preorder.
    pub fn up_set_indicators(p: &FinitePreorder) -> Result<Self> {
        let tables = (0..p.len())
            .map(|x| p.up_set(x, false).map(|s| ValueTable::indicator(&s)))
            .collect::<Result<Vec<_>>>()?;
        if tables.is_empty() {
            // empty ground set; a single empty table keeps the family nonempty
            return MultiUtility::new(vec![ValueTable::new(vec![])]);
        }
        MultiUtility::new(tables)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<Vec<ValueTable>> for MultiUtility {
    type Error = Error;
    fn try_from(v: Vec<ValueTable>) -> Result<Self> {
        MultiUtility::new(v)
    }
}

impl From<MultiUtility> for Vec<ValueTable> {
    fn from(m: MultiUtility) -> Self {
        m.functions
    }
}

/// Outcome of a multi-utility scan: `counterexample` is the first ordered
/// pair `(x, y)` (row-major) where `x ⪯ y ⟺ ∀u: u(x) ≤ u(y)` fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiUtilityCheck {
    pub holds: bool,
    pub counterexample: Option<(usize, usize)>,
}

pub fn is_multi_utility(p: &FinitePreorder, family: &MultiUtility) -> Result<MultiUtilityCheck> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for f in family.functions() {
        f.check_dimension(p.len())?;
    }
    for x in 0..p.len() {
        for y in 0..p.len() {
            let all_leq = family.functions().iter().all(|u| u.get(x) <= u.get(y));
            if all_leq != p.leq(x, y) {
                return Ok(MultiUtilityCheck {
                    holds: false,
                    counterexample: Some((x, y)),
                });
            }
        }
    }
    Ok(MultiUtilityCheck {
        holds: true,
        counterexample: None,
    })
}

pub(crate) fn require_multi_utility(p: &FinitePreorder, family: &MultiUtility) -> Result<()> {
    let check = is_multi_utility(p, family)?;
    match check.counterexample {
        None => Ok(()),
        Some((x, y)) => Err(Error::NotMultiUtility { x, y }),
    }
}

pub(crate) fn check_ratio(r: &Rational, upper_half: bool) -> Result<()> {
    let upper = if upper_half {
        rational::frac(1, 2)
    } else {
        Rational::one()
    };
    if *r > rational::int(0) && *r < upper {
        Ok(())
    } else {
        Err(Error::BadRatio(
            rational::format(r),
            if upper_half { "(0, 1/2)" } else { "(0, 1)" },
        ))
    }
}
