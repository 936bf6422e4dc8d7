//! Order-density predicates and the multi-utilities they yield.
//!
//! On a finite space every subset is countable, so "separable" reduces to
//! "has a dense subset" and the predicates below are plain pair scans:
//!
//! | kind               | for every             | some `z ∈ Z` with |
//! |--------------------|-----------------------|-------------------|
//! | order dense        | `x ≺ y`               | `x ≺ z ≺ y`       |
//! | Debreu dense       | `x ≺ y`               | `x ⪯ z ⪯ y`       |
//! | upper dense        | `x ⋈ y` (both orders) | `x ⋈ z ≺ y`       |
//! | Debreu upper dense | `x ⋈ y` (both orders) | `x ⋈ z ⪯ y`       |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monotones::{classify, MonotoneClass, MultiUtility, ValueTable};
use crate::order::{ElementSet, FinitePreorder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    OrderDense,
    DebreuDense,
    UpperDense,
    DebreuUpperDense,
}

impl DensityKind {
    pub const ALL: [DensityKind; 4] = [
        DensityKind::OrderDense,
        DensityKind::DebreuDense,
        DensityKind::UpperDense,
        DensityKind::DebreuUpperDense,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DensityKind::OrderDense => "order_dense",
            DensityKind::DebreuDense => "debreu_dense",
            DensityKind::UpperDense => "upper_dense",
            DensityKind::DebreuUpperDense => "debreu_upper_dense",
        }
    }
}

impl fmt::Display for DensityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DensityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        DensityKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown density kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: DensityKind,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub order_dense: bool,
    pub debreu_dense: bool,
    pub upper_dense: bool,
    pub debreu_upper_dense: bool,
    /// First failing pair of the first failing kind, in the order
    /// order, Debreu, upper, Debreu upper; pairs scanned row-major.
    pub first_violation: Option<Violation>,
}

impl DensityReport {
    pub fn holds(&self, kind: DensityKind) -> bool {
        match kind {
            DensityKind::OrderDense => self.order_dense,
            DensityKind::DebreuDense => self.debreu_dense,
            DensityKind::UpperDense => self.upper_dense,
            DensityKind::DebreuUpperDense => self.debreu_upper_dense,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn witnessed(p: &FinitePreorder, z: &ElementSet, kind: DensityKind, x: usize, y: usize) -> bool {
    z.iter().any(|w| match kind {
        DensityKind::OrderDense => p.lt(x, w) && p.lt(w, y),
        DensityKind::DebreuDense => p.leq(x, w) && p.leq(w, y),
        DensityKind::UpperDense => p.incomparable(x, w) && p.lt(w, y),
        DensityKind::DebreuUpperDense => p.incomparable(x, w) && p.leq(w, y),
    })
}

fn first_violation(
    p: &FinitePreorder,
    z: &ElementSet,
    kind: DensityKind,
) -> Option<(usize, usize)> {
    let n = p.len();
    let needs_witness = |x: usize, y: usize| match kind {
        DensityKind::OrderDense | DensityKind::DebreuDense => p.lt(x, y),
        DensityKind::UpperDense | DensityKind::DebreuUpperDense => p.incomparable(x, y),
    };
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| needs_witness(x, y) && !witnessed(p, z, kind, x, y))
}

pub fn is_dense(p: &FinitePreorder, z: &ElementSet, kind: DensityKind) -> Result<bool> {
    p.check_subset(z)?;
    Ok(first_violation(p, z, kind).is_none())
}

pub fn density_report(p: &FinitePreorder, z: &ElementSet) -> Result<DensityReport> {
    p.check_subset(z)?;
    let violations = DensityKind::ALL.map(|k| first_violation(p, z, k));
    let first = DensityKind::ALL
        .iter()
        .zip(&violations)
        .find_map(|(&kind, v)| v.map(|(x, y)| Violation { kind, x, y }));
    Ok(DensityReport {
        order_dense: violations[0].is_none(),
        debreu_dense: violations[1].is_none(),
        upper_dense: violations[2].is_none(),
        debreu_upper_dense: violations[3].is_none(),
        first_violation: first,
    })
}

/// `{χ_{i(d)}, χ_{r(d)}}_{d ∈ D}`, in ascending `d`. `D` must be Debreu
/// dense and Debreu upper dense.
pub fn multi_utility_from_dense(p: &FinitePreorder, dense: &ElementSet) -> Result<MultiUtility> {
    let report = density_report(p, dense)?;
    if !(report.debreu_dense && report.debreu_upper_dense) {
        return Err(Error::Precondition(format!(
            "set {:?} is not Debreu dense and Debreu upper dense",
            dense
        )));
    }
    let mut tables = Vec::with_capacity(2 * dense.len());
    for d in dense.iter() {
        tables.push(ValueTable::indicator(&p.up_set(d, false)?));
        tables.push(ValueTable::indicator(&p.up_set(d, true)?));
    }
    if tables.is_empty() {
        // D = ∅ passes only when there are no strict or incomparable pairs
        tables.push(ValueTable::constant(p.len(), crate::rational::int(0)));
    }
    MultiUtility::new(tables)
}

/// `{u} ∪ {χ_{i(d)}}_{d ∈ D}` for a strict monotone `u` and a Debreu upper
/// dense `D`.
pub fn multi_utility_from_strict_and_upper_dense(
    p: &FinitePreorder,
    u: &ValueTable,
    dense: &ElementSet,
) -> Result<MultiUtility> {
    classify(p, u)?.require(MonotoneClass::StrictMonotone)?;
    if !is_dense(p, dense, DensityKind::DebreuUpperDense)? {
        return Err(Error::Precondition(format!(
            "set {:?} is not Debreu upper dense",
            dense
        )));
    }
    let mut tables = vec![u.clone()];
    for d in dense.iter() {
        tables.push(ValueTable::indicator(&p.up_set(d, false)?));
    }
    MultiUtility::new(tables)
}

/// Greedy removal from `X` in descending index order. The result passes the
/// predicate and loses it when any single member is dropped. Fails when even
/// `X` does not pass.
pub fn greedy_minimal_dense(p: &FinitePreorder, kind: DensityKind) -> Result<ElementSet> {
    let mut z = ElementSet::full(p.len());
    if !is_dense(p, &z, kind)? {
        return Err(Error::Precondition(format!(
            "the whole ground set is not {kind}; no subset is"
        )));
    }
    for x in (0..p.len()).rev() {
        z.remove(x);
        if !is_dense(p, &z, kind)? {
            z.insert(x);
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotones::is_multi_utility;

    fn set(n: usize, m: &[usize]) -> ElementSet {
        ElementSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn whole_space_is_debreu_dense() {
        let p = FinitePreorder::from_relation_pairs(4, &[(0, 1), (2, 1), (1, 3)]).unwrap();
        let r = density_report(&p, &ElementSet::full(4)).unwrap();
        assert!(r.debreu_dense && r.debreu_upper_dense);
    }

    #[test]
    fn chain_with_middle_point() {
        let chain = FinitePreorder::chain(3);
        let r = density_report(&chain, &set(3, &[1])).unwrap();
        // (0,2) is fine via 1, (0,1) has nothing strictly between
        assert!(!r.order_dense);
        assert_eq!(
            r.first_violation,
            Some(Violation {
                kind: DensityKind::OrderDense,
                x: 0,
                y: 1
            })
        );
        assert!(r.debreu_dense);
    }

    #[test]
    fn antichain_without_witnesses() {
        let anti = FinitePreorder::antichain(2);
        let r = density_report(&anti, &set(2, &[])).unwrap();
        assert!(r.order_dense && r.debreu_dense);
        assert!(!r.upper_dense && !r.debreu_upper_dense);
        assert_eq!(
            r.first_violation,
            Some(Violation {
                kind: DensityKind::UpperDense,
                x: 0,
                y: 1
            })
        );
    }

    #[test]
    fn upper_density_is_checked_both_ways() {
        // 0 ⋈ 1, 2 ≺ 1, and 2 ⋈ 0: z = 2 witnesses 0 ⋈ 2 ⪯ 1 and 0 ⋈ 2 ⪯ 2,
        // so every pair with x < y passes; nothing sits below 0, so (1, 0) fails.
        let p = FinitePreorder::from_relation_pairs(3, &[(2, 1)]).unwrap();
        let z = set(3, &[2]);
        assert_eq!(
            first_violation(&p, &z, DensityKind::DebreuUpperDense),
            Some((1, 0))
        );
        assert!(!density_report(&p, &z).unwrap().debreu_upper_dense);
    }

    #[test]
    fn dense_multi_utility_examples() {
        let chain = FinitePreorder::chain(2);
        let m = multi_utility_from_dense(&chain, &ElementSet::full(2)).unwrap();
        assert_eq!(m.len(), 4);
        assert!(is_multi_utility(&chain, &m).unwrap().holds);

        let one = FinitePreorder::chain(1);
        let m = multi_utility_from_dense(&one, &ElementSet::full(1)).unwrap();
        assert_eq!(m.functions()[0], ValueTable::from_ints(&[1]));
        assert_eq!(m.functions()[1], ValueTable::from_ints(&[0]));
        assert!(is_multi_utility(&one, &m).unwrap().holds);

        let anti = FinitePreorder::antichain(2);
        assert!(matches!(
            multi_utility_from_dense(&anti, &set(2, &[])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn strict_plus_upper_dense_examples() {
        let chain = FinitePreorder::chain(3);
        let u = ValueTable::from_ints(&[0, 1, 2]);
        let m = multi_utility_from_strict_and_upper_dense(&chain, &u, &set(3, &[])).unwrap();
        assert_eq!(m.len(), 1);
        assert!(is_multi_utility(&chain, &m).unwrap().holds);

        let anti = FinitePreorder::antichain(2);
        let m = multi_utility_from_strict_and_upper_dense(
            &anti,
            &ValueTable::from_ints(&[0, 1]),
            &ElementSet::full(2),
        )
        .unwrap();
        assert_eq!(m.len(), 3);
        assert!(is_multi_utility(&anti, &m).unwrap().holds);

        assert!(multi_utility_from_strict_and_upper_dense(
            &chain,
            &ValueTable::from_ints(&[0, 0, 1]),
            &set(3, &[])
        )
        .is_err());
    }

    #[test]
    fn greedy_examples() {
        let chain = FinitePreorder::chain(3);
        let z = greedy_minimal_dense(&chain, DensityKind::DebreuDense).unwrap();
        assert_eq!(z, set(3, &[1]));

        let anti = FinitePreorder::antichain(3);
        let z = greedy_minimal_dense(&anti, DensityKind::DebreuUpperDense).unwrap();
        assert!(is_dense(&anti, &z, DensityKind::DebreuUpperDense).unwrap());
        for x in z.iter() {
            let mut smaller = z.clone();
            smaller.remove(x);
            assert!(!is_dense(&anti, &smaller, DensityKind::DebreuUpperDense).unwrap());
        }

        let one = FinitePreorder::chain(1);
        for kind in DensityKind::ALL {
            assert!(greedy_minimal_dense(&one, kind).unwrap().is_empty());
        }

        // 0 ≺ 1 has no strictly intermediate point at all
        assert!(greedy_minimal_dense(&FinitePreorder::chain(2), DensityKind::OrderDense).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!(
            "debreu-upper-dense".parse::<DensityKind>().unwrap(),
            DensityKind::DebreuUpperDense
        );
        assert!("dense".parse::<DensityKind>().is_err());
    }
}
