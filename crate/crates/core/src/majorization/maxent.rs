//! Maximal elements versus entropy maximizers on a linear constraint.

use std::io::Write;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{decreasing_rearrangement, shannon_entropy, sorted_partial_sums, Dist, EntropyUnit};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Two entropies within this distance count as tied for the maximum.
pub const ARGMAX_TOLERANCE: f64 = 1e-12;

const MAX_GRID_POINTS: usize = 10_000_000;

/// An energy (or any observable) `E: Ω → ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyFunction {
    #[serde(with = "rational::serde_pq::vec")]
    pub values: Vec<Rational>,
}

impl EnergyFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        EnergyFunction { values }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(EnergyFunction::new(rational::parse_list(text)?))
    }

    /// `⟨E⟩_p = Σ pᵢ E(xᵢ)`.
    pub fn expectation(&self, p: &Dist) -> Result<Rational> {
        if p.len() != self.values.len() {
            return Err(Error::DimensionMismatch {
                expected: self.values.len(),
                got: p.len(),
            });
        }
        Ok(p.probs().iter().zip(&self.values).map(|(a, b)| a * b).sum())
    }

    pub fn min(&self) -> Option<&Rational> {
        self.values.iter().min()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.values.iter().max()
    }
}

/// Exact samples of `{p ∈ ℙ₃ | ⟨E⟩_p = c}`.
///
/// The segment is parametrized by the coordinate `p_sweep`, the lowest-energy
/// coordinate that actually varies along it. Samples sit at the two
/// endpoints and at every multiple of `step` strictly between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGrid {
    pub sweep: usize,
    pub params: Vec<Rational>,
    pub dists: Vec<Dist>,
}

impl ConstraintGrid {
    pub fn len(&self) -> usize {
        self.dists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dists.is_empty()
    }
}

fn unit_vector(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 3];
    v[i] = rational::int(1);
    v
}

/// Points where the constraint plane meets the edges of the simplex.
fn edge_points(e: &[Rational], c: &Rational) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut push = |v: Vec<Rational>| {
        if !out.contains(&v) {
            out.push(v);
        }
    };
    for i in 0..3 {
        for j in i + 1..3 {
            if e[i] == e[j] {
                if *c == e[i] {
                    push(unit_vector(i));
                    push(unit_vector(j));
                }
                continue;
            }
            // λ e_i + (1 − λ) e_j
            let lambda = (c - &e[j]) / (&e[i] - &e[j]);
            if lambda.is_negative() || lambda > rational::int(1) {
                continue;
            }
            let mut v = vec![Rational::zero(); 3];
            v[j] = rational::int(1) - &lambda;
            v[i] = lambda;
            push(v);
        }
    }
    out
}

pub fn constraint_grid(
    energy: &EnergyFunction,
    c: &Rational,
    step: &Rational,
) -> Result<ConstraintGrid> {
    let e = &energy.values;
    if e.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: e.len(),
        });
    }
    if !step.is_positive() {
        return Err(Error::OutOfDomain(format!(
            "grid step {} must be positive",
            rational::format(step)
        )));
    }
    let (lo, hi) = (
        energy.min().expect("three values"),
        energy.max().expect("three values"),
    );
    if c < lo || c > hi {
        return Err(Error::Infeasible(format!(
            "level {} outside [{}, {}]",
            rational::format(c),
            rational::format(lo),
            rational::format(hi)
        )));
    }
    if lo == hi {
        return Err(Error::Precondition(
            "constant energy: the constraint does not cut the simplex".into(),
        ));
    }
    let corners = edge_points(e, c);
    let mut by_energy: Vec<usize> = (0..3).collect();
    by_energy.sort_by(|&a, &b| e[a].cmp(&e[b]).then(a.cmp(&b)));
    let sweep = by_energy
        .iter()
        .copied()
        .find(|&k| corners.iter().any(|v| v[k] != corners[0][k]))
        .unwrap_or(by_energy[0]);
    let start = corners
        .iter()
        .min_by(|a, b| a[sweep].cmp(&b[sweep]))
        .expect("feasible")
        .clone();
    let end = corners
        .iter()
        .max_by(|a, b| a[sweep].cmp(&b[sweep]))
        .expect("feasible")
        .clone();
    let (a, b) = (start[sweep].clone(), end[sweep].clone());

    let mut params = vec![a.clone()];
    if b > a {
        let mut k = (&a / step).floor() + rational::int(1);
        loop {
            let t = &k * step;
            if t >= b {
                break;
            }
            params.push(t);
            if params.len() > MAX_GRID_POINTS {
                return Err(Error::TooLarge {
                    n: params.len(),
                    limit: MAX_GRID_POINTS,
                });
            }
            k += rational::int(1);
        }
        params.push(b.clone());
    }

    let span = &b - &a;
    let dists = params
        .iter()
        .map(|t| {
            let probs: Vec<Rational> = if span.is_zero() {
                start.clone()
            } else {
                let w = (t - &a) / &span;
                (0..3)
                    .map(|i| &start[i] + &w * (&end[i] - &start[i]))
                    .collect()
            };
            let d = Dist::from_parts_unchecked(probs);
            debug_assert_eq!(energy.expectation(&d).as_ref(), Ok(c));
            d
        })
        .collect();
    Ok(ConstraintGrid {
        sweep,
        params,
        dists,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRow {
    pub t: Rational,
    pub dist: Dist,
    pub entropy: f64,
    pub is_maximal: bool,
    pub is_entropy_argmax: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxentReport {
    #[serde(with = "rational::serde_pq")]
    pub constraint_level: Rational,
    #[serde(with = "rational::serde_pq")]
    pub grid_step: Rational,
    pub grid_size: usize,
    /// Index of the coordinate used as the grid parameter.
    pub sweep: usize,
    pub max_entropy: f64,
    pub maximal_set: Vec<Dist>,
    pub entropy_argmax: Vec<Dist>,
    /// Maximal points not equivalent to any entropy maximizer.
    pub missed: Vec<Dist>,
    #[serde(skip)]
    pub rows: Vec<GridRow>,
}

#[cfg(feature = "parallel")]
fn map_indices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indices<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// `true` when `a ≺_U b`, given their sorted partial sums.
fn strictly_below(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a != b
}

pub fn maxent_audit(
    energy: &EnergyFunction,
    c: &Rational,
    step: &Rational,
) -> Result<MaxentReport> {
    let grid = constraint_grid(energy, c, step)?;
    let n = grid.len();
    let sums: Vec<Vec<Rational>> = map_indices(n, |i| sorted_partial_sums(grid.dists[i].probs()));
    let entropies: Vec<f64> = map_indices(n, |i| shannon_entropy(&grid.dists[i]));
    let maximal: Vec<bool> =
        map_indices(n, |i| !(0..n).any(|j| strictly_below(&sums[i], &sums[j])));
    let max_entropy = entropies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax: Vec<bool> = entropies
        .iter()
        .map(|&h| max_entropy - h <= ARGMAX_TOLERANCE)
        .collect();

    let pick = |flags: &[bool]| -> Vec<Dist> {
        flags
            .iter()
            .zip(&grid.dists)
            .filter(|(&f, _)| f)
            .map(|(_, d)| d.clone())
            .collect()
    };
    let maximal_set = pick(&maximal);
    let entropy_argmax = pick(&argmax);
    let argmax_classes: Vec<Dist> = entropy_argmax
        .iter()
        .map(decreasing_rearrangement)
        .collect();
    let missed = maximal_set
        .iter()
        .filter(|d| !argmax_classes.contains(&decreasing_rearrangement(d)))
        .cloned()
        .collect();

    let rows = (0..n)
        .map(|i| GridRow {
            t: grid.params[i].clone(),
            dist: grid.dists[i].clone(),
            entropy: entropies[i],
            is_maximal: maximal[i],
            is_entropy_argmax: argmax[i],
        })
        .collect();

    Ok(MaxentReport {
        constraint_level: c.clone(),
        grid_step: step.clone(),
        grid_size: n,
        sweep: grid.sweep,
        max_entropy,
        maximal_set,
        entropy_argmax,
        missed,
        rows,
    })
}

impl MaxentReport {
    /// One row per grid point: `t, p1, p2, p3, entropy, is_maximal,
    /// is_entropy_argmax`. Probabilities and `t` are exact `p/q` strings.
    pub fn write_csv<W: Write>(&self, out: W, unit: EntropyUnit) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "t",
            "p1",
            "p2",
            "p3",
            "entropy",
            "is_maximal",
            "is_entropy_argmax",
        ])?;
        let scale = match unit {
            EntropyUnit::Nats => 1.0,
            EntropyUnit::Bits => std::f64::consts::LN_2,
        };
        for row in &self.rows {
            let mut record = vec![rational::format(&row.t)];
            record.extend(row.dist.probs().iter().map(rational::format));
            record.push(format!("{:.12}", row.entropy / scale));
            record.push(row.is_maximal.to_string());
            record.push(row.is_entropy_argmax.to_string());
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
