//! Explicit witnesses for density and incomparability claims about `⪯_U`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{
    decreasing_rearrangement, entropy_of, shannon_entropy, sorted_partial_sums,
    uncertainty_compare, Dist,
};
use crate::error::{Error, Result};
use crate::order::OrderRelation;
use crate::rational::{self, Rational};

fn verify(holds: bool, what: impl FnOnce() -> String) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::Verification(what()))
    }
}

/// Rational `z` with `x ⋈ z ≺_U y`, for incomparable `x` and `y`.
///
/// With `S` the sorted partial sums, pick `m` where `S_x(m) > S_y(m)` and let
/// `k` be the last positive entry of `y↓`. For `i < k` choose
/// `εᵢ ≤ εᵢ₋₁` with `Σ_{j≤i} εⱼ < min(y_k, S_x(m) − S_y(m))`, put
/// `zᵢ = yᵢ↓ + εᵢ/2` and give the rest to `z_k`. Then `z` is a little more
/// concentrated than `y` everywhere, but still less than `x` at `m`.
pub fn upper_dense_witness(x: &Dist, y: &Dist) -> Result<Dist> {
    let rel = uncertainty_compare(x, y)?;
    if rel != OrderRelation::Incomparable {
        return Err(Error::Precondition(format!(
            "arguments must be incomparable, got {}",
            rel.symbol()
        )));
    }
    let sx = sorted_partial_sums(x.probs());
    let sy = sorted_partial_sums(y.probs());
    let m = (0..sx.len())
        .find(|&i| sx[i] > sy[i])
        .expect("incomparable pairs cross");
    let gap = &sx[m] - &sy[m];
    let yd = decreasing_rearrangement(y);
    let yd = yd.probs();
    let k = yd
        .iter()
        .rposition(|v| v.is_positive())
        .expect("distribution has mass");

    let mut z = yd.to_vec();
    let budget = if yd[k] < gap { yd[k].clone() } else { gap };
    let mut spent = Rational::zero();
    let mut prev: Option<Rational> = None;
    for zi in z.iter_mut().take(k) {
        let half_room = (&budget - &spent) / rational::int(2);
        let eps = match prev {
            Some(p) if p < half_room => p,
            _ => half_room,
        };
        *zi += &eps / rational::int(2);
        spent += &eps;
        prev = Some(eps);
    }
    let head: Rational = z[..k].iter().sum();
    z[k] = rational::int(1) - head;
    for v in z.iter_mut().skip(k + 1) {
        *v = Rational::zero();
    }
    let z = Dist::new(z)?;

    verify(
        uncertainty_compare(x, &z)? == OrderRelation::Incomparable,
        || format!("witness {z} is comparable with {x}"),
    )?;
    verify(
        uncertainty_compare(&z, y)? == OrderRelation::StrictlyLess,
        || format!("witness {z} is not strictly below {y}"),
    )?;
    Ok(z)
}

/// `r = (s, 1 − s)` with `s` the midpoint of `q₁↓` and `p₁↓`, so that
/// `p ≺_U r ≺_U q`.
pub fn order_dense_witness_dim2(p: &Dist, q: &Dist) -> Result<Dist> {
    for d in [p, q] {
        if d.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: d.len(),
            });
        }
    }
    let rel = uncertainty_compare(p, q)?;
    if rel != OrderRelation::StrictlyLess {
        return Err(Error::Precondition(format!(
            "need p ≺ q strictly, got p {} q",
            rel.symbol()
        )));
    }
    let p1 = decreasing_rearrangement(p).probs()[0].clone();
    let q1 = decreasing_rearrangement(q).probs()[0].clone();
    let s = rational::midpoint(&q1, &p1);
    let r = Dist::new(vec![s.clone(), rational::int(1) - s])?;
    verify(
        uncertainty_compare(p, &r)? == OrderRelation::StrictlyLess
            && uncertainty_compare(&r, q)? == OrderRelation::StrictlyLess,
        || format!("{r} does not sit strictly between {p} and {q}"),
    )?;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualEntropyOptions {
    pub max_iterations: usize,
    /// Denominator used to round the float solution to a rational.
    pub denominator: i64,
}

impl Default for EqualEntropyOptions {
    fn default() -> Self {
        EqualEntropyOptions {
            max_iterations: 200,
            denominator: 1_000_000_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualEntropyPair {
    pub p: Dist,
    pub q: Dist,
    pub entropy_p: f64,
    pub entropy_q: f64,
    #[serde(with = "rational::serde_pq")]
    pub t_p: Rational,
    #[serde(with = "rational::serde_pq")]
    pub t_q: Rational,
}

/// Parameter pairs `(t, t′)` tried in turn.
const T_CHOICES: [(i64, i64, i64, i64); 5] = [
    (1, 3, 2, 3),
    (1, 4, 3, 4),
    (0, 1, 1, 1),
    (1, 5, 4, 5),
    (1, 2, 1, 1),
];

/// Smallest `s ∈ [0, 1]` (to bisection accuracy) with `g(s) ≥ target`, for
/// nondecreasing `g` with `g(0) ≤ target ≤ g(1)`.
fn bisect(g: impl Fn(f64) -> f64, target: f64, max_iterations: usize) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..max_iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if (g(lo) - target).abs() <= (g(hi) - target).abs() {
        lo
    } else {
        hi
    }
}

fn round_dist(v: &[f64], denominator: i64) -> Result<Dist> {
    let mut probs: Vec<Rational> = v[..v.len() - 1]
        .iter()
        .map(|&x| rational::round_to_denominator(x, denominator))
        .collect();
    let head: Rational = probs.iter().sum();
    probs.push(rational::int(1) - head);
    Dist::new(probs)
}

/// Two incomparable distributions on `n ≥ 3` outcomes whose entropies both
/// lie within `tol` of `c ∈ (0, ln n)`.
///
/// A point `r` on the segment from `e₀` to the midpoint of `e₀` and `e₁` has
/// entropy `c′ = min(c, ln 2)/2 < c`. For each `t`, the segment from
/// `r_t = (1 − t)e₀ + t·r` to the uniform distribution crosses the level
/// `c` exactly once; distinct `t` give distinct, hence incomparable,
/// points of equal entropy.
pub fn equal_entropy_incomparable_pair(c: f64, n: usize, tol: f64) -> Result<EqualEntropyPair> {
    equal_entropy_incomparable_pair_with(c, n, tol, EqualEntropyOptions::default())
}

pub fn equal_entropy_incomparable_pair_with(
    c: f64,
    n: usize,
    tol: f64,
    options: EqualEntropyOptions,
) -> Result<EqualEntropyPair> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "need at least 3 outcomes, got {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    if !(c > 0.0 && c < ln_n) {
        return Err(Error::OutOfDomain(format!(
            "entropy level {c} outside (0, ln {n})"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfDomain(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let c_low = c.min(std::f64::consts::LN_2) / 2.0;
    let edge = |s: f64| {
        let mut v = vec![0.0; n];
        v[0] = 1.0 - s / 2.0;
        v[1] = s / 2.0;
        v
    };
    let s = bisect(|s| entropy_of(&edge(s)), c_low, options.max_iterations);
    let r = edge(s);
    let uniform = 1.0 / n as f64;

    let point_on_line = |t: f64| -> Result<(Dist, f64)> {
        let base: Vec<f64> = (0..n)
            .map(|i| (1.0 - t) * if i == 0 { 1.0 } else { 0.0 } + t * r[i])
            .collect();
        let at = |lambda: f64| -> Vec<f64> {
            base.iter()
                .map(|b| (1.0 - lambda) * b + lambda * uniform)
                .collect()
        };
        let lambda = bisect(|l| entropy_of(&at(l)), c, options.max_iterations);
        let d = round_dist(&at(lambda), options.denominator)?;
        let h = shannon_entropy(&d);
        if (h - c).abs() > tol {
            return Err(Error::NoConvergence(format!(
                "entropy {h} misses level {c} by more than {tol} after {} iterations",
                options.max_iterations
            )));
        }
        Ok((d, h))
    };

    for &(a, b, a2, b2) in T_CHOICES.iter() {
        let (t_p, t_q) = (rational::frac(a, b), rational::frac(a2, b2));
        let (p, entropy_p) = point_on_line(rational::to_f64(&t_p))?;
        let (q, entropy_q) = point_on_line(rational::to_f64(&t_q))?;
        if uncertainty_compare(&p, &q)? == OrderRelation::Incomparable {
            return Ok(EqualEntropyPair {
                p,
                q,
                entropy_p,
                entropy_q,
                t_p,
                t_q,
            });
        }
    }
    Err(Error::NoConvergence(format!(
        "no incomparable pair at entropy {c} among {} parameter choices",
        T_CHOICES.len()
    )))
}
