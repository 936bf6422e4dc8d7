//! Browser bindings for the demo page in `www/`.
//!
//! Each operation has a plain Rust function returning a JSON string (tested
//! natively) and a `#[wasm_bindgen]` wrapper that turns errors into JS
//! exceptions.

use ordermono::majorization::{
    self, equal_entropy_incomparable_pair, lorenz_utilities, maxent_audit, shannon_entropy_in,
    trumping_check, uncertainty_compare, EnergyFunction, EntropyUnit,
};
use ordermono::rational::{self, Rational};
use ordermono::{Dist, OrderRelation};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest grid the page will audit; the maximality check is quadratic.
pub const MAX_POINTS: usize = 5000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn probs(d: &Dist) -> Vec<String> {
    d.probs().iter().map(rational::format).collect()
}

fn relation(r: OrderRelation) -> Value {
    let symbol = match r {
        OrderRelation::Equivalent => "∼",
        OrderRelation::StrictlyLess => "≺",
        OrderRelation::StrictlyGreater => "≻",
        OrderRelation::Incomparable => "⋈",
    };
    json!({ "relation": format!("{r:?}"), "symbol": symbol })
}

fn unit(bits: bool) -> EntropyUnit {
    if bits {
        EntropyUnit::Bits
    } else {
        EntropyUnit::Nats
    }
}

/// Lorenz curve of `p`: 0 followed by the partial sums of its decreasing
/// rearrangement.
fn lorenz_curve(p: &Dist) -> Vec<f64> {
    std::iter::once(0.0)
        .chain(lorenz_utilities(p).iter().map(|u| -rational::to_f64(u)))
        .chain(std::iter::once(1.0))
        .collect()
}

/// Every grid point on `⟨E⟩ = level` with its entropy and flags.
pub fn audit(energy: &str, level: &str, step: &str, bits: bool) -> Result<String, String> {
    let energy = EnergyFunction::parse(energy).map_err(err)?;
    let level: Rational = rational::parse(level).map_err(err)?;
    let step: Rational = rational::parse(step).map_err(err)?;
    let size = majorization::constraint_grid(&energy, &level, &step)
        .map_err(err)?
        .len();
    if size > MAX_POINTS {
        return Err(format!(
            "{size} grid points; use a coarser step (at most {MAX_POINTS})"
        ));
    }
    let report = maxent_audit(&energy, &level, &step).map_err(err)?;
    let scale = if bits { std::f64::consts::LN_2 } else { 1.0 };
    let points: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "t": rational::format(&row.t),
                "probs": probs(&row.dist),
                "xy": row.dist.to_f64(),
                "entropy": row.entropy / scale,
                "maximal": row.is_maximal,
                "argmax": row.is_entropy_argmax,
                "missed": report.missed.contains(&row.dist),
            })
        })
        .collect();
    Ok(json!({
        "grid_size": report.grid_size,
        "max_entropy": report.max_entropy / scale,
        "maximal_count": report.maximal_set.len(),
        "missed_count": report.missed.len(),
        "unit": unit(bits).name(),
        "points": points,
    })
    .to_string())
}

/// Uncertainty relation of `p` and `q` with their Lorenz curves, and the
/// catalysed comparison when `catalyst` is non-empty.
pub fn compare(p: &str, q: &str, catalyst: &str, bits: bool) -> Result<String, String> {
    let p = Dist::parse(p).map_err(err)?;
    let q = Dist::parse(q).map_err(err)?;
    let rel = uncertainty_compare(&p, &q).map_err(err)?;
    let trumping = if catalyst.trim().is_empty() {
        Value::Null
    } else {
        let r = Dist::parse(catalyst).map_err(err)?;
        let check = trumping_check(&p, &q, &r).map_err(err)?;
        json!({ "base": relation(check.base_relation), "catalyzed": check.catalyzed })
    };
    Ok(json!({
        "relation": relation(rel),
        "lorenz_p": lorenz_curve(&p),
        "lorenz_q": lorenz_curve(&q),
        "entropy_p": shannon_entropy_in(&p, unit(bits)),
        "entropy_q": shannon_entropy_in(&q, unit(bits)),
        "trumping": trumping,
    })
    .to_string())
}

/// Two incomparable distributions whose entropies (in nats) are within
/// `tol` of `c`.
pub fn equal_entropy(c: f64, n: usize, tol: f64) -> Result<String, String> {
    let pair = equal_entropy_incomparable_pair(c, n, tol).map_err(err)?;
    let rel = uncertainty_compare(&pair.p, &pair.q).map_err(err)?;
    Ok(json!({
        "p": probs(&pair.p),
        "q": probs(&pair.q),
        "entropy_p": pair.entropy_p,
        "entropy_q": pair.entropy_q,
        "relation": relation(rel),
        "lorenz_p": lorenz_curve(&pair.p),
        "lorenz_q": lorenz_curve(&pair.q),
    })
    .to_string())
}

#[wasm_bindgen(js_name = maxentAudit)]
pub fn maxent_audit_js(
    energy: &str,
    level: &str,
    step: &str,
    bits: bool,
) -> Result<String, JsValue> {
    audit(energy, level, step, bits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = compareDistributions)]
pub fn compare_js(p: &str, q: &str, catalyst: &str, bits: bool) -> Result<String, JsValue> {
    compare(p, q, catalyst, bits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = equalEntropyPair)]
pub fn equal_entropy_js(c: f64, n: usize, tol: f64) -> Result<String, JsValue> {
    equal_entropy(c, n, tol).map_err(|e| JsValue::from_str(&e))
}
