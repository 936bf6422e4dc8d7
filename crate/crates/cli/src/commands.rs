use std::fs;
use std::path::Path;

use ordermono::majorization::{
    self, equal_entropy_incomparable_pair, lorenz_preorder, maxent_audit, order_dense_witness_dim2,
    random_comparable_pair, shannon_entropy_in, trumping_check, uncertainty_compare,
    upper_dense_witness, Dist, EnergyFunction, EntropyUnit,
};
use ordermono::monotones::{
    classify, eliminate_noninjective, injective_from_multi_utility,
    injective_multi_utility_from_injective, injective_multi_utility_swap, is_multi_utility,
    non_injective_set, verify_representation, MultiUtility, ValueTable, EXHAUSTIVE_LIMIT,
};
use ordermono::order::{interval_preorder_relate, ElementSet, FinitePreorder, OrderRelation};
use ordermono::rational::{self, Rational};
use ordermono::separability::{
    density_report, greedy_minimal_dense, multi_utility_from_dense,
    multi_utility_from_strict_and_upper_dense,
};
use ordermono::{Error, Result};
use serde_json::{json, Value};

use crate::{
    parse_indices, BuildMultiArgs, Cli, Command, MultiMethod, RelateCommand, WitnessCommand,
};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_preorder(path: &Path) -> Result<FinitePreorder> {
    FinitePreorder::from_json(&read(path)?)
}

fn load_function(path: &Path, n: usize) -> Result<ValueTable> {
    let f = ValueTable::from_json(&read(path)?)?;
    f.check_dimension(n)?;
    Ok(f)
}

fn load_multi(path: &Path, n: usize) -> Result<MultiUtility> {
    let u = MultiUtility::from_json(&read(path)?)?;
    if u.ground_size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.ground_size(),
        });
    }
    Ok(u)
}

fn subset(n: usize, text: Option<&str>) -> Result<ElementSet> {
    match text {
        None => Ok(ElementSet::full(n)),
        Some(s) => ElementSet::from_members(n, parse_indices(s)?),
    }
}

fn dist(text: &str) -> Result<Dist> {
    Dist::parse(text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn pq(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn relation_json(rel: OrderRelation) -> Value {
    json!({ "relation": to_value(&rel), "symbol": rel.symbol() })
}

/// Embeds `payload` in the report, or writes it to `out` and records the path.
fn emit(report: &mut Value, key: &str, payload: Value, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            write(
                path,
                &serde_json::to_string_pretty(&payload).expect("serializable"),
            )?;
            report[key] = json!({ "written_to": path.display().to_string() });
        }
        None => report[key] = payload,
    }
    Ok(())
}

fn verify(holds: bool, what: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(Error::Verification(what.to_string()))
    }
}

pub fn run(cli: &Cli, seed: u64) -> Result<String> {
    let unit = if cli.bits {
        EntropyUnit::Bits
    } else {
        EntropyUnit::Nats
    };
    let report = match &cli.command {
        Command::Classify { preorder, function } => {
            let p = load_preorder(preorder)?;
            let f = load_function(function, p.len())?;
            let class = classify(&p, &f)?;
            let mut report = json!({ "class": class.name(), "n": p.len() });
            if p.len() <= EXHAUSTIVE_LIMIT {
                let rep = verify_representation(&p, &f)?;
                report["represents"] = json!(rep.represents);
                report["injectively_represents"] = json!(rep.injectively_represents);
            } else {
                report["represents"] = Value::Null;
                report["injectively_represents"] = Value::Null;
            }
            report
        }
        Command::BuildInjective {
            preorder,
            multi,
            ratio,
            out,
        } => {
            let p = load_preorder(preorder)?;
            let u = load_multi(multi, p.len())?;
            let c = injective_from_multi_utility(&p, &u, &ratio.r)?;
            let class = classify(&p, &c)?;
            verify(
                class.is_injective(),
                "constructed function is not an injective monotone",
            )?;
            let mut report = json!({ "r": pq(&ratio.r), "class": class.name() });
            emit(&mut report, "function", to_value(&c), out.as_deref())?;
            report
        }
        Command::BuildMulti(args) => build_multi(args)?,
        Command::Eliminate {
            preorder,
            function,
            out,
        } => {
            let p = load_preorder(preorder)?;
            let f = load_function(function, p.len())?;
            let ties = non_injective_set(&p, &f)?;
            let g = eliminate_noninjective(&p, &f)?;
            let class = classify(&p, &g)?;
            verify(
                class.is_injective(),
                "elimination left ties between incomparable elements",
            )?;
            let mut report = json!({ "non_injective_set": ties.members(), "class": class.name() });
            emit(&mut report, "function", to_value(&g), out.as_deref())?;
            report
        }
        Command::Density {
            preorder,
            set,
            greedy,
        } => {
            let p = load_preorder(preorder)?;
            let z = subset(p.len(), set.as_deref())?;
            let mut report =
                json!({ "set": z.members(), "report": to_value(&density_report(&p, &z)?) });
            if let Some(kind) = greedy {
                report["greedy"] = json!({ "kind": kind.name(), "set": greedy_minimal_dense(&p, *kind)?.members() });
            }
            report
        }
        Command::MaxentAudit {
            energy,
            level,
            step,
            out,
            full,
        } => {
            let energy = EnergyFunction::parse(energy)?;
            let audit = maxent_audit(&energy, level, step)?;
            verify(
                audit
                    .entropy_argmax
                    .iter()
                    .all(|a| audit.maximal_set.contains(a)),
                "an entropy maximizer is not maximal",
            )?;
            let scale = match unit {
                EntropyUnit::Nats => 1.0,
                EntropyUnit::Bits => std::f64::consts::LN_2,
            };
            let mut report = json!({
                "energy": to_value(&energy.values.iter().map(rational::format).collect::<Vec<_>>()),
                "constraint_level": pq(level),
                "grid_step": pq(step),
                "grid_size": audit.grid_size,
                "unit": unit.name(),
                "max_entropy": audit.max_entropy / scale,
                "entropy_argmax": to_value(&audit.entropy_argmax),
                "maximal_count": audit.maximal_set.len(),
                "entropy_argmax_count": audit.entropy_argmax.len(),
                "missed_count": audit.missed.len(),
            });
            if *full {
                report["maximal_set"] = to_value(&audit.maximal_set);
                report["missed"] = to_value(&audit.missed);
            }
            if let Some(path) = out {
                let file = fs::File::create(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                audit.write_csv(file, unit)?;
                report["csv"] = json!(path.display().to_string());
            }
            report
        }
        Command::Witness(w) => witness(w, unit)?,
        Command::Relate(r) => relate(r, unit)?,
        Command::RandomPair { n, transfers } => {
            let (p, q) = random_comparable_pair(seed, *n, *transfers)?;
            verify(
                uncertainty_compare(&p, &q)? == OrderRelation::StrictlyLess,
                "random pair is not strictly comparable",
            )?;
            json!({
                "seed": seed,
                "p": to_value(&p),
                "q": to_value(&q),
                "entropy_p": shannon_entropy_in(&p, unit),
                "entropy_q": shannon_entropy_in(&q, unit),
                "unit": unit.name(),
            })
        }
        Command::Lorenz {
            preorder_out,
            multi_out,
            dists,
        } => {
            let dists: Vec<Dist> = dists.iter().map(|d| dist(d)).collect::<Result<_>>()?;
            let (p, u) = lorenz_preorder(&dists)?;
            write(preorder_out, &p.to_json())?;
            write(multi_out, &u.to_json())?;
            json!({
                "n": p.len(),
                "functions": u.len(),
                "preorder": preorder_out.display().to_string(),
                "multi": multi_out.display().to_string(),
            })
        }
    };
    Ok(serde_json::to_string_pretty(&report).expect("serializable"))
}

fn build_multi(args: &BuildMultiArgs) -> Result<Value> {
    let p = load_preorder(&args.preorder)?;
    let n = p.len();
    let need_function = || match &args.function {
        Some(path) => load_function(path, n),
        None => Err(Error::Parse(
            "--function is required for this method".into(),
        )),
    };
    let out = match args.method {
        MultiMethod::Swap => {
            let path = args
                .multi
                .as_ref()
                .ok_or_else(|| Error::Parse("--multi is required for --method swap".into()))?;
            injective_multi_utility_swap(&p, &load_multi(path, n)?, &args.ratio.r)?
        }
        MultiMethod::FromInjective => {
            injective_multi_utility_from_injective(&p, &need_function()?)?
        }
        MultiMethod::Dense => multi_utility_from_dense(&p, &subset(n, args.set.as_deref())?)?,
        MultiMethod::StrictDense => multi_utility_from_strict_and_upper_dense(
            &p,
            &need_function()?,
            &subset(n, args.set.as_deref())?,
        )?,
        MultiMethod::UpSets => MultiUtility::up_set_indicators(&p)?,
    };
    verify(
        is_multi_utility(&p, &out)?.holds,
        "constructed family is not a multi-utility",
    )?;
    let injective = out
        .functions()
        .iter()
        .map(|f| classify(&p, f).map(|c| c.is_injective()))
        .collect::<Result<Vec<_>>>()?;
    let mut report = json!({
        "method": format!("{:?}", args.method),
        "functions": out.len(),
        "is_multi_utility": true,
        "all_injective": injective.iter().all(|&b| b),
    });
    emit(
        &mut report,
        "multi_utility",
        to_value(&out),
        args.out.as_deref(),
    )?;
    Ok(report)
}

fn witness(cmd: &WitnessCommand, unit: EntropyUnit) -> Result<Value> {
    Ok(match cmd {
        WitnessCommand::UpperDense { x, y } => {
            let (x, y) = (dist(x)?, dist(y)?);
            let z = upper_dense_witness(&x, &y)?;
            let x_vs_z = uncertainty_compare(&x, &z)?;
            let z_vs_y = uncertainty_compare(&z, &y)?;
            verify(
                x_vs_z == OrderRelation::Incomparable && z_vs_y == OrderRelation::StrictlyLess,
                "upper-density witness fails re-verification",
            )?;
            json!({
                "z": to_value(&z),
                "x_vs_z": relation_json(x_vs_z),
                "z_vs_y": relation_json(z_vs_y),
                "verified": true,
            })
        }
        WitnessCommand::OrderDense2 { p, q } => {
            let (p, q) = (dist(p)?, dist(q)?);
            let r = order_dense_witness_dim2(&p, &q)?;
            let ok = uncertainty_compare(&p, &r)? == OrderRelation::StrictlyLess
                && uncertainty_compare(&r, &q)? == OrderRelation::StrictlyLess;
            verify(ok, "order-density witness fails re-verification")?;
            json!({ "r": to_value(&r), "verified": true })
        }
        WitnessCommand::EqualEntropy { c, n, tol } => {
            let to_nats = match unit {
                EntropyUnit::Nats => 1.0,
                EntropyUnit::Bits => std::f64::consts::LN_2,
            };
            let pair = equal_entropy_incomparable_pair(c * to_nats, *n, tol * to_nats)?;
            let rel = uncertainty_compare(&pair.p, &pair.q)?;
            verify(
                rel == OrderRelation::Incomparable,
                "equal-entropy pair is comparable",
            )?;
            let (hp, hq) = (
                shannon_entropy_in(&pair.p, unit),
                shannon_entropy_in(&pair.q, unit),
            );
            verify(
                (hp - c).abs() <= *tol && (hq - c).abs() <= *tol,
                "equal-entropy pair misses the level",
            )?;
            json!({
                "p": to_value(&pair.p),
                "q": to_value(&pair.q),
                "entropy_p": hp,
                "entropy_q": hq,
                "unit": unit.name(),
                "t_p": pq(&pair.t_p),
                "t_q": pq(&pair.t_q),
                "relation": relation_json(rel),
                "verified": true,
            })
        }
        WitnessCommand::Trumping { p, q, r } => {
            let (p, q, r) = (dist(p)?, dist(q)?, dist(r)?);
            let check = trumping_check(&p, &q, &r)?;
            json!({
                "base_relation": relation_json(check.base_relation),
                "catalyzed": check.catalyzed,
                "p_tensor_r": to_value(&majorization::tensor(&p, &r)),
                "q_tensor_r": to_value(&majorization::tensor(&q, &r)),
            })
        }
    })
}

fn relate(cmd: &RelateCommand, unit: EntropyUnit) -> Result<Value> {
    Ok(match cmd {
        RelateCommand::Preorder { preorder, x, y } => {
            let p = load_preorder(preorder)?;
            let mut report = relation_json(p.relate(*x, *y)?);
            report["x"] = json!(p.label(*x));
            report["y"] = json!(p.label(*y));
            report
        }
        RelateCommand::Interval { x, y } => relation_json(interval_preorder_relate(x, y)?),
        RelateCommand::Uncertainty { p, q, classical } => {
            let (p, q) = (dist(p)?, dist(q)?);
            let mut report = relation_json(uncertainty_compare(&p, &q)?);
            report["entropy_p"] = json!(shannon_entropy_in(&p, unit));
            report["entropy_q"] = json!(shannon_entropy_in(&q, unit));
            report["unit"] = json!(unit.name());
            if *classical {
                report["majorization"] = relation_json(majorization::majorization_compare(&p, &q));
            }
            report
        }
    })
}
