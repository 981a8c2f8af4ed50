use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use eulb_core::entropy::{eulb, uncertainty_lhs};
use eulb_core::optimize::{self, evolve, linear_grid, sweep_m, SweepResult};
use eulb_core::presets::{presets_for, ExpectationTable, Quantity};
use eulb_core::protocol::{run_pipeline, FilterParams};
use eulb_core::{OptimizationResult, ScenarioConfig};
use serde_json::{Map, Value};

use crate::output::{format_sig9, json_text, num, scenario_digest, write_file};
use crate::{CliError, ComputeArgs, OptimizeArgs, ReproduceArgs, SweepArgs};

fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(ScenarioConfig::from_toml(&text)?)
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

pub fn compute(args: &ComputeArgs, out: &mut impl Write) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let scenario = cfg.build()?;
    let filters = FilterParams::new(args.m, 1.0, args.n1, args.n2)?;
    let report = run_pipeline(
        &scenario.initial,
        &filters,
        &scenario.channel_a,
        &scenario.channel_b,
    )?;
    let state = &report.state_after_reversal;

    let mut doc = Map::new();
    doc.insert("m".into(), num(args.m)?);
    doc.insert("n1".into(), num(args.n1)?);
    doc.insert("n2".into(), num(args.n2)?);
    doc.insert("eulb".into(), num(eulb(state, &scenario.observables)?)?);
    doc.insert(
        "lhs_uncertainty".into(),
        num(uncertainty_lhs(state, &scenario.observables)?)?,
    );
    doc.insert("baseline".into(), num(optimize::baseline(&scenario))?);
    doc.insert("success_prob_weak".into(), num(report.weak_success_prob)?);
    doc.insert(
        "success_prob_reversal".into(),
        num(report.reversal_success_prob)?,
    );
    doc.insert("state_purity".into(), num(state.purity())?);
    emit(out, &json_text(doc))
}

fn sweep_csv(result: &SweepResult) -> Result<String, CliError> {
    let mut csv = String::from("m,n1_opt,n2_opt,eulb,baseline\n");
    for p in &result.points {
        if !p.eulb.is_finite() {
            return Err(CliError::Degenerate(format!(
                "every filter setting annihilates the state at m = {}",
                p.m
            )));
        }
        let row = [p.m, p.n1, p.n2, p.eulb, result.baseline].map(format_sig9);
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Ok(csv)
}

fn run_sweep(
    cfg: &ScenarioConfig,
    m_min: f64,
    m_max: f64,
    steps: usize,
) -> Result<SweepResult, CliError> {
    if steps < 2 {
        return Err(CliError::Config(format!(
            "m-steps: need at least 2, got {steps}"
        )));
    }
    if !(m_min.is_finite() && m_max.is_finite() && 0.0 <= m_min && m_min < m_max) {
        return Err(CliError::Config(format!(
            "m-min/m-max: need 0 <= m-min < m-max, got [{m_min}, {m_max}]"
        )));
    }
    let scenario = cfg.build()?;
    let mut space = cfg.search;
    space.m_range = [m_min, m_max];
    Ok(sweep_m(
        &scenario,
        &space,
        &linear_grid(m_min, m_max, steps),
        &cfg.optimizer,
    )?)
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.optimizer.seed = seed;
    }
    let [lo, hi] = cfg.search.m_range;
    let result = run_sweep(
        &cfg,
        args.m_min.unwrap_or(lo),
        args.m_max.unwrap_or(hi),
        args.m_steps,
    )?;
    write_file(&args.out, &sweep_csv(&result)?)
}

/// Flat result document. Apart from `timestamp_unix` the content depends only
/// on the config, seed and tool version.
fn optimization_doc(
    cfg: &ScenarioConfig,
    result: &OptimizationResult,
    command: &str,
) -> Result<Map<String, Value>, CliError> {
    if !result.eulb_min.is_finite() {
        return Err(CliError::Degenerate(
            "every filter setting in the search space annihilates the state".into(),
        ));
    }
    let history = result
        .best_history
        .iter()
        .map(|&v| num(v))
        .collect::<Result<Vec<_>, _>>()?;
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);

    let mut doc = Map::new();
    doc.insert("m".into(), num(result.m)?);
    doc.insert("n1".into(), num(result.n1)?);
    doc.insert("n2".into(), num(result.n2)?);
    doc.insert("eulb_min".into(), num(result.eulb_min)?);
    doc.insert("baseline".into(), num(result.baseline)?);
    doc.insert("evaluations".into(), result.evaluations.into());
    doc.insert("converged".into(), result.converged.into());
    doc.insert("best_history".into(), Value::Array(history));
    doc.insert("scenario_digest".into(), scenario_digest(cfg).into());
    doc.insert("command".into(), command.into());
    doc.insert("seed".into(), cfg.optimizer.seed.into());
    doc.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
    doc.insert("timestamp_unix".into(), timestamp.into());
    Ok(doc)
}

pub fn optimize(args: &OptimizeArgs) -> Result<(), CliError> {
    let mut cfg = load_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.optimizer.seed = seed;
    }
    let result = evolve(&cfg.build()?, &cfg.search, &cfg.optimizer)?;
    write_file(
        &args.out,
        &json_text(optimization_doc(&cfg, &result, "optimize")?),
    )
}

fn compare(
    doc: &mut Map<String, Value>,
    table: &ExpectationTable,
    figure: &str,
    variant: &str,
    quantity: Quantity,
    computed: f64,
) -> Result<Option<bool>, CliError> {
    let key = quantity.as_str();
    doc.insert(format!("{key}_computed"), num(computed)?);
    let Some(exp) = table.lookup(figure, variant, quantity) else {
        return Ok(None);
    };
    let pass = exp.passes(computed);
    doc.insert(format!("{key}_expected"), num(exp.value)?);
    doc.insert(format!("{key}_tolerance"), num(exp.tolerance)?);
    doc.insert(format!("{key}_pass"), pass.into());
    if let Some(tol) = exp.advisory_tolerance {
        doc.insert(format!("{key}_advisory_tolerance"), num(tol)?);
        doc.insert(
            format!("{key}_advisory_pass"),
            exp.passes_advisory(computed).unwrap_or(false).into(),
        );
    }
    Ok(Some(pass))
}

/// Runs every preset of one figure. Each preset gets a sweep CSV, an
/// optimization JSON and a summary JSON; the summaries are also printed.
pub fn reproduce(args: &ReproduceArgs, out: &mut impl Write) -> Result<(), CliError> {
    let presets = presets_for(&args.figure)?;
    let table = match &args.expectations {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            ExpectationTable::from_toml(&text)?
        }
        None => ExpectationTable::builtin(),
    };
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::io(&args.out, e))?;

    for preset in presets {
        let mut cfg = preset.config();
        if let Some(seed) = args.seed {
            cfg.optimizer.seed = seed;
        }
        let scenario = cfg.build()?;
        let best = evolve(&scenario, &cfg.search, &cfg.optimizer)?;
        let [lo, hi] = cfg.search.m_range;
        let curve = run_sweep(&cfg, lo, hi, args.m_steps)?;

        let id = preset.id();
        write_file(
            &args.out.join(format!("{id}_sweep.csv")),
            &sweep_csv(&curve)?,
        )?;
        write_file(
            &args.out.join(format!("{id}_optimize.json")),
            &json_text(optimization_doc(&cfg, &best, "reproduce")?),
        )?;

        let mut summary = Map::new();
        summary.insert("figure".into(), preset.figure.into());
        summary.insert("variant".into(), preset.variant.into());
        summary.insert("m_opt".into(), num(best.m)?);
        summary.insert("n1_opt".into(), num(best.n1)?);
        summary.insert("n2_opt".into(), num(best.n2)?);
        let curve_min = curve
            .points
            .iter()
            .map(|p| p.eulb)
            .fold(f64::INFINITY, f64::min);
        summary.insert("sweep_min".into(), num(curve_min)?);
        let checks = [
            compare(
                &mut summary,
                &table,
                preset.figure,
                preset.variant,
                Quantity::Baseline,
                best.baseline,
            )?,
            compare(
                &mut summary,
                &table,
                preset.figure,
                preset.variant,
                Quantity::Minimum,
                best.eulb_min,
            )?,
        ];
        let checked: Vec<bool> = checks.into_iter().flatten().collect();
        summary.insert(
            "reproduces".into(),
            (!checked.is_empty() && checked.iter().all(|&ok| ok)).into(),
        );

        let text =
            serde_json::to_string(&Value::Object(summary.clone())).expect("JSON value serializes");
        write_file(
            &args.out.join(format!("{id}_summary.json")),
            &json_text(summary),
        )?;
        emit(out, &format!("{text}\n"))?;
    }
    Ok(())
}
