// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use mueller_sl4::cone::{
    brute_force_range_eps, check_on_state_eps, transform, variant_entry, variant_range,
    VariantShape,
};
use mueller_sl4::depolarization::{d_entity, neutral_curve};
use mueller_sl4::dirac::{basis_matrix, generator, gell_mann_check_eps, one_param_element, SubgroupId};
use mueller_sl4::factorization::{lorentz_from_k, QuatParams};
use mueller_sl4::lorentz::{act_partial, boost_matrix, ellipsoid_image, invariant, rest_frame, BoostSpec};
use mueller_sl4::verify::{oracle_window, run_suite, VerifyConfig};
use mueller_sl4::{Error, PolarizationState, RealMatrix4, StokesVector};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use crate::emit::{emit_json, emit_svg_curve, Axes, EmitError};
use crate::selfcheck::cli_checks;
use crate::{Command, Filter, Grid, EXIT_DOMAIN, EXIT_OK};

#[derive(Debug, thiserror::Error)]
pub(crate) enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("invalid {what}: {msg}")]
    Input { what: &'static str, msg: String },
    #[error("cannot write {path}: {msg}")]
    Io { path: String, msg: String },
}

pub(crate) struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Inline JSON when the argument starts like JSON, otherwise a file path.
fn load_json<T: DeserializeOwned>(arg: &str, what: &'static str) -> CliResult<T> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with(['[', '{']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Input { what, msg: format!("{arg}: {e}") })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input { what, msg: e.to_string() })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

fn load_matrix(arg: &str) -> CliResult<RealMatrix4> {
    let flat = match load_json::<MatrixInput>(arg, "matrix")? {
        MatrixInput::Flat(v) => v,
        MatrixInput::Nested(rows) => {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(CliError::Input { what: "matrix", msg: "expected 4 rows of 4".into() });
            }
            rows.concat()
        }
    };
    Ok(RealMatrix4::from_row_major(&flat)?)
}

fn load_stokes(arg: &str) -> CliResult<StokesVector> {
    let v: [f64; 4] = load_json(arg, "stokes vector")?;
    if !v.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite("stokes vector").into());
    }
    Ok(StokesVector(v))
}

fn load_state(arg: &str) -> CliResult<PolarizationState> {
    load_json(arg, "state")
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })
}

pub(crate) fn execute(cmd: &Command, eps: f64, err: &mut dyn Write) -> CliResult<Outcome> {
    match cmd {
        Command::Basis { id } => {
            let m = basis_matrix(*id);
            Ok(Outcome::ok(emit_json(&json!({
                "id": id.name(),
                "matrix": m,
                "gell_mann": gell_mann_check_eps(&m, eps),
            }))?))
        }
        Command::Generator { id } => Ok(Outcome::ok(emit_json(&json!({
            "id": id.name(),
            "matrix": generator(*id),
        }))?)),
        Command::Subgroup { id, param } => {
            if !param.is_finite() {
                return Err(Error::NonFinite("param").into());
            }
            let m = one_param_element(*id, *param);
            Ok(Outcome::ok(emit_json(&json!({
                "id": id.name(),
                "param_kind": id.param_kind(),
                "param": param,
                "matrix": m,
                "det": m.det(),
            }))?))
        }
        Command::Transform(a) => {
            let (m, s) = (load_matrix(&a.matrix)?, load_stokes(&a.stokes)?);
            let out = transform(&m, &s);
            Ok(Outcome::ok(emit_json(&json!({
                "stokes": out,
                "physical": out.is_physical_eps(eps),
            }))?))
        }
        Command::Check(a) => {
            let (m, s) = (load_matrix(&a.matrix)?, load_stokes(&a.stokes)?);
            let r = check_on_state_eps(&m, &s, eps)?;
            Ok(Outcome::ok(emit_json(&json!({
                "first_ok": r.first_ok,
                "second_ok": r.second_ok,
                "admissible": r.admissible(),
                "s_out": r.s_out,
            }))?))
        }
        Command::Range { variant, state, oracle, steps, window, polarized } => {
            let mut ps = load_state(state)?;
            if *polarized {
                ps = complete_polarization(*variant, &ps)?;
            }
            range(*variant, &ps, oracle.then_some((*steps, *window)), eps)
        }
        Command::Boost { beta, axis, state } => {
            let b = BoostSpec::new(*beta, *axis)?;
            let ps = load_state(state)?;
            let out = act_partial(&b, &ps);
            Ok(Outcome::ok(emit_json(&json!({
                "boost": b,
                "matrix": boost_matrix(&b),
                "state": out,
                "degree": out.degree(),
                "invariant_in": invariant(&ps),
                "invariant_out": invariant(&out),
            }))?))
        }
        Command::Restframe { state } => {
            let ps = load_state(state)?;
            let rf = rest_frame(&ps)?;
            let out = act_partial(&rf.boost(), &ps);
            Ok(Outcome::ok(emit_json(&json!({
                "beta0": rf.beta0,
                "axis": rf.axis,
                "i_rest": rf.i_rest,
                "state": out,
            }))?))
        }
        Command::Ellipsoid { beta, p, svg } => {
            let e = ellipsoid_image(*beta, *p)?;
            if let Some(path) = svg {
                let pts: Vec<(f64, f64)> = (0..=360)
                    .map(|k| e.meridian_point(std::f64::consts::TAU * k as f64 / 360.0))
                    .collect();
                let axes = Axes {
                    x_label: "p perpendicular",
                    y_label: "p along",
                    x_range: (-1.0, 1.0),
                    y_range: (-1.0, 1.0),
                };
                write_file(path, &emit_svg_curve(&pts, &axes)?)?;
            }
            Ok(Outcome::ok(emit_json(&e)?))
        }
        Command::Factorize { k } => {
            let q = QuatParams::from_reals(k)?;
            Ok(Outcome::ok(emit_json(&lorentz_from_k(&q))?))
        }
        Command::Depol { variant, state, grid, svg } => depol(*variant, &load_state(state)?, grid, svg.as_deref(), err),
        Command::Verify { filter, seed } => verify(*filter, *seed, eps),
    }
}

/// Keeps the variant's active coordinates (rotation: the active one; boost:
/// the pair `a, b`) and rescales the others so that `|p| = 1`. If the
/// others vanish, the remainder goes on the lowest-index free axis.
pub(crate) fn complete_polarization(variant: SubgroupId, ps: &PolarizationState) -> CliResult<PolarizationState> {
    let kept: Vec<usize> = match variant_entry(variant).map(|e| e.canonical()) {
        Some(VariantShape::Rotation(c)) => vec![c.index],
        Some(VariantShape::Boost([a, b, _])) => vec![a.index, b.index],
        None => Vec::new(),
    };
    let kept_sq: f64 = kept.iter().map(|&i| ps.p[i] * ps.p[i]).sum();
    if kept_sq > 1.0 {
        return Err(Error::PolarizationOutOfRange(kept_sq.sqrt()).into());
    }
    let rest = (1.0 - kept_sq).sqrt();
    let free: Vec<usize> = (0..3).filter(|i| !kept.contains(i)).collect();
    let free_norm = free.iter().map(|&i| ps.p[i] * ps.p[i]).sum::<f64>().sqrt();
    let mut p = ps.p;
    if free_norm > 0.0 {
        for &i in &free {
            p[i] *= rest / free_norm;
        }
    } else {
        p[free[0]] = rest;
    }
    Ok(PolarizationState::new(ps.intensity, p)?)
}

fn range(
    variant: SubgroupId,
    ps: &PolarizationState,
    oracle: Option<(usize, Option<(f64, f64)>)>,
    eps: f64,
) -> CliResult<Outcome> {
    let r = variant_range(variant, ps)?;
    let mut doc = serde_json::to_value(&r).map_err(|e| EmitError::Json(e.to_string()))?;
    doc["state"] = json!(ps);
    doc["t_interval"] = json!(r.t_interval);
    if let Some((steps, window)) = oracle {
        let (lo, hi) = window.unwrap_or_else(|| oracle_window(variant));
        let s = mueller_sl4::types::stokes_from_state(ps)?;
        let b = brute_force_range_eps(variant, &s, lo, hi, steps, eps)?;
        let tol = 2.0 * b.resolution;
        let (c_lo, c_hi) = (r.t_interval.lo.clamp(lo, hi), r.t_interval.hi.clamp(lo, hi));
        let agrees = (c_lo - b.interval.lo).abs() <= tol && (c_hi - b.interval.hi).abs() <= tol;
        doc["oracle"] = json!({
            "window": [lo, hi],
            "steps": steps,
            "interval": b.interval,
            "multi_component": b.multi_component,
            "resolution": b.resolution,
            "agrees": agrees,
        });
    }
    doc["variant"] = json!(variant.name());
    Ok(Outcome::ok(emit_json(&doc)?))
}

fn depol(
    variant: SubgroupId,
    ps: &PolarizationState,
    grid: &Grid,
    svg: Option<&Path>,
    err: &mut dyn Write,
) -> CliResult<Outcome> {
    let mut csv = String::from("variant,param,d_value,sign\n");
    for v in grid.points() {
        match d_entity(variant, ps, v) {
            Ok(r) => {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    variant.name(),
                    crate::emit::csv_float(v),
                    crate::emit::csv_float(r.d_value),
                    r.sign.as_str()
                );
            }
            Err(e @ (Error::IntensityPole(_) | Error::ChartOutOfRange(..))) => {
                let _ = writeln!(err, "skipped {v}: {e}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = svg {
        let a_grid: Vec<f64> = (-98..=98).map(|k| k as f64 / 100.0).collect();
        let curve = neutral_curve(variant, &a_grid)?;
        let pts: Vec<(f64, f64)> = curve.samples.iter().map(|s| (s[0], s[1])).collect();
        let axes = Axes { x_label: "a", y_label: "x", x_range: (-1.0, 1.0), y_range: (-10.0, 10.0) };
        write_file(path, &emit_svg_curve(&pts, &axes)?)?;
    }
    Ok(Outcome::ok(csv))
}

fn verify(filter: Option<Filter>, seed: u64, eps: f64) -> CliResult<Outcome> {
    let cfg = VerifyConfig { seed, eps, ..VerifyConfig::default() };
    let mut rows: Vec<(String, String, bool, String)> = Vec::new();
    let core_filter = match filter {
        Some(Filter::Cli) => None,
        Some(Filter::Module(m)) => Some(Some(m)),
        None => Some(None),
    };
    if let Some(f) = core_filter {
        let report = run_suite(f, &cfg);
        rows.extend(report.checks.into_iter().map(|c| (c.module.name().to_string(), c.name.to_string(), c.passed, c.detail)));
    }
    if matches!(filter, None | Some(Filter::Cli)) {
        rows.extend(cli_checks().into_iter().map(|c| ("cli".to_string(), c.name.to_string(), c.passed, c.detail)));
    }
    let passed = rows.iter().filter(|r| r.2).count();
    let failed = rows.len() - passed;
    let mut text = String::new();
    for (module, name, ok, detail) in &rows {
        let _ = writeln!(text, "{:<4}  {module:<15} {name:<48} {detail}", if *ok { "PASS" } else { "FAIL" });
    }
    let _ = writeln!(text, "{passed} passed, {failed} failed, {} checks", rows.len());
    Ok(Outcome { stdout: text, code: if failed == 0 { EXIT_OK } else { EXIT_DOMAIN } })
}
