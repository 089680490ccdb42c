// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Checks of the front end itself, run by `verify`.

use mueller_sl4::factorization::QuatParams;
use mueller_sl4::lorentz::BoostSpec;
use mueller_sl4::types::ParamInterval;
use mueller_sl4::{PolarizationState, RealMatrix4, StokesVector};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::emit::{emit_svg_curve, Axes};
use crate::run_captured;

#[derive(Debug, Clone, PartialEq)]
pub struct CliCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// One invocation per verb, excluding `verify`.
pub const SAMPLE_INVOCATIONS: &[&[&str]] = &[
    &["basis", "--id", "2s03"],
    &["generator", "--id", "B3"],
    &["subgroup", "--id", "U2A", "--param", "0.5"],
    &[
        "transform",
        "--matrix",
        "[[1,0,0,0],[0,0.5,0,0],[0,0,0.5,0],[0,0,0,0.5]]",
        "--stokes",
        "[1,0.3,0.4,0.5]",
    ],
    &["check", "--matrix", "[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1]", "--stokes", "[1,0.6,0,0.8]"],
    &["range", "--variant", "U1a", "--state", r#"{"intensity":1,"p":[0.6,0,0]}"#, "--polarized"],
    &["boost", "--beta", "0.4", "--axis", "0,0,1", "--state", r#"{"intensity":1,"p":[0.1,0.2,0.3]}"#],
    &["restframe", "--state", r#"{"intensity":1,"p":[0,0,0.6]}"#],
    &["ellipsoid", "--beta", "1.2", "--p", "0.7"],
    &["factorize", "--k", "1,0,0.2,0,0,0.3,0,0"],
    &["depol", "--variant", "U1a", "--state", r#"{"intensity":1,"p":[0.5,0.2,0.1]}"#],
];

fn field<T: DeserializeOwned + Serialize>(doc: &Value, key: &str) -> Result<(), String> {
    let v = doc.get(key).ok_or_else(|| format!("missing `{key}`"))?;
    let parsed: T = serde_json::from_value(v.clone()).map_err(|e| format!("`{key}`: {e}"))?;
    let again = serde_json::to_value(&parsed).map_err(|e| e.to_string())?;
    if &again == v {
        Ok(())
    } else {
        Err(format!("`{key}` changed on round trip"))
    }
}

fn output(args: &[&str]) -> Result<Value, String> {
    let (code, out, err) = run_captured(args, None);
    if code != 0 {
        return Err(format!("{} exited {code}: {err}", args[0]));
    }
    serde_json::from_str(&out).map_err(|e| format!("{}: {e}", args[0]))
}

fn round_trips() -> Result<usize, String> {
    let inv = SAMPLE_INVOCATIONS;
    let sub = output(inv[2])?;
    field::<RealMatrix4>(&sub, "matrix")?;
    let tr = output(inv[3])?;
    field::<StokesVector>(&tr, "stokes")?;
    let ch = output(inv[4])?;
    field::<StokesVector>(&ch, "s_out")?;
    let rg = output(inv[5])?;
    field::<ParamInterval>(&rg, "interval")?;
    field::<ParamInterval>(&rg, "t_interval")?;
    field::<PolarizationState>(&rg, "state")?;
    let bo = output(inv[6])?;
    field::<BoostSpec>(&bo, "boost")?;
    field::<RealMatrix4>(&bo, "matrix")?;
    field::<PolarizationState>(&bo, "state")?;
    let rf = output(inv[7])?;
    field::<PolarizationState>(&rf, "state")?;
    let fz = output(inv[9])?;
    field::<QuatParams>(&fz, "k")?;
    field::<RealMatrix4>(&fz, "l_matrix")?;
    Ok(13)
}

fn deterministic() -> Result<usize, String> {
    for args in SAMPLE_INVOCATIONS {
        if run_captured(args, None) != run_captured(args, None) {
            return Err(format!("`{}` output differs between runs", args[0]));
        }
    }
    Ok(SAMPLE_INVOCATIONS.len())
}

fn svg_emitter() -> Result<(), String> {
    let axes = Axes { x_label: "a", y_label: "x", x_range: (-1.0, 1.0), y_range: (-1.0, 1.0) };
    let pts = [(-0.5, -0.5), (0.5, 0.5)];
    let a = emit_svg_curve(&pts, &axes).map_err(|e| e.to_string())?;
    let b = emit_svg_curve(&pts, &axes).map_err(|e| e.to_string())?;
    let ok = a == b
        && a.matches("<polyline").count() == 1
        && a.contains(r#"viewBox="0 0 640 480""#)
        && a.trim_end().ends_with("</svg>");
    ok.then_some(()).ok_or_else(|| "unexpected document".to_string())
}

fn examples() -> Result<(), String> {
    let rg = output(SAMPLE_INVOCATIONS[5])?;
    let lo = rg["interval"]["lo"].as_f64().unwrap_or(f64::NAN);
    let hi = rg["interval"]["hi"].as_f64().unwrap_or(f64::NAN);
    if lo.abs() > 1e-12 || (hi - 1.875).abs() > 1e-12 {
        return Err(format!("range gave [{lo}, {hi}]"));
    }
    let rf = output(SAMPLE_INVOCATIONS[7])?;
    let beta0 = rf["beta0"].as_f64().unwrap_or(f64::NAN);
    let i_rest = rf["i_rest"].as_f64().unwrap_or(f64::NAN);
    if (beta0 - 0.6f64.atanh()).abs() > 1e-12 || (i_rest - 0.8).abs() > 1e-12 {
        return Err(format!("restframe gave beta0 {beta0}, i_rest {i_rest}"));
    }
    let (code, _, _) = run_captured(&["check", "--matrix", "[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1]", "--stokes", "[1,2,0,0]"], None);
    if code != 1 {
        return Err(format!("non-physical input exited {code}"));
    }
    Ok(())
}

pub fn cli_checks() -> Vec<CliCheck> {
    let mk = |name, r: Result<String, String>| match r {
        Ok(detail) => CliCheck { name, passed: true, detail },
        Err(detail) => CliCheck { name, passed: false, detail },
    };
    vec![
        mk("json outputs round-trip", round_trips().map(|n| format!("{n} fields"))),
        mk("deterministic output", deterministic().map(|n| format!("{n} verbs run twice"))),
        mk("svg emitter", svg_emitter().map(|_| "one polyline, stable bytes".into())),
        mk("documented examples", examples().map(|_| "range, restframe, exit codes".into())),
    ]
}
