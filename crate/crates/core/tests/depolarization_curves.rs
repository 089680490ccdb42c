// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Neutral curves and sign boundaries through the public API.

use mueller_sl4::depolarization::{
    curve_state, d_entity, d_sign_boundaries, neutral_closed_form, neutral_curve, neutral_point, DSign,
};
use mueller_sl4::dirac::SubgroupId;
use mueller_sl4::verify::{run_suite, Module, VerifyConfig};

fn grid() -> Vec<f64> {
    (-9..=9).map(|k| k as f64 / 10.0).collect()
}

#[test]
fn curves_follow_closed_forms() {
    for v in SubgroupId::ROTATIONS.into_iter().chain(SubgroupId::BOOSTS) {
        let curve = neutral_curve(v, &grid()).unwrap();
        assert!(curve.max_deviation < 1e-9, "{}: {}", v.name(), curve.max_deviation);
        for [a, x] in curve.samples {
            let ps = curve_state(v, a).unwrap();
            let d = d_entity(v, &ps, x).unwrap().d_value;
            assert!(d.abs() < 1e-9, "{} a={a}: D={d}", v.name());
        }
    }
}

#[test]
fn neutral_point_separates_signs() {
    for v in SubgroupId::ROTATIONS {
        let ps = curve_state(v, 0.4).unwrap();
        let root = neutral_point(v, &ps).unwrap().unwrap();
        assert!((root - neutral_closed_form(v, 0.4).unwrap()).abs() < 1e-12);
        let b = d_sign_boundaries(v, &ps).unwrap();
        let mid = root / 2.0;
        assert_eq!(b.sign_at(mid), Some(DSign::Decreases), "{}", v.name());
        assert_eq!(d_entity(v, &ps, mid).unwrap().sign, DSign::Decreases);
        assert_eq!(d_entity(v, &ps, 2.0 * root).unwrap().sign, DSign::Increases);
    }
}

#[test]
fn curve_rejects_out_of_range_parameter() {
    assert!(neutral_curve(SubgroupId::U1a, &[1.0]).is_err());
    assert!(neutral_curve(SubgroupId::U2B, &[0.5]).is_err());
}

#[test]
fn depolarization_and_factorization_suites_pass() {
    let cfg = VerifyConfig::default();
    for m in [Module::Depolarization, Module::Factorization] {
        let report = run_suite(Some(m), &cfg);
        for c in &report.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
