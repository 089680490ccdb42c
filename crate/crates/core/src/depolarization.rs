// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Change of the squared degree of polarization, `D = |p′|² − |p|²`, under
//! the rotation and boost variants.

use serde::Serialize;

use crate::cone::{boost_coords, rotation_coords, transform, variant_entry, Chart, VariantShape};
use crate::dirac::{one_param_element, SubgroupId};
use crate::error::{Error, Result};
use crate::types::{dot3, stokes_from_state, PolarizationState, EPS_ALG};

pub const EPS_D: f64 = 1e-12;

const BISECT_TOL: f64 = 1e-12;
const BISECT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DSign {
    Decreases,
    Neutral,
    Increases,
}

impl DSign {
    pub fn of(d: f64) -> DSign {
        if d < -EPS_D {
            DSign::Decreases
        } else if d > EPS_D {
            DSign::Increases
        } else {
            DSign::Neutral
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DSign::Decreases => "decreases",
            DSign::Neutral => "neutral",
            DSign::Increases => "increases",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DReport {
    pub variant: SubgroupId,
    /// `x = tan φ` or `y = tanh β`.
    pub param: f64,
    pub d_value: f64,
    pub sign: DSign,
}

fn subgroup_param(variant: SubgroupId, chart_param: f64) -> Result<f64> {
    if !chart_param.is_finite() {
        return Err(Error::NonFinite("chart parameter"));
    }
    match Chart::of(variant) {
        Chart::X => Ok(chart_param.atan()),
        Chart::Y if chart_param.abs() < 1.0 => Ok(chart_param.atanh()),
        Chart::Y => Err(Error::ChartOutOfRange(chart_param, "(-1, 1)")),
        Chart::Lambda => Err(Error::UnsupportedVariant(
            variant.name(),
            "D-entities are defined for rotation and boost variants",
        )),
    }
}

/// `D` from the matrix action of the subgroup element at the chart value.
pub fn d_entity(variant: SubgroupId, ps: &PolarizationState, chart_param: f64) -> Result<DReport> {
    let t = subgroup_param(variant, chart_param)?;
    // D does not depend on the intensity; unit intensity keeps t = 0 exact.
    let unit = PolarizationState::unit(ps.p)?;
    let out = transform(&one_param_element(variant, t), &stokes_from_state(&unit)?);
    let s0 = out.s0();
    if s0.abs() <= EPS_ALG {
        return Err(Error::IntensityPole(chart_param));
    }
    let sp = out.spatial();
    let d_value = dot3(sp, sp) / (s0 * s0) - ps.degree_sq();
    Ok(DReport { variant, param: chart_param, d_value, sign: DSign::of(d_value) })
}

/// Points where `D` changes sign, ascending. `D < 0` strictly between two
/// points and `D > 0` outside.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignBoundaries {
    pub points: Vec<f64>,
    /// The quadratic coefficient vanishes (`|a| = 1`, or `|c| = 1` for
    /// boosts) and only `{0}` is reported.
    pub degenerate: bool,
}

impl SignBoundaries {
    fn from_root(root: Option<f64>) -> Self {
        match root {
            None => SignBoundaries { points: vec![0.0], degenerate: true },
            Some(0.0) => SignBoundaries { points: vec![0.0], degenerate: false },
            Some(r) => SignBoundaries { points: vec![r.min(0.0), r.max(0.0)], degenerate: false },
        }
    }

    /// Sign of `D` at a chart value, away from poles and not degenerate.
    pub fn sign_at(&self, v: f64) -> Option<DSign> {
        if self.degenerate {
            return None;
        }
        if self.points.contains(&v) {
            return Some(DSign::Neutral);
        }
        Some(match self.points[..] {
            [lo, hi] if lo < v && v < hi => DSign::Decreases,
            _ => DSign::Increases,
        })
    }
}

/// The nonzero neutral point in closed form: `2a/(1 − a²)` for rotations,
/// `2[2ab − c(1 − p²)]/((1 − c²)(1 + p²))` for boosts. `None` when the
/// denominator vanishes.
pub fn neutral_point(variant: SubgroupId, ps: &PolarizationState) -> Result<Option<f64>> {
    let tiny = 1e-12;
    match Chart::of(variant) {
        Chart::X => {
            let (a, _) = rotation_coords(variant, ps.p)?;
            let den = 1.0 - a * a;
            Ok((den.abs() > tiny).then(|| 2.0 * a / den))
        }
        Chart::Y => {
            let [a, b, c] = boost_coords(variant, ps.p)?;
            let p2 = ps.degree_sq();
            let den = (1.0 - c * c) * (1.0 + p2);
            Ok((den.abs() > tiny).then(|| 2.0 * (2.0 * a * b - c * (1.0 - p2)) / den))
        }
        Chart::Lambda => Err(Error::UnsupportedVariant(
            variant.name(),
            "D-entities are defined for rotation and boost variants",
        )),
    }
}

pub fn d_sign_boundaries(variant: SubgroupId, ps: &PolarizationState) -> Result<SignBoundaries> {
    Ok(SignBoundaries::from_root(neutral_point(variant, ps)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeutralCurve {
    pub variant: SubgroupId,
    /// `(a, x)` pairs on `D = 0`.
    pub samples: Vec<[f64; 2]>,
    /// Largest `|x − closed form|` over the samples.
    pub max_deviation: f64,
}

/// Closed form of the curve: `2a/(1 − a²)` for rotations; for boosts the
/// state has only the mixed coordinate `c = a`, giving `−2a/(1 + a²)`.
pub fn neutral_closed_form(variant: SubgroupId, a: f64) -> Result<f64> {
    match Chart::of(variant) {
        Chart::X => Ok(2.0 * a / (1.0 - a * a)),
        Chart::Y => Ok(-2.0 * a / (1.0 + a * a)),
        Chart::Lambda => Err(Error::UnsupportedVariant(
            variant.name(),
            "D-entities are defined for rotation and boost variants",
        )),
    }
}

/// State whose canonical active coordinate (rotations) or mixed
/// coordinate `c` (boosts) equals `a`, all others zero.
pub fn curve_state(variant: SubgroupId, a: f64) -> Result<PolarizationState> {
    let coord = match variant_entry(variant).map(|e| e.canonical()) {
        Some(VariantShape::Rotation(c)) => c,
        Some(VariantShape::Boost([_, _, c])) => c,
        None => {
            return Err(Error::UnsupportedVariant(
                variant.name(),
                "D-entities are defined for rotation and boost variants",
            ))
        }
    };
    let mut p = [0.0; 3];
    p[coord.index] = coord.sign * a;
    PolarizationState::new(1.0, p)
}

pub fn neutral_curve(variant: SubgroupId, a_grid: &[f64]) -> Result<NeutralCurve> {
    let mut samples = Vec::with_capacity(a_grid.len());
    let mut max_deviation = 0.0f64;
    for &a in a_grid {
        if a.is_nan() || a.abs() >= 1.0 {
            return Err(Error::InvalidArgument(format!("curve parameter {a} outside (-1, 1)")));
        }
        let x = nonzero_root(variant, &curve_state(variant, a)?, a)?;
        max_deviation = max_deviation.max((x - neutral_closed_form(variant, a)?).abs());
        samples.push([a, x]);
    }
    Ok(NeutralCurve { variant, samples, max_deviation })
}

/// Bisection for the nonzero root of `D`: step away from 0 on the side
/// where `D < 0`, double until `D > 0`, then halve the bracket.
fn nonzero_root(variant: SubgroupId, ps: &PolarizationState, a: f64) -> Result<f64> {
    if a == 0.0 {
        return Ok(0.0);
    }
    let limit = match Chart::of(variant) {
        Chart::Y => 1.0 - 1e-15,
        _ => f64::INFINITY,
    };
    let d = |v: f64| d_entity(variant, ps, v).map(|r| r.d_value);
    let h = (1e-3 * a.abs()).min(1e-3);
    let side = if d(h)? < 0.0 {
        1.0
    } else if d(-h)? < 0.0 {
        -1.0
    } else {
        return Ok(0.0);
    };
    let mut lo = side * h;
    let mut hi = lo;
    loop {
        let next = (2.0 * hi.abs()).min(limit) * side;
        if d(next)? > 0.0 {
            hi = next;
            break;
        }
        if next.abs() >= limit {
            return Err(Error::InvalidArgument(format!(
                "no sign change of D found for a = {a}"
            )));
        }
        lo = next;
        hi = next;
    }
    for _ in 0..BISECT_MAX_ITER {
        if (hi - lo).abs() <= BISECT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if d(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::variant_range;
    use proptest::prelude::*;

    fn state(p: [f64; 3]) -> PolarizationState {
        PolarizationState::new(1.0, p).unwrap()
    }

    /// Displayed D-fractions, written directly in `p` with the denominator
    /// `(1 + a x)²` throughout.
    fn oracle(variant: SubgroupId, p: [f64; 3], v: f64) -> f64 {
        let [p1, p2, p3] = p;
        let p_sq = p1 * p1 + p2 * p2 + p3 * p3;
        let rot = |a: f64, b: f64, c: f64| {
            ((a - v).powi(2) + (b * b + c * c) * (1.0 + v * v)) / (1.0 + a * v).powi(2) - p_sq
        };
        let boost = |a: f64, b: f64, c: f64| {
            ((a - b * v).powi(2) + (b - a * v).powi(2) + (c + v).powi(2)) / (1.0 + c * v).powi(2)
                - p_sq
        };
        match variant {
            SubgroupId::U1a | SubgroupId::U1b => rot(p1, p2, p3),
            SubgroupId::U2a => rot(-p2, p1, p3),
            SubgroupId::U2b => rot(p2, p1, p3),
            SubgroupId::U3a | SubgroupId::U3b => rot(p3, p1, p2),
            SubgroupId::U2A => boost(p1, -p2, -p3),
            SubgroupId::U3A => boost(p1, p3, -p2),
            SubgroupId::U1B => boost(p1, p2, -p3),
            SubgroupId::U3B => boost(p2, p3, p1),
            SubgroupId::U1C => boost(p1, p3, p2),
            SubgroupId::U2C => boost(p2, -p3, p1),
            _ => unreachable!(),
        }
    }

    #[test]
    fn d_at_identity_is_zero() {
        let ps = state([0.3, -0.2, 0.5]);
        for v in SubgroupId::ROTATIONS.into_iter().chain(SubgroupId::BOOSTS) {
            assert_eq!(d_entity(v, &ps, 0.0).unwrap().d_value, 0.0);
        }
    }

    #[test]
    fn rotation_examples() {
        let a = 0.5;
        let ps = state([a, 0.2, 0.1]);
        let r = d_entity(SubgroupId::U1a, &ps, 2.0 * a / (1.0 - a * a)).unwrap();
        assert!(r.d_value.abs() < 1e-12);
        assert_eq!(r.sign, DSign::Neutral);
        let r = d_entity(SubgroupId::U1a, &ps, 0.1).unwrap();
        assert_eq!(r.sign, DSign::Decreases);
        let b = d_sign_boundaries(SubgroupId::U1a, &ps).unwrap();
        assert_eq!(b.points, vec![0.0, 4.0 / 3.0]);
        assert_eq!(b.sign_at(0.1), Some(DSign::Decreases));
        assert_eq!(b.sign_at(2.0), Some(DSign::Increases));
    }

    #[test]
    fn rotation_zero_active() {
        let ps = state([0.0, 0.4, 0.3]);
        let b = d_sign_boundaries(SubgroupId::U1a, &ps).unwrap();
        assert_eq!(b.points, vec![0.0]);
        for k in -50..=50 {
            let x = k as f64 * 0.2;
            assert!(d_entity(SubgroupId::U1a, &ps, x).unwrap().d_value >= -EPS_D);
        }
    }

    #[test]
    fn degenerate_boundary() {
        let b = d_sign_boundaries(SubgroupId::U1a, &state([1.0, 0.0, 0.0])).unwrap();
        assert!(b.degenerate);
        assert_eq!(b.points, vec![0.0]);
        assert_eq!(b.sign_at(0.3), None);
    }

    #[test]
    fn boost_fully_polarized_boundary() {
        // Canonical (a, b, c) for U₂ᴬ is (p₁, −p₂, −p₃).
        let p = [0.6, -0.48, -0.64];
        let ps = state(p);
        let [a, b, c] = boost_coords(SubgroupId::U2A, p).unwrap();
        let want = 2.0 * a * b / (1.0 - c * c);
        let got = d_sign_boundaries(SubgroupId::U2A, &ps).unwrap();
        assert!((got.points[1] - want).abs() < 1e-15);
        let d = d_entity(SubgroupId::U2A, &ps, want).unwrap();
        assert!(d.d_value.abs() < 1e-12);
        let inside = d_entity(SubgroupId::U2A, &ps, 0.5 * want).unwrap();
        assert_eq!(inside.sign, DSign::Decreases);
    }

    #[test]
    fn errors() {
        let ps = state([0.5, 0.0, 0.0]);
        assert!(matches!(
            d_entity(SubgroupId::U1a, &ps, -2.0),
            Err(Error::IntensityPole(_))
        ));
        assert!(matches!(
            d_entity(SubgroupId::U2A, &ps, 1.0),
            Err(Error::ChartOutOfRange(..))
        ));
        assert!(d_entity(SubgroupId::U2B, &ps, 0.1).is_err());
    }

    #[test]
    fn neutral_curve_examples() {
        let c = neutral_curve(SubgroupId::U1a, &[0.0, 0.6, -0.6]).unwrap();
        assert_eq!(c.samples[0], [0.0, 0.0]);
        assert!((c.samples[1][1] - 1.875).abs() < 1e-10);
        assert!((c.samples[2][1] + c.samples[1][1]).abs() < 1e-10);
        assert!(neutral_curve(SubgroupId::U1a, &[1.0]).is_err());
    }

    #[test]
    fn neutral_curve_grid() {
        let grid: Vec<f64> = (0..99).map(|k| -0.9 + 1.8 * k as f64 / 98.0).collect();
        for v in SubgroupId::ROTATIONS.into_iter().chain(SubgroupId::BOOSTS) {
            let curve = neutral_curve(v, &grid).unwrap();
            assert!(curve.max_deviation <= 1e-10, "{v}: {}", curve.max_deviation);
        }
    }

    #[test]
    fn sign_changes_at_boundaries() {
        let ps = state([0.3, -0.5, 0.4]);
        for v in SubgroupId::ROTATIONS {
            let b = d_sign_boundaries(v, &ps).unwrap();
            let r = b.points[if b.points[0] == 0.0 { 1 } else { 0 }];
            let h = 1e-6 * r.abs().max(1.0);
            let below = d_entity(v, &ps, r - h).unwrap().d_value;
            let above = d_entity(v, &ps, r + h).unwrap().d_value;
            assert!(below * above < 0.0, "{v}");
        }
    }

    fn any_state() -> impl Strategy<Value = PolarizationState> {
        (proptest::array::uniform3(-1.0..1.0f64), 0.0..=1.0f64)
            .prop_filter("direction", |(v, _)| dot3(*v, *v) > 1e-6)
            .prop_map(|(v, deg)| {
                let n = dot3(v, v).sqrt();
                state(v.map(|c| c / n * deg))
            })
    }

    proptest! {
        #[test]
        fn matches_displayed_fractions(ps in any_state(), idx in 0usize..12, f in 0.0..1.0f64) {
            let v = if idx < 6 { SubgroupId::ROTATIONS[idx] } else { SubgroupId::BOOSTS[idx - 6] };
            let range = variant_range(v, &ps).unwrap().interval;
            let lo = range.lo.max(-5.0);
            let hi = range.hi.min(5.0).min(if idx < 6 { f64::INFINITY } else { 1.0 - 1e-9 });
            let lo = if idx < 6 { lo } else { lo.max(-1.0 + 1e-9) };
            let param = lo + f * (hi - lo);
            let d = d_entity(v, &ps, param).unwrap().d_value;
            prop_assert!((d - oracle(v, ps.p, param)).abs() <= 1e-10);
        }

        #[test]
        fn boundary_signs_match_sampling(ps in any_state(), idx in 0usize..12, v in -0.95..0.95f64) {
            let var = if idx < 6 { SubgroupId::ROTATIONS[idx] } else { SubgroupId::BOOSTS[idx - 6] };
            let b = d_sign_boundaries(var, &ps).unwrap();
            prop_assume!(!b.degenerate);
            prop_assume!(b.points.iter().all(|p| (p - v).abs() > 1e-6));
            let Ok(r) = d_entity(var, &ps, v) else { return Ok(()) };
            prop_assume!(r.d_value.abs() > 1e-9);
            prop_assert_eq!(Some(r.sign), b.sign_at(v));
        }
    }
}
