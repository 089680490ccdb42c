// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physicality on the Stokes cone and admissible parameter ranges of the
//! one-parameter subgroups.
//!
//! Rotation variants are solved in the chart `x = tan t`, boost variants in
//! `y = tanh t` and diagonal variants directly in `λ = t`. Every range is an
//! interval containing `t = 0`.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirac::{one_param_element, SubgroupId};
use crate::error::{Error, Result};
use crate::types::{
    dot3, stokes_from_state, ParamInterval, PolarizationState, RealMatrix4, StokesVector, EPS_ALG,
};

/// Below this, `1 − |p|²` is treated as zero.
const FULL_POLARIZATION_TOL: f64 = 1e-12;

/// `s′ = M s`.
pub fn transform(m: &RealMatrix4, s: &StokesVector) -> StokesVector {
    StokesVector(m.mul_vec(s.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub first_ok: bool,
    pub second_ok: bool,
    pub s_out: StokesVector,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.first_ok && self.second_ok
    }
}

pub fn check_on_state(m: &RealMatrix4, s: &StokesVector) -> Result<AdmissibilityReport> {
    check_on_state_eps(m, s, EPS_ALG)
}

pub fn check_on_state_eps(
    m: &RealMatrix4,
    s: &StokesVector,
    eps: f64,
) -> Result<AdmissibilityReport> {
    s.require_physical(eps)?;
    Ok(report(m, s, eps))
}

fn report(m: &RealMatrix4, s: &StokesVector, eps: f64) -> AdmissibilityReport {
    let s_out = transform(m, s);
    let s0 = s_out.s0();
    AdmissibilityReport {
        first_ok: s0 >= -eps,
        second_ok: s_out.minkowski_norm() >= -eps * s0.powi(2).max(1.0),
        s_out,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// `x = tan φ`
    X,
    /// `y = tanh β`
    Y,
    Lambda,
}

impl Chart {
    pub fn of(variant: SubgroupId) -> Chart {
        use crate::dirac::ParamKind;
        match variant.param_kind() {
            ParamKind::Angle => Chart::X,
            ParamKind::Rapidity => Chart::Y,
            ParamKind::LogScale => Chart::Lambda,
        }
    }

    /// Chart value → subgroup parameter.
    pub fn to_param(self, v: f64) -> f64 {
        match self {
            Chart::X => v.atan(),
            Chart::Y => v.atanh(),
            Chart::Lambda => v,
        }
    }

    pub fn from_param(self, t: f64) -> f64 {
        match self {
            Chart::X => t.tan(),
            Chart::Y => t.tanh(),
            Chart::Lambda => t,
        }
    }
}

/// A Stokes component `sign · p[index]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedCoord {
    pub index: usize,
    pub sign: f64,
}

impl SignedCoord {
    const fn new(sign: f64, index: usize) -> Self {
        SignedCoord { index, sign }
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.sign * p[self.index]
    }

    fn flipped(self) -> Self {
        SignedCoord { sign: -self.sign, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum VariantShape {
    /// Active coordinate `a`; the remaining two enter only through `b² + c²`.
    Rotation(SignedCoord),
    /// Ordered triple `(a, b, c)`; `c` is the coordinate mixed with `S₀`.
    Boost([SignedCoord; 3]),
}

/// A row of the block-display table. `orientation = −1` marks a display
/// drawn for the parameter `−t` relative to the subgroup element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VariantEntry {
    pub variant: SubgroupId,
    pub display: VariantShape,
    pub orientation: f64,
}

impl VariantEntry {
    /// The coordinates in which the parameter enters with the sign of `t`.
    pub fn canonical(&self) -> VariantShape {
        if self.orientation > 0.0 {
            return self.display;
        }
        match self.display {
            VariantShape::Rotation(a) => VariantShape::Rotation(a.flipped()),
            VariantShape::Boost([a, b, c]) => VariantShape::Boost([a, b.flipped(), c.flipped()]),
        }
    }
}

const fn rot(variant: SubgroupId, a: SignedCoord, orientation: f64) -> VariantEntry {
    VariantEntry { variant, display: VariantShape::Rotation(a), orientation }
}

const fn boost(variant: SubgroupId, abc: [SignedCoord; 3], orientation: f64) -> VariantEntry {
    VariantEntry { variant, display: VariantShape::Boost(abc), orientation }
}

const PLUS: f64 = 1.0;
const MINUS: f64 = -1.0;

static VARIANT_TABLE: [VariantEntry; 12] = {
    use SignedCoord as C;
    use SubgroupId as V;
    [
        rot(V::U1a, C::new(PLUS, 0), PLUS),
        rot(V::U2a, C::new(PLUS, 1), MINUS),
        rot(V::U3a, C::new(PLUS, 2), PLUS),
        rot(V::U1b, C::new(PLUS, 0), PLUS),
        rot(V::U2b, C::new(PLUS, 1), PLUS),
        rot(V::U3b, C::new(PLUS, 2), PLUS),
        boost(V::U2A, [C::new(PLUS, 0), C::new(PLUS, 1), C::new(PLUS, 2)], MINUS),
        boost(V::U3A, [C::new(PLUS, 0), C::new(PLUS, 2), C::new(MINUS, 1)], PLUS),
        boost(V::U1B, [C::new(PLUS, 0), C::new(PLUS, 1), C::new(MINUS, 2)], PLUS),
        boost(V::U3B, [C::new(PLUS, 1), C::new(PLUS, 2), C::new(PLUS, 0)], PLUS),
        boost(V::U1C, [C::new(PLUS, 0), C::new(PLUS, 2), C::new(PLUS, 1)], PLUS),
        boost(V::U2C, [C::new(PLUS, 1), C::new(PLUS, 2), C::new(MINUS, 0)], MINUS),
    ]
};

pub fn variant_table() -> &'static [VariantEntry; 12] {
    &VARIANT_TABLE
}

pub fn variant_entry(variant: SubgroupId) -> Option<&'static VariantEntry> {
    VARIANT_TABLE.iter().find(|e| e.variant == variant)
}

/// Canonical active coordinate `a` and `b² + c²` of a rotation variant.
pub fn rotation_coords(variant: SubgroupId, p: [f64; 3]) -> Result<(f64, f64)> {
    match variant_entry(variant).map(VariantEntry::canonical) {
        Some(VariantShape::Rotation(a)) => {
            let av = a.eval(p);
            let rest = (dot3(p, p) - av * av).max(0.0);
            Ok((av, rest))
        }
        _ => Err(Error::UnsupportedVariant(variant.name(), "not a rotation variant")),
    }
}

/// Canonical triple `(a, b, c)` of a boost variant.
pub fn boost_coords(variant: SubgroupId, p: [f64; 3]) -> Result<[f64; 3]> {
    match variant_entry(variant).map(VariantEntry::canonical) {
        Some(VariantShape::Boost(abc)) => Ok(abc.map(|c| c.eval(p))),
        _ => Err(Error::UnsupportedVariant(variant.name(), "not a boost variant")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantRange {
    pub variant: SubgroupId,
    pub chart: Chart,
    /// Admissible set in the chart variable.
    pub interval: ParamInterval,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<[f64; 2]>,
    /// Rotation variants only: admissible φ-intervals on each branch of the
    /// chart, `(−π/2, π/2]` and `(π/2, 3π/2)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub phi_intervals: Vec<[f64; 2]>,
    /// The component containing `t = 0`, in the subgroup parameter.
    #[serde(skip)]
    pub t_interval: ParamInterval,
}

/// Stable roots `r₁ ≤ r₂` of `den·v² − 4h·v − q = 0` with `den > 0`,
/// `q ≥ 0`: `(2h ∓ √(4h² + q·den)) / den`.
fn quadratic_roots(h: f64, q: f64, den: f64) -> [f64; 2] {
    let s = (4.0 * h * h + q * den).max(0.0).sqrt();
    if h >= 0.0 {
        let big = 2.0 * h + s;
        if big == 0.0 {
            return [0.0, 0.0];
        }
        [-q / big, big / den]
    } else {
        let big = 2.0 * h - s;
        [big / den, -q / big]
    }
}

fn polarization_defect(ps: &PolarizationState) -> f64 {
    let q = 1.0 - ps.degree_sq();
    if q.abs() <= FULL_POLARIZATION_TOL {
        0.0
    } else {
        q.max(0.0)
    }
}

fn require_variant(variant: SubgroupId, allowed: &[SubgroupId], what: &'static str) -> Result<()> {
    if allowed.contains(&variant) {
        Ok(())
    } else {
        Err(Error::UnsupportedVariant(variant.name(), what))
    }
}

pub fn rotation_variant_range(variant: SubgroupId, ps: &PolarizationState) -> Result<VariantRange> {
    require_variant(variant, &SubgroupId::ROTATIONS, "not a rotation variant")?;
    let (a, rest) = rotation_coords(variant, ps.p)?;
    let q = polarization_defect(ps);
    let den = rest + 1.0 - a * a;

    let (interval, roots) = if q == 0.0 && den <= FULL_POLARIZATION_TOL {
        // Linear inequality a·x ≥ 0.
        let half = if a > 0.0 {
            ParamInterval::at_least(0.0)
        } else {
            ParamInterval::at_most(0.0)
        };
        (half, None)
    } else if q == 0.0 {
        let x = 2.0 * a / (1.0 - a * a);
        (ParamInterval::closed(x.min(0.0), x.max(0.0)), Some([x.min(0.0), x.max(0.0)]))
    } else {
        let [x1, x2] = quadratic_roots(a, q, den);
        let first = first_rotation_region(a, true);
        (ParamInterval::closed(x1, x2).intersect(&first), Some([x1, x2]))
    };

    let second_branch = match roots {
        Some([x1, x2]) => ParamInterval::closed(x1, x2).intersect(&first_rotation_region(a, false)),
        None => ParamInterval::EMPTY,
    };

    let t_interval = principal_phi(variant, ps, &interval)?;
    let mut phi_intervals = Vec::new();
    if !t_interval.is_empty() {
        phi_intervals.push([t_interval.lo, t_interval.hi]);
    }
    if !second_branch.is_empty() {
        let shifted = second_branch.map_increasing(|x| x.atan() + std::f64::consts::PI);
        phi_intervals.push([shifted.lo, shifted.hi]);
    }

    Ok(VariantRange {
        variant,
        chart: Chart::X,
        interval,
        roots,
        phi_intervals,
        t_interval,
    })
}

/// `{x : 1 + a x ≥ 0}` on the branch `cos φ > 0`, `{x : 1 + a x ≤ 0}` on
/// `cos φ < 0`.
fn first_rotation_region(a: f64, principal: bool) -> ParamInterval {
    if a == 0.0 {
        return if principal {
            ParamInterval::whole()
        } else {
            ParamInterval::EMPTY
        };
    }
    let edge = -1.0 / a;
    match (a > 0.0, principal) {
        (true, true) | (false, false) => ParamInterval::at_least(edge),
        (false, true) | (true, false) => ParamInterval::at_most(edge),
    }
}

/// φ-interval of the principal branch. Unbounded x-endpoints become ±π/2,
/// closed when the element at ±π/2 is itself admissible.
fn principal_phi(
    variant: SubgroupId,
    ps: &PolarizationState,
    interval: &ParamInterval,
) -> Result<ParamInterval> {
    if interval.is_empty() {
        return Ok(ParamInterval::EMPTY);
    }
    let s = stokes_from_state(ps)?;
    let edge_ok = |t: f64| report(&one_param_element(variant, t), &s, EPS_ALG).admissible();
    let (lo, lo_closed) = if interval.lo == f64::NEG_INFINITY {
        (-FRAC_PI_2, edge_ok(-FRAC_PI_2))
    } else {
        (interval.lo.atan(), interval.lo_closed)
    };
    let (hi, hi_closed) = if interval.hi == f64::INFINITY {
        (FRAC_PI_2, edge_ok(FRAC_PI_2))
    } else {
        (interval.hi.atan(), interval.hi_closed)
    };
    Ok(ParamInterval::new(lo, hi, lo_closed, hi_closed))
}

pub fn boost_variant_range(variant: SubgroupId, ps: &PolarizationState) -> Result<VariantRange> {
    require_variant(variant, &SubgroupId::BOOSTS, "not a boost variant")?;
    let [a, b, c] = boost_coords(variant, ps.p)?;
    let q = polarization_defect(ps);
    let ab2 = a * a + b * b;

    let [y1, y2] = if ab2 <= FULL_POLARIZATION_TOL * FULL_POLARIZATION_TOL {
        [-1.0, 1.0]
    } else if q == 0.0 {
        let y = 2.0 * a * b / ab2;
        [y.min(0.0), y.max(0.0)]
    } else {
        quadratic_roots(a * b, q, ab2 + 1.0 - c * c)
    };
    let (y1, y2) = (y1.clamp(-1.0, 0.0), y2.clamp(0.0, 1.0));
    // |y| = 1 is the limit t → ±∞ and never attained.
    let interval = ParamInterval::new(y1, y2, y1 > -1.0, y2 < 1.0);
    Ok(VariantRange {
        variant,
        chart: Chart::Y,
        interval,
        roots: Some([y1, y2]),
        phi_intervals: Vec::new(),
        t_interval: interval.map_increasing(f64::atanh),
    })
}

pub fn diagonal_variant_range(variant: SubgroupId, s: &StokesVector) -> Result<VariantRange> {
    require_variant(variant, &SubgroupId::DIAGONAL, "not a diagonal variant")?;
    s.require_physical(EPS_ALG)?;
    let [s0, s1, s2, s3] = s.0.map(|v| v * v);
    let tiny = EPS_ALG * s0.max(f64::MIN_POSITIVE);
    // Physical input has the ratio on the side of 1 that keeps λ = 0; the
    // sign is enforced against rounding on the cone boundary.
    let bound = |num: f64, den: f64, upper: bool| -> Option<f64> {
        if num <= tiny || den <= tiny {
            return None;
        }
        let b = 0.25 * (num / den).ln();
        Some(if upper { b.max(0.0) } else { b.min(0.0) })
    };
    let interval = match variant {
        SubgroupId::U2B => match bound(s1 + s3, s0 - s2, false) {
            Some(lo) => ParamInterval::at_least(lo),
            None => ParamInterval::whole(),
        },
        SubgroupId::U1A => match bound(s0 - s1, s2 + s3, true) {
            Some(hi) => ParamInterval::at_most(hi),
            None => ParamInterval::whole(),
        },
        SubgroupId::U3C => match bound(s0 - s3, s1 + s2, true) {
            Some(hi) => ParamInterval::at_most(hi),
            None => ParamInterval::whole(),
        },
        _ => ParamInterval::whole(),
    };
    Ok(VariantRange {
        variant,
        chart: Chart::Lambda,
        interval,
        roots: None,
        phi_intervals: Vec::new(),
        t_interval: interval,
    })
}

/// Dispatches on the variant kind.
pub fn variant_range(variant: SubgroupId, ps: &PolarizationState) -> Result<VariantRange> {
    match Chart::of(variant) {
        Chart::X => rotation_variant_range(variant, ps),
        Chart::Y => boost_variant_range(variant, ps),
        Chart::Lambda => diagonal_variant_range(variant, &stokes_from_state(ps)?),
    }
}

/// One of the four elementary diagonal deformations together with the
/// matrix its stated action would require.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElementaryDeformation {
    pub index: usize,
    pub matrix: RealMatrix4,
    pub stated_action_matrix: RealMatrix4,
    pub consistent_with_stated_action: bool,
}

impl ElementaryDeformation {
    pub fn apply(&self, ps: &PolarizationState) -> Result<PolarizationState> {
        let out = transform(&self.matrix, &stokes_from_state(ps)?);
        crate::types::state_from_stokes(&out)
    }
}

/// `E₀ = diag(e^λ,1,1,1)`, `E₁ = diag(1,e^λ,1,1)`,
/// `E₂ = diag(e^{−λ},e^λ,e^λ,e^{−λ})`, `E₃ = diag(1,1,1,e^λ)`.
///
/// The stated actions are `I′ = e^λ I` for `E₀` and `p_i′ = e^λ p_i`
/// otherwise.
pub fn elementary_deformation(i: usize, lambda: f64) -> Result<ElementaryDeformation> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite("deformation parameter"));
    }
    let (e, ie) = (lambda.exp(), (-lambda).exp());
    let (matrix, stated) = match i {
        0 => ([e, 1.0, 1.0, 1.0], [e; 4]),
        1 => ([1.0, e, 1.0, 1.0], [1.0, e, 1.0, 1.0]),
        2 => ([ie, e, e, ie], [1.0, 1.0, e, 1.0]),
        3 => ([1.0, 1.0, 1.0, e], [1.0, 1.0, 1.0, e]),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "deformation index must be 0..=3, got {i}"
            )))
        }
    };
    let matrix = RealMatrix4::diag(matrix);
    let stated_action_matrix = RealMatrix4::diag(stated);
    Ok(ElementaryDeformation {
        index: i,
        matrix,
        stated_action_matrix,
        consistent_with_stated_action: matrix.approx_eq(&stated_action_matrix, EPS_ALG),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BruteForceRange {
    pub interval: ParamInterval,
    /// Admissible samples exist outside the component containing 0.
    pub multi_component: bool,
    pub resolution: f64,
}

/// Grid oracle: samples `t_k = t_lo + k·h`, `k = 0..=steps`, and returns the
/// hull of the admissible run through the sample nearest 0.
pub fn brute_force_range(
    variant: SubgroupId,
    s: &StokesVector,
    t_lo: f64,
    t_hi: f64,
    steps: usize,
) -> Result<BruteForceRange> {
    brute_force_range_eps(variant, s, t_lo, t_hi, steps, EPS_ALG)
}

pub fn brute_force_range_eps(
    variant: SubgroupId,
    s: &StokesVector,
    t_lo: f64,
    t_hi: f64,
    steps: usize,
    eps: f64,
) -> Result<BruteForceRange> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("steps must be at least 2, got {steps}")));
    }
    if !(t_lo.is_finite() && t_hi.is_finite()) || !(t_lo <= 0.0 && 0.0 <= t_hi) || t_lo == t_hi {
        return Err(Error::InvalidArgument(format!(
            "window [{t_lo}, {t_hi}] must be finite and contain 0"
        )));
    }
    s.require_physical(eps)?;
    let h = (t_hi - t_lo) / steps as f64;
    let at = |k: usize| if k == steps { t_hi } else { t_lo + k as f64 * h };
    let ok: Vec<bool> = (0..=steps)
        .into_par_iter()
        .map(|k| report(&one_param_element(variant, at(k)), s, eps).admissible())
        .collect();

    let k0 = ((-t_lo) / h).round().clamp(0.0, steps as f64) as usize;
    if !ok[k0] {
        return Ok(BruteForceRange {
            interval: ParamInterval::point(at(k0)),
            multi_component: ok.iter().any(|&b| b),
            resolution: h,
        });
    }
    let mut lo = k0;
    while lo > 0 && ok[lo - 1] {
        lo -= 1;
    }
    let mut hi = k0;
    while hi < steps && ok[hi + 1] {
        hi += 1;
    }
    let multi_component = ok[..lo].iter().chain(&ok[hi + 1..]).any(|&b| b);
    Ok(BruteForceRange {
        interval: ParamInterval::closed(at(lo), at(hi)),
        multi_component,
        resolution: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::state_from_stokes;
    use proptest::prelude::*;

    fn state(p: [f64; 3]) -> PolarizationState {
        PolarizationState::new(1.0, p).unwrap()
    }

    #[test]
    fn transform_examples() {
        let s = StokesVector::new(1.0, 0.5, 0.0, 0.0);
        assert_eq!(transform(&RealMatrix4::IDENTITY, &s), s);
        let l = 0.3f64;
        let s = StokesVector::new(2.0, 0.3, -0.4, 0.1);
        let u0 = transform(&one_param_element(SubgroupId::U0, l), &s);
        for k in 0..4 {
            assert!((u0.0[k] - (-l).exp() * s.0[k]).abs() < 1e-15);
        }
        let u2b = transform(&one_param_element(SubgroupId::U2B, l), &s);
        let want = [l.exp() * 2.0, (-l).exp() * 0.3, l.exp() * -0.4, (-l).exp() * 0.1];
        for k in 0..4 {
            assert!((u2b.0[k] - want[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn check_examples() {
        let s = StokesVector::new(1.0, 0.0, 0.9, 0.0);
        let r = check_on_state(&one_param_element(SubgroupId::U1A, 1.0), &s).unwrap();
        let norm = (-2.0f64).exp() - 2f64.exp() * 0.81;
        assert!(r.first_ok && !r.second_ok);
        assert!((r.s_out.minkowski_norm() - norm).abs() < 1e-12);
        let n = StokesVector::new(1.0, 0.0, 0.0, 0.0);
        let r = check_on_state(&one_param_element(SubgroupId::U2B, 2.0), &n).unwrap();
        assert!(r.admissible());
        let r = check_on_state(&RealMatrix4::IDENTITY, &s).unwrap();
        assert!(r.admissible());
        assert!(matches!(
            check_on_state(&RealMatrix4::IDENTITY, &StokesVector::new(1.0, 1.0, 1.0, 0.0)),
            Err(Error::NonPhysical { .. })
        ));
    }

    /// The scalar sequences `S₀′/(I cos t) = 1 + a tan t` and
    /// `S₀′/(I cosh t) = 1 + c tanh t` pin the canonical coordinates.
    #[test]
    fn canonical_table_matches_matrix_action() {
        let ps = state([0.31, -0.52, 0.27]);
        let s = stokes_from_state(&ps).unwrap();
        let t = 0.4f64;
        for v in SubgroupId::ROTATIONS {
            let (a, rest) = rotation_coords(v, ps.p).unwrap();
            let out = transform(&one_param_element(v, t), &s);
            assert!((out.s0() / t.cos() - (1.0 + a * t.tan())).abs() < 1e-14, "{v}");
            let x = t.tan();
            let p2 = dot3(out.spatial(), out.spatial()) / out.s0().powi(2);
            let want = ((a - x).powi(2) + rest * (1.0 + x * x)) / (1.0 + a * x).powi(2);
            assert!((p2 - want).abs() < 1e-13, "{v}");
        }
        for v in SubgroupId::BOOSTS {
            let [a, b, c] = boost_coords(v, ps.p).unwrap();
            let out = transform(&one_param_element(v, t), &s);
            let y = t.tanh();
            assert!((out.s0() / t.cosh() - (1.0 + c * y)).abs() < 1e-14, "{v}");
            let p_out = out.spatial().map(|v| v / out.s0());
            let mut got = p_out.map(f64::abs);
            let mut want = [a - b * y, b - a * y, c + y].map(|v| v.abs() / (1.0 + c * y));
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            for k in 0..3 {
                assert!((got[k] - want[k]).abs() < 1e-14, "{v}");
            }
        }
    }

    #[test]
    fn display_orientation() {
        let flipped: Vec<_> = variant_table()
            .iter()
            .filter(|e| e.orientation < 0.0)
            .map(|e| e.variant)
            .collect();
        assert_eq!(flipped, [SubgroupId::U2a, SubgroupId::U2A, SubgroupId::U2C]);
        assert_eq!(rotation_coords(SubgroupId::U2a, [0.0, 0.5, 0.0]).unwrap().0, -0.5);
        assert_eq!(boost_coords(SubgroupId::U2A, [0.1, 0.2, 0.3]).unwrap(), [0.1, -0.2, -0.3]);
        assert_eq!(boost_coords(SubgroupId::U2C, [0.1, 0.2, 0.3]).unwrap(), [0.2, -0.3, 0.1]);
    }

    #[test]
    fn rotation_fully_polarized() {
        let r = rotation_variant_range(SubgroupId::U1a, &state([0.6, 0.8, 0.0])).unwrap();
        assert_eq!(r.interval, ParamInterval::closed(0.0, 1.875));
        let r = rotation_variant_range(SubgroupId::U1a, &state([-0.6, 0.0, 0.8])).unwrap();
        assert_eq!(r.interval, ParamInterval::closed(-1.875, 0.0));
        let r = rotation_variant_range(SubgroupId::U1a, &state([0.0, 0.0, 1.0])).unwrap();
        assert_eq!(r.interval, ParamInterval::point(0.0));
    }

    #[test]
    fn rotation_axis_aligned_half_line() {
        let r = rotation_variant_range(SubgroupId::U1a, &state([1.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.interval, ParamInterval::at_least(0.0));
        assert!(r.roots.is_none());
        assert_eq!(r.t_interval, ParamInterval::closed(0.0, FRAC_PI_2));
        let r = rotation_variant_range(SubgroupId::U3b, &state([0.0, 0.0, -1.0])).unwrap();
        assert_eq!(r.interval, ParamInterval::at_most(0.0));
    }

    #[test]
    fn rotation_partial_examples() {
        let r = rotation_variant_range(SubgroupId::U1a, &state([0.0; 3])).unwrap();
        let [x1, x2] = r.roots.unwrap();
        assert!((x1 + 1.0).abs() < 1e-15 && (x2 - 1.0).abs() < 1e-15);
        let (b, c) = (0.3f64, 0.4f64);
        let r2 = b * b + c * c;
        let r = rotation_variant_range(SubgroupId::U1a, &state([0.0, b, c])).unwrap();
        let want = ((1.0 - r2) / (1.0 + r2)).sqrt();
        assert!((r.interval.lo + want).abs() < 1e-15 && (r.interval.hi - want).abs() < 1e-15);
        assert_eq!(r.phi_intervals.len(), 1);
    }

    #[test]
    fn boost_examples() {
        let k = 1.0 / 3f64.sqrt();
        // In the subgroup's own parameter, the U₂ᴬ cross term is a·(−b).
        let r = boost_variant_range(SubgroupId::U2A, &state([k, k, k])).unwrap();
        assert_eq!(r.interval, ParamInterval::new(-1.0, 0.0, false, true));
        let r = boost_variant_range(SubgroupId::U1B, &state([k, k, -k])).unwrap();
        assert_eq!(r.interval, ParamInterval::new(0.0, 1.0, true, false));
        assert_eq!(r.t_interval, ParamInterval::at_least(0.0));

        let r = boost_variant_range(SubgroupId::U2A, &state([0.0; 3])).unwrap();
        assert_eq!(r.roots, Some([-1.0, 1.0]));
        assert_eq!(r.t_interval, ParamInterval::whole());

        // a·b_canonical = (0.5)(0.5): cross term +0.5, q = 0.5, den = 1.5.
        let r = boost_variant_range(SubgroupId::U2A, &state([0.5, -0.5, 0.0])).unwrap();
        let [y1, y2] = r.roots.unwrap();
        assert!((y1 - (-1.0 / 3.0)).abs() < 1e-15, "{y1}");
        assert!((y2 - 1.0).abs() < 1e-15, "{y2}");
        assert!(!r.interval.hi_closed);
    }

    #[test]
    fn diagonal_examples() {
        let any = StokesVector::new(1.0, 0.3, 0.2, -0.1);
        assert_eq!(
            diagonal_variant_range(SubgroupId::U0, &any).unwrap().interval,
            ParamInterval::whole()
        );
        let natural = StokesVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(
            diagonal_variant_range(SubgroupId::U2B, &natural).unwrap().interval,
            ParamInterval::whole()
        );
        let r = diagonal_variant_range(SubgroupId::U1A, &StokesVector::new(1.0, 0.0, 0.6, 0.0))
            .unwrap();
        assert!((r.interval.hi - 0.25 * (1.0f64 / 0.36).ln()).abs() < 1e-15);
        assert!((r.interval.hi - 0.2554).abs() < 1e-4);
        assert!(!r.interval.lo_closed && r.interval.hi_closed);
        assert!(diagonal_variant_range(SubgroupId::U1a, &natural).is_err());
    }

    #[test]
    fn u2b_admits_negative_parameters() {
        let s = StokesVector::new(1.0, 0.3, 0.1, 0.2);
        let r = diagonal_variant_range(SubgroupId::U2B, &s).unwrap();
        assert!(r.interval.lo < 0.0);
        let m = one_param_element(SubgroupId::U2B, r.interval.lo * 0.5);
        assert!(check_on_state(&m, &s).unwrap().admissible());
    }

    #[test]
    fn deformations_record_actual_action() {
        let l = 0.4f64;
        let ps = state([0.2, 0.3, 0.1]);
        let e0 = elementary_deformation(0, l).unwrap();
        let out = e0.apply(&ps).unwrap();
        assert!((out.intensity - l.exp()).abs() < 1e-15);
        assert!((out.p[0] - 0.2 * (-l).exp()).abs() < 1e-15);
        assert!(!e0.consistent_with_stated_action);

        let e1 = elementary_deformation(1, l).unwrap();
        let out = e1.apply(&ps).unwrap();
        assert_eq!(out.intensity, 1.0);
        assert!((out.p[0] - 0.2 * l.exp()).abs() < 1e-15);
        assert_eq!((out.p[1], out.p[2]), (0.3, 0.1));
        assert!(e1.consistent_with_stated_action);

        let e2 = elementary_deformation(2, l).unwrap();
        let out = e2.apply(&ps).unwrap();
        assert!((out.intensity - (-l).exp()).abs() < 1e-15);
        assert!((out.p[1] - 0.3 * (2.0 * l).exp()).abs() < 1e-14);
        assert!(!e2.consistent_with_stated_action);

        let e3 = elementary_deformation(3, 0.0).unwrap();
        assert_eq!(e3.matrix, RealMatrix4::IDENTITY);
        assert!(elementary_deformation(4, 0.0).is_err());
    }

    #[test]
    fn u3c_action_from_matrix() {
        let l = 0.25f64;
        let s = stokes_from_state(&state([0.2, -0.1, 0.3])).unwrap();
        let out = state_from_stokes(&transform(&one_param_element(SubgroupId::U3C, l), &s)).unwrap();
        let e2 = (2.0 * l).exp();
        assert!((out.intensity - (-l).exp()).abs() < 1e-15);
        assert!((out.p[0] - 0.2 * e2).abs() < 1e-15);
        assert!((out.p[1] + 0.1 * e2).abs() < 1e-15);
        assert!((out.p[2] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn brute_force_examples() {
        let n = StokesVector::new(1.0, 0.0, 0.0, 0.0);
        let d = 1e-3;
        let r = brute_force_range(SubgroupId::U1a, &n, -FRAC_PI_2 + d, FRAC_PI_2 - d, 100_000)
            .unwrap();
        let quarter = std::f64::consts::FRAC_PI_4;
        assert!((r.interval.lo + quarter).abs() <= 2.0 * r.resolution);
        assert!((r.interval.hi - quarter).abs() <= 2.0 * r.resolution);

        let any = StokesVector::new(1.0, 0.3, -0.2, 0.5);
        let r = brute_force_range(SubgroupId::U0, &any, -5.0, 5.0, 1000).unwrap();
        assert_eq!(r.interval, ParamInterval::closed(-5.0, 5.0));

        let k = 0.5f64.sqrt();
        let pol = StokesVector::new(1.0, k, -k, 0.0);
        let r = brute_force_range(SubgroupId::U2A, &pol, -3.0, 3.0, 100_000).unwrap();
        assert_eq!(r.interval.hi, 3.0);
        assert!(r.interval.lo.abs() <= r.resolution);

        assert!(brute_force_range(SubgroupId::U0, &n, 0.5, 1.0, 10).is_err());
        assert!(brute_force_range(SubgroupId::U0, &n, -1.0, 1.0, 1).is_err());
    }

    #[test]
    fn brute_force_is_deterministic() {
        let s = StokesVector::new(1.0, 0.4, 0.3, -0.2);
        let a = brute_force_range(SubgroupId::U3B, &s, -3.0, 3.0, 20_000).unwrap();
        let b = brute_force_range(SubgroupId::U3B, &s, -3.0, 3.0, 20_000).unwrap();
        assert_eq!(a, b);
    }

    fn any_state() -> impl Strategy<Value = PolarizationState> {
        (proptest::array::uniform3(-1.0..1.0f64), 0.0..=1.0f64, proptest::bool::ANY)
            .prop_filter("direction", |(v, _, _)| dot3(*v, *v) > 1e-6)
            .prop_map(|(v, deg, full)| {
                let n = dot3(v, v).sqrt();
                let deg = if full { 1.0 } else { deg };
                PolarizationState::new(1.0, v.map(|c| c / n * deg)).unwrap()
            })
    }

    proptest! {
        #[test]
        fn zero_is_admissible(ps in any_state(), idx in 0usize..16) {
            let v = SubgroupId::ALL[idx];
            let r = variant_range(v, &ps).unwrap();
            prop_assert!(r.interval.contains(0.0));
            prop_assert!(r.t_interval.contains(0.0));
        }

        #[test]
        fn boost_roots_bounded(ps in any_state(), idx in 0usize..6) {
            let r = boost_variant_range(SubgroupId::BOOSTS[idx], &ps).unwrap();
            let [y1, y2] = r.roots.unwrap();
            prop_assert!((-1.0..=0.0).contains(&y1) && (0.0..=1.0).contains(&y2));
        }

        #[test]
        fn interior_points_admissible(ps in any_state(), idx in 0usize..12, f in 0.0..0.999f64) {
            let v = if idx < 6 { SubgroupId::ROTATIONS[idx] } else { SubgroupId::BOOSTS[idx - 6] };
            let r = variant_range(v, &ps).unwrap();
            let t = &r.t_interval;
            let lo = t.lo.max(-20.0);
            let hi = t.hi.min(20.0);
            let s = stokes_from_state(&ps).unwrap();
            let m = one_param_element(v, lo + f * (hi - lo));
            prop_assert!(check_on_state(&m, &s).unwrap().admissible());
        }

        #[test]
        fn transform_is_linear(m in proptest::array::uniform4(proptest::array::uniform4(-5.0..5.0f64)),
                               s in proptest::array::uniform4(-5.0..5.0f64),
                               u in proptest::array::uniform4(-5.0..5.0f64),
                               al in -3.0..3.0f64, be in -3.0..3.0f64) {
            let m = RealMatrix4(m);
            let (s, u) = (StokesVector(s), StokesVector(u));
            let lhs = transform(&m, &(s.scale(al) + u.scale(be)));
            let rhs = transform(&m, &s).scale(al) + transform(&m, &u).scale(be);
            for k in 0..4 {
                prop_assert!((lhs.0[k] - rhs.0[k]).abs() <= 1e-12);
            }
        }

        #[test]
        fn identity_check_is_cone_membership(s in proptest::array::uniform4(0.0..5.0f64)) {
            let s = StokesVector(s);
            match check_on_state(&RealMatrix4::IDENTITY, &s) {
                Ok(r) => prop_assert_eq!(r.second_ok, s.is_physical()),
                Err(_) => prop_assert!(s.minkowski_norm() < 0.0),
            }
            if s.minkowski_norm() >= 0.0 {
                prop_assert!(check_on_state(&RealMatrix4::IDENTITY, &s).unwrap().second_ok);
            }
        }
    }
}
