// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Boosts acting on Stokes vectors: partially and completely polarized
//! light, the rest frame and the depolarization ellipsoid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{dot3, norm3, PolarizationState, RealMatrix4, EPS_ALG};

/// Tolerance on `|e| = 1` and `|n| = 1`.
pub const UNIT_TOL: f64 = 1e-12;

fn require_unit(v: [f64; 3]) -> Result<()> {
    if !v.iter().all(|c| c.is_finite()) {
        return Err(Error::NonFinite("direction"));
    }
    let n = norm3(v);
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit(n));
    }
    Ok(())
}

/// Rapidity along a unit axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoostSpec {
    beta: f64,
    axis: [f64; 3],
}

impl BoostSpec {
    pub fn new(beta: f64, axis: [f64; 3]) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFinite("rapidity"));
        }
        require_unit(axis)?;
        Ok(BoostSpec { beta, axis })
    }

    /// Accepts any nonzero axis and normalizes it.
    pub fn normalized(beta: f64, axis: [f64; 3]) -> Result<Self> {
        let n = norm3(axis);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotUnit(n));
        }
        Self::new(beta, axis.map(|c| c / n))
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn inverse(&self) -> Self {
        BoostSpec { beta: -self.beta, axis: self.axis }
    }
}

/// Symmetric boost matrix with `M₀₀ = cosh β`, `M₀ᵢ = −eᵢ sinh β`,
/// `Mᵢⱼ = δᵢⱼ + (cosh β − 1)eᵢeⱼ`.
pub fn boost_matrix(b: &BoostSpec) -> RealMatrix4 {
    let (ch, sh) = (b.beta.cosh(), b.beta.sinh());
    let e = b.axis;
    let mut m = RealMatrix4::ZERO;
    m.0[0][0] = ch;
    for i in 0..3 {
        m.0[0][i + 1] = -e[i] * sh;
        m.0[i + 1][0] = -e[i] * sh;
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m.0[i + 1][j + 1] = delta + (ch - 1.0) * e[i] * e[j];
        }
    }
    m
}

/// `(I′/I, p′)` for any `p` with `cosh β − sinh β (e·p) ≠ 0`.
fn boost_p(b: &BoostSpec, p: [f64; 3]) -> (f64, [f64; 3]) {
    let ep = dot3(b.axis, p);
    boost_p_split(b, p, ep, 1.0 + ep, 1.0 - ep)
}

/// Same map with `1 ± e·p` supplied by the caller. Written in `e^{±β}` so
/// that `|e·p| ≤ 1` gives sums of like-signed terms.
fn boost_p_split(b: &BoostSpec, p: [f64; 3], ep: f64, plus: f64, minus: f64) -> (f64, [f64; 3]) {
    let (up, down) = (b.beta.exp(), (-b.beta).exp());
    let factor = 0.5 * (plus * down + minus * up);
    let along = 0.5 * (plus * down - minus * up);
    let p_out = std::array::from_fn(|i| (p[i] - b.axis[i] * ep + b.axis[i] * along) / factor);
    (factor, p_out)
}

/// `I′ = I(cosh β − sinh β e·p)`, `p′ = (p + e[(cosh β − 1)e·p − sinh β]) / (cosh β − sinh β e·p)`.
pub fn act_partial(b: &BoostSpec, ps: &PolarizationState) -> PolarizationState {
    let (factor, p) = boost_p(b, ps.p);
    // Direct construction: |p′| = 1 may round slightly above 1.
    PolarizationState { intensity: ps.intensity * factor, p }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RestFrame {
    pub beta0: f64,
    pub axis: [f64; 3],
    pub i_rest: f64,
}

impl RestFrame {
    pub fn boost(&self) -> BoostSpec {
        BoostSpec { beta: self.beta0, axis: self.axis }
    }
}

/// The boost along `p/|p|` with `tanh β₀ = |p|` taking the state to natural
/// light of intensity `I √(1 − |p|²)`.
pub fn rest_frame(ps: &PolarizationState) -> Result<RestFrame> {
    let deg = ps.degree();
    if deg == 0.0 {
        return Err(Error::NoRestFrame("state is already natural light"));
    }
    if deg >= 1.0 - EPS_ALG {
        return Err(Error::NoRestFrame("completely polarized light has no rest frame"));
    }
    let beta0 = deg.atanh();
    Ok(RestFrame {
        beta0,
        axis: ps.p.map(|c| c / deg),
        i_rest: ps.intensity * (1.0 - deg * deg).sqrt(),
    })
}

/// Completely polarized light `(I, n)` with `|n| = 1`.
pub fn act_full(b: &BoostSpec, n: [f64; 3], intensity: f64) -> Result<(f64, [f64; 3])> {
    require_unit(n)?;
    // For unit e and n, 1 ± e·n = |n ± e|²/2 without cancellation.
    let e = b.axis;
    let sum: [f64; 3] = std::array::from_fn(|i| n[i] + e[i]);
    let diff: [f64; 3] = std::array::from_fn(|i| n[i] - e[i]);
    let (factor, n_out) =
        boost_p_split(b, n, dot3(e, n), 0.5 * dot3(sum, sum), 0.5 * dot3(diff, diff));
    Ok((intensity * factor, n_out))
}

/// `I²(1 − |p|²)`.
pub fn invariant(ps: &PolarizationState) -> f64 {
    ps.intensity * ps.intensity * (1.0 - ps.degree_sq())
}

/// Image of the sphere `|p| = const` under a boost:
/// `|p′_⊥|² + a_axial (e·p′ + γ)² = rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipsoidSpec {
    pub a_perp: f64,
    pub a_axial: f64,
    pub center_offset: f64,
    pub rhs: f64,
    pub axis: [f64; 3],
}

impl EllipsoidSpec {
    /// Left side minus right side at `p′`.
    pub fn residual(&self, p_out: [f64; 3]) -> f64 {
        let along = dot3(self.axis, p_out);
        let perp2 = dot3(p_out, p_out) - along * along;
        self.a_perp * perp2 + self.a_axial * (along + self.center_offset).powi(2) - self.rhs
    }

    /// Point of a meridian cross-section at polar angle `theta` from `e`
    /// about the center, as `(perp, along)`.
    pub fn meridian_point(&self, theta: f64) -> (f64, f64) {
        let r_perp = self.rhs.max(0.0).sqrt();
        let r_axial = (self.rhs / self.a_axial).max(0.0).sqrt();
        (r_perp * theta.sin(), -self.center_offset + r_axial * theta.cos())
    }
}

/// Ellipsoid for a boost along `(0, 0, 1)`.
pub fn ellipsoid_image(beta: f64, p: f64) -> Result<EllipsoidSpec> {
    ellipsoid_image_along(beta, p, [0.0, 0.0, 1.0])
}

pub fn ellipsoid_image_along(beta: f64, p: f64, axis: [f64; 3]) -> Result<EllipsoidSpec> {
    if !(beta.is_finite() && p.is_finite()) {
        return Err(Error::NonFinite("ellipsoid parameters"));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::PolarizationOutOfRange(p));
    }
    require_unit(axis)?;
    let (ch, sh) = (beta.cosh(), beta.sinh());
    let a_axial = ch * ch * (1.0 - p * p) + p * p;
    Ok(EllipsoidSpec {
        a_perp: 1.0,
        a_axial,
        center_offset: (1.0 - p * p) * sh * ch / a_axial,
        rhs: p * p / a_axial,
        axis,
    })
}

/// `p₃′ = (cosh β p₃ − sinh β)/(cosh β − p₃ sinh β)`.
pub fn transform_p3(beta: f64, p3: f64) -> f64 {
    let (ch, sh) = (beta.cosh(), beta.sinh());
    (ch * p3 - sh) / (ch - p3 * sh)
}

/// `p₃ = (cosh β p₃′ + sinh β)/(cosh β + p₃′ sinh β)`.
pub fn inverse_p3(beta: f64, p3_out: f64) -> f64 {
    let (ch, sh) = (beta.cosh(), beta.sinh());
    (ch * p3_out + sh) / (ch + p3_out * sh)
}

/// Componentwise map of `p` under a boost along `(0, 0, 1)`.
pub fn transform_p_axial(beta: f64, p: [f64; 3]) -> [f64; 3] {
    let (ch, sh) = (beta.cosh(), beta.sinh());
    let d = ch - p[2] * sh;
    [p[0] / d, p[1] / d, transform_p3(beta, p[2])]
}

/// `|p′|² = 1 − (1 − |p|²)/(cosh β − p₃ sinh β)²` for a boost along `(0, 0, 1)`.
pub fn degree_sq_after(beta: f64, p_sq: f64, p3: f64) -> f64 {
    let d = beta.cosh() - p3 * beta.sinh();
    1.0 - (1.0 - p_sq) / (d * d)
}
