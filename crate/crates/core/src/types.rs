// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Shared value types: fixed-size 4×4 matrices, Stokes vectors, polarization
//! states and parameter intervals.
//!
//! Matrices are stored row-major. All operations are pure; nothing here
//! allocates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for algebraic identities between 4×4 products.
pub const EPS_ALG: f64 = 1e-12;

/// Real 4×4 matrix, row-major. Carrier of all Mueller and Lorentz-type
/// transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMatrix4(pub [[f64; 4]; 4]);

/// Complex 4×4 matrix, row-major. Carrier of the Dirac basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(pub [[Complex64; 4]; 4]);

impl RealMatrix4 {
    pub const IDENTITY: RealMatrix4 = RealMatrix4([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]);

    pub const ZERO: RealMatrix4 = RealMatrix4([[0.0; 4]; 4]);

    /// Builds a matrix from rows, rejecting NaN/Inf entries.
    pub fn new(rows: [[f64; 4]; 4]) -> Result<Self> {
        if rows.iter().flatten().all(|v| v.is_finite()) {
            Ok(RealMatrix4(rows))
        } else {
            Err(Error::NonFinite("RealMatrix4"))
        }
    }

    /// Builds a matrix from 16 row-major entries.
    pub fn from_row_major(entries: &[f64]) -> Result<Self> {
        if entries.len() != 16 {
            return Err(Error::InvalidArgument(format!(
                "expected 16 matrix entries, got {}",
                entries.len()
            )));
        }
        let mut rows = [[0.0; 4]; 4];
        for (k, v) in entries.iter().enumerate() {
            rows[k / 4][k % 4] = *v;
        }
        Self::new(rows)
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn row_major(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for (k, v) in self.0.iter().flatten().enumerate() {
            out[k] = *v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|v| *v *= k);
        out
    }

    pub fn mul_vec(&self, v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
        }
        out
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.max_abs_diff(other) <= eps
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> f64 {
        let mut a = self.0;
        let mut det = 1.0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
                .unwrap_or(col);
            if a[pivot][col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..4 {
                let f = a[r][col] / a[col][col];
                for c in col..4 {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when a pivot vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.0;
        let mut inv = Self::IDENTITY.0;
        for col in 0..4 {
            let pivot = (col..4).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
            if a[pivot][col].abs() < f64::MIN_POSITIVE {
                return None;
            }
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let d = a[col][col];
            for c in 0..4 {
                a[col][c] /= d;
                inv[col][c] /= d;
            }
            for r in 0..4 {
                if r != col {
                    let f = a[r][col];
                    for c in 0..4 {
                        a[r][c] -= f * a[col][c];
                        inv[r][c] -= f * inv[col][c];
                    }
                }
            }
        }
        Some(RealMatrix4(inv))
    }

    pub fn to_complex(&self) -> ComplexMatrix4 {
        let mut out = ComplexMatrix4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = Complex64::new(self.0[i][j], 0.0);
            }
        }
        out
    }
}

impl Mul for RealMatrix4 {
    type Output = RealMatrix4;

    fn mul(self, rhs: RealMatrix4) -> RealMatrix4 {
        mat_mul(&self, &rhs)
    }
}

impl Add for RealMatrix4 {
    type Output = RealMatrix4;

    fn add(mut self, rhs: RealMatrix4) -> RealMatrix4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for RealMatrix4 {
    type Output = RealMatrix4;

    fn sub(self, rhs: RealMatrix4) -> RealMatrix4 {
        self + rhs.scale(-1.0)
    }
}

/// Standard matrix product `a · b`.
pub fn mat_mul(a: &RealMatrix4, b: &RealMatrix4) -> RealMatrix4 {
    let mut out = RealMatrix4::ZERO;
    for i in 0..4 {
        for j in 0..4 {
            out.0[i][j] = (0..4).map(|k| a.0[i][k] * b.0[k][j]).sum();
        }
    }
    out
}

impl ComplexMatrix4 {
    pub const ZERO: ComplexMatrix4 = ComplexMatrix4([[Complex64::new(0.0, 0.0); 4]; 4]);

    pub fn identity() -> Self {
        Self::diag([Complex64::new(1.0, 0.0); 4])
    }

    pub fn new(rows: [[Complex64; 4]; 4]) -> Result<Self> {
        if rows.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(ComplexMatrix4(rows))
        } else {
            Err(Error::NonFinite("ComplexMatrix4"))
        }
    }

    pub fn diag(d: [Complex64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Assembles a matrix from four 2×2 blocks `[[a, b], [c, d]]`.
    pub fn from_blocks(
        a: [[Complex64; 2]; 2],
        b: [[Complex64; 2]; 2],
        c: [[Complex64; 2]; 2],
        d: [[Complex64; 2]; 2],
    ) -> Self {
        let mut m = Self::ZERO;
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a[i][j];
                m.0[i][j + 2] = b[i][j];
                m.0[i + 2][j] = c[i][j];
                m.0[i + 2][j + 2] = d[i][j];
            }
        }
        m
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|v| *v *= k);
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                t.0[i][j] = self.0[j][i].conj();
            }
        }
        t
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|v| *v = v.conj());
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.max_abs_diff(other) <= eps
    }

    /// Largest |Im| over all entries.
    pub fn max_imag(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn real_part(&self) -> RealMatrix4 {
        let mut out = RealMatrix4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[i][j].re;
            }
        }
        out
    }

    pub fn det(&self) -> Complex64 {
        let mut a = self.0;
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm()))
                .unwrap_or(col);
            if a[pivot][col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..4 {
                let f = a[r][col] / a[col][col];
                for c in col..4 {
                    let sub = f * a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }
}

impl Mul for ComplexMatrix4 {
    type Output = ComplexMatrix4;

    fn mul(self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        let mut out = ComplexMatrix4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl Add for ComplexMatrix4 {
    type Output = ComplexMatrix4;

    fn add(mut self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = ComplexMatrix4;

    fn sub(self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        self + (-rhs)
    }
}

impl Neg for ComplexMatrix4 {
    type Output = ComplexMatrix4;

    fn neg(self) -> ComplexMatrix4 {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Stokes vector `(S₀, S₁, S₂, S₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StokesVector(pub [f64; 4]);

impl StokesVector {
    pub fn new(s0: f64, s1: f64, s2: f64, s3: f64) -> Self {
        StokesVector([s0, s1, s2, s3])
    }

    pub fn s0(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn minkowski_norm(&self) -> f64 {
        minkowski_norm(self)
    }

    /// Membership in the solid future light cone, with the boundary
    /// tolerance `eps · max(1, s0²)` on the quadratic form.
    pub fn is_physical_eps(&self, eps: f64) -> bool {
        let s0 = self.s0();
        s0 >= -eps && self.minkowski_norm() >= -eps * s0.powi(2).max(1.0)
    }

    pub fn is_physical(&self) -> bool {
        self.is_physical_eps(EPS_ALG)
    }

    pub(crate) fn require_physical(&self, eps: f64) -> Result<()> {
        if !self.0.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("StokesVector"));
        }
        if self.is_physical_eps(eps) {
            Ok(())
        } else {
            Err(Error::NonPhysical {
                s0: self.s0(),
                norm: self.minkowski_norm(),
            })
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        StokesVector(self.0.map(|v| v * k))
    }
}

impl Add for StokesVector {
    type Output = StokesVector;

    fn add(self, rhs: StokesVector) -> StokesVector {
        StokesVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

/// `s0² − s1² − s2² − s3²`.
pub fn minkowski_norm(s: &StokesVector) -> f64 {
    let [s0, s1, s2, s3] = s.0;
    s0 * s0 - s1 * s1 - s2 * s2 - s3 * s3
}

/// Intensity plus polarization vector, the normalized view of a Stokes
/// vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct PolarizationState {
    pub intensity: f64,
    pub p: [f64; 3],
}

#[derive(Deserialize)]
struct RawState {
    intensity: f64,
    p: [f64; 3],
}

impl TryFrom<RawState> for PolarizationState {
    type Error = Error;

    fn try_from(raw: RawState) -> Result<Self> {
        PolarizationState::new(raw.intensity, raw.p)
    }
}

impl PolarizationState {
    /// Validates `intensity > 0` and `|p| ≤ 1` (with `EPS_ALG` slack).
    pub fn new(intensity: f64, p: [f64; 3]) -> Result<Self> {
        if !intensity.is_finite() || !p.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("PolarizationState"));
        }
        if intensity <= 0.0 {
            return Err(Error::NonPositiveIntensity(intensity));
        }
        let deg = norm3(p);
        if deg > 1.0 + EPS_ALG {
            return Err(Error::PolarizationOutOfRange(deg));
        }
        Ok(PolarizationState { intensity, p })
    }

    /// Unit-intensity state.
    pub fn unit(p: [f64; 3]) -> Result<Self> {
        Self::new(1.0, p)
    }

    pub fn degree(&self) -> f64 {
        norm3(self.p)
    }

    pub fn degree_sq(&self) -> f64 {
        dot3(self.p, self.p)
    }
}

/// `(I, I·p₁, I·p₂, I·p₃)`.
pub fn stokes_from_state(ps: &PolarizationState) -> Result<StokesVector> {
    if ps.intensity <= 0.0 {
        return Err(Error::NonPositiveIntensity(ps.intensity));
    }
    let i = ps.intensity;
    Ok(StokesVector([i, i * ps.p[0], i * ps.p[1], i * ps.p[2]]))
}

/// Inverse of [`stokes_from_state`]; the null vector has no direction and
/// is reported separately from cone violations.
pub fn state_from_stokes(s: &StokesVector) -> Result<PolarizationState> {
    state_from_stokes_eps(s, EPS_ALG)
}

pub fn state_from_stokes_eps(s: &StokesVector, eps: f64) -> Result<PolarizationState> {
    s.require_physical(eps)?;
    let s0 = s.s0();
    if s0 <= 0.0 {
        return Err(Error::DegenerateIntensity);
    }
    let p = [s.0[1] / s0, s.0[2] / s0, s.0[3] / s0];
    // The cone test already bounds |p| up to rounding at the boundary.
    Ok(PolarizationState { intensity: s0, p })
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Interval of admissible subgroup parameters. Infinite endpoints are
/// always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub empty: bool,
}

impl ParamInterval {
    pub const EMPTY: ParamInterval = ParamInterval {
        lo: 0.0,
        hi: 0.0,
        lo_closed: false,
        hi_closed: false,
        empty: true,
    };

    pub fn new(lo: f64, hi: f64, lo_closed: bool, hi_closed: bool) -> Self {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Self::EMPTY;
        }
        let lo_closed = lo_closed && lo.is_finite();
        let hi_closed = hi_closed && hi.is_finite();
        if lo == hi && !(lo_closed && hi_closed) {
            return Self::EMPTY;
        }
        ParamInterval {
            lo,
            hi,
            lo_closed,
            hi_closed,
            empty: false,
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn whole() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY, false, false)
    }

    pub fn at_least(lo: f64) -> Self {
        Self::new(lo, f64::INFINITY, true, false)
    }

    pub fn at_most(hi: f64) -> Self {
        Self::new(f64::NEG_INFINITY, hi, false, true)
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.empty {
            return false;
        }
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn intersect(&self, other: &ParamInterval) -> ParamInterval {
        if self.empty || other.empty {
            return Self::EMPTY;
        }
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        Self::new(lo, hi, lo_closed, hi_closed)
    }

    /// Image under an increasing map, e.g. `atan` or `atanh` for chart
    /// changes. Endpoints that map to ±∞ become open.
    pub fn map_increasing(&self, f: impl Fn(f64) -> f64) -> ParamInterval {
        if self.empty {
            return Self::EMPTY;
        }
        Self::new(f(self.lo), f(self.hi), self.lo_closed, self.hi_closed)
    }

    pub fn length(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            self.hi - self.lo
        }
    }
}

impl fmt::Display for ParamInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "∅");
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Finite(f64),
    Named(String),
}

impl Endpoint {
    fn from_f64(v: f64) -> Endpoint {
        if v == f64::INFINITY {
            Endpoint::Named("+inf".into())
        } else if v == f64::NEG_INFINITY {
            Endpoint::Named("-inf".into())
        } else {
            Endpoint::Finite(v)
        }
    }

    fn to_f64<E: de::Error>(&self) -> std::result::Result<f64, E> {
        match self {
            Endpoint::Finite(v) => Ok(*v),
            Endpoint::Named(s) if s == "+inf" => Ok(f64::INFINITY),
            Endpoint::Named(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            Endpoint::Named(s) => Err(E::custom(format!("invalid interval endpoint `{s}`"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: Endpoint,
    hi: Endpoint,
    lo_closed: bool,
    hi_closed: bool,
    empty: bool,
}

impl Serialize for ParamInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: Endpoint::from_f64(self.lo),
            hi: Endpoint::from_f64(self.hi),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
            empty: self.empty,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamInterval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = IntervalRepr::deserialize(deserializer)?;
        if repr.empty {
            return Ok(ParamInterval::EMPTY);
        }
        let lo = repr.lo.to_f64()?;
        let hi = repr.hi.to_f64()?;
        if lo > hi {
            return Err(de::Error::custom("interval with lo > hi must be marked empty"));
        }
        Ok(ParamInterval::new(lo, hi, repr.lo_closed, repr.hi_closed))
    }
}

impl Serialize for RealMatrix4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(16))?;
        for v in self.0.iter().flatten() {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RealMatrix4 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<f64>::deserialize(deserializer)?;
        RealMatrix4::from_row_major(&entries).map_err(de::Error::custom)
    }
}

/// Serialized as 16 row-major `[re, im]` pairs.
impl Serialize for ComplexMatrix4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(16))?;
        for z in self.0.iter().flatten() {
            seq.serialize_element(&[z.re, z.im])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix4 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<[f64; 2]>::deserialize(deserializer)?;
        if entries.len() != 16 {
            return Err(de::Error::custom("expected 16 complex entries"));
        }
        let mut rows = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (k, [re, im]) in entries.into_iter().enumerate() {
            rows[k / 4][k % 4] = Complex64::new(re, im);
        }
        ComplexMatrix4::new(rows).map_err(de::Error::custom)
    }
}

impl serde::Serialize for Error {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
