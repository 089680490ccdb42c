// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Commuting subgroups `R_α`, `R_β` and the factorization `L = K K*` of
//! Lorentz-type matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{ComplexMatrix4, RealMatrix4};

/// Quaternionic parameters `(k₀, k₁, k₂, k₃)`, complex in general.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuatParams {
    pub k0: Complex64,
    pub k: [Complex64; 3],
}

impl QuatParams {
    pub fn new(k0: Complex64, k: [Complex64; 3]) -> Self {
        QuatParams { k0, k }
    }

    pub fn real(k0: f64, k: [f64; 3]) -> Self {
        QuatParams { k0: Complex64::new(k0, 0.0), k: k.map(|v| Complex64::new(v, 0.0)) }
    }

    pub fn identity() -> Self {
        Self::real(1.0, [0.0; 3])
    }

    /// From 8 reals `re0, im0, …, re3, im3`.
    pub fn from_reals(v: &[f64]) -> Result<Self> {
        if v.len() != 8 {
            return Err(Error::InvalidArgument(format!(
                "expected 8 reals for k, got {}",
                v.len()
            )));
        }
        if !v.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("k"));
        }
        let c = |i: usize| Complex64::new(v[2 * i], v[2 * i + 1]);
        Ok(QuatParams { k0: c(0), k: [c(1), c(2), c(3)] })
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.k0, self.k[0], self.k[1], self.k[2]]
    }

    /// `(k₀*, −k*)`, the slice of `R_β` that pairs with `R_α(k)`.
    pub fn conjugate_partner(&self) -> Self {
        QuatParams { k0: self.k0.conj(), k: self.k.map(|z| -z.conj()) }
    }
}

fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn compose(kp: &QuatParams, k: &QuatParams, sign: f64) -> QuatParams {
    let dot: Complex64 = (0..3).map(|i| kp.k[i] * k.k[i]).sum();
    let c = cross(kp.k, k.k);
    QuatParams {
        k0: kp.k0 * k.k0 - dot,
        k: std::array::from_fn(|n| kp.k0 * k.k[n] + kp.k[n] * k.k0 + c[n] * sign),
    }
}

/// `k″₀ = k′₀k₀ − k′·k`, `k″ = k′₀k + k₀k′ + k′ × k`.
pub fn compose_alpha(kp: &QuatParams, k: &QuatParams) -> QuatParams {
    compose(kp, k, 1.0)
}

/// As [`compose_alpha`] with `− k′ × k`.
pub fn compose_beta(kp: &QuatParams, k: &QuatParams) -> QuatParams {
    compose(kp, k, -1.0)
}

/// `R_α(k) = k₀ I + k_i α^i`.
pub fn r_alpha(q: &QuatParams) -> ComplexMatrix4 {
    let [k0, k1, k2, k3] = q.components();
    ComplexMatrix4([
        [k0, k1, k2, k3],
        [-k1, k0, -k3, k2],
        [-k2, k3, k0, -k1],
        [-k3, -k2, k1, k0],
    ])
}

/// `R_β(m) = m₀ I + m_i β^i`.
pub fn r_beta(m: &QuatParams) -> ComplexMatrix4 {
    let [m0, m1, m2, m3] = m.components();
    ComplexMatrix4([
        [m0, m1, m2, m3],
        [-m1, m0, m3, -m2],
        [-m2, -m3, m0, m1],
        [-m3, m2, -m1, m0],
    ])
}

pub fn pi_matrix() -> ComplexMatrix4 {
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix4::diag([Complex64::new(1.0, 0.0), i, i, i])
}

pub fn pi_inverse() -> ComplexMatrix4 {
    pi_matrix().conj()
}

/// `K = Π⁻¹ R_α(k) Π`, written out.
pub fn k_factor(q: &QuatParams) -> ComplexMatrix4 {
    let [k0, k1, k2, k3] = q.components();
    let i = Complex64::new(0.0, 1.0);
    ComplexMatrix4([
        [k0, i * k1, i * k2, i * k3],
        [i * k1, k0, -k3, k2],
        [i * k2, k3, k0, -k1],
        [i * k3, -k2, k1, k0],
    ])
}

/// `K* = Π⁻¹ R_β(k₀*, −k*) Π`, the entrywise conjugate of `K`.
pub fn k_conj_factor(q: &QuatParams) -> ComplexMatrix4 {
    k_factor(q).conj()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LorentzFactorization {
    pub k: QuatParams,
    pub l_matrix: RealMatrix4,
    pub k_factor: ComplexMatrix4,
    pub k_conj_factor: ComplexMatrix4,
    /// `max |K K* − K* K|`.
    pub commute_residual: f64,
    /// `max |Im(K K*)|`.
    pub imag_residual: f64,
    pub det: f64,
}

pub fn lorentz_from_k(q: &QuatParams) -> LorentzFactorization {
    let k = k_factor(q);
    let ks = k_conj_factor(q);
    let l = k * ks;
    let l_matrix = l.real_part();
    LorentzFactorization {
        k: *q,
        l_matrix,
        k_factor: k,
        k_conj_factor: ks,
        commute_residual: l.max_abs_diff(&(ks * k)),
        imag_residual: l.max_imag(),
        det: l_matrix.det(),
    }
}

/// `K` and `K*` with a single nonzero vector component `k_axis`.
pub fn two_param_factors(
    axis: usize,
    k0: Complex64,
    ka: Complex64,
) -> Result<(ComplexMatrix4, ComplexMatrix4)> {
    if !(1..=3).contains(&axis) {
        return Err(Error::InvalidArgument(format!("axis must be 1..=3, got {axis}")));
    }
    let mut k = [Complex64::new(0.0, 0.0); 3];
    k[axis - 1] = ka;
    let q = QuatParams::new(k0, k);
    Ok((k_factor(&q), k_conj_factor(&q)))
}
