// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-physical Stokes vector: s0 = {s0}, s0^2 - |s|^2 = {norm}")]
    NonPhysical { s0: f64, norm: f64 },

    #[error("null Stokes vector (s0 = 0) has no polarization direction")]
    DegenerateIntensity,

    #[error("intensity must be positive, got {0}")]
    NonPositiveIntensity(f64),

    #[error("degree of polarization |p| = {0} exceeds 1")]
    PolarizationOutOfRange(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("vector is not unit length: |v| = {0}")]
    NotUnit(f64),

    #[error("subgroup {0} is not valid here: {1}")]
    UnsupportedVariant(&'static str, &'static str),

    #[error("no rest frame: {0}")]
    NoRestFrame(&'static str),

    #[error("transformed intensity vanishes (pole of the chart) at parameter {0}")]
    IntensityPole(f64),

    #[error("chart parameter {0} outside the valid range {1}")]
    ChartOutOfRange(f64, &'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}
