// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Elementary one-parameter subgroups of SL(4,ℝ) and their admissibility as
//! Mueller matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`types`]: fixed-size real/complex 4×4 matrices, Stokes vectors,
//!   polarization states and parameter intervals.
//! * [`dirac`]: the Dirac 16-basis in the Weyl representation, the
//!   α/β/A/B/C generators and the 16 real one-parameter subgroups.
//! * [`cone`]: physicality gating on the Stokes cone and exact admissible
//!   parameter ranges, with a brute-force oracle.
//! * [`lorentz`]: boosts acting on partially and completely polarized light,
//!   the rest frame and the depolarization ellipsoid.
//! * [`factorization`]: the commuting quaternionic factors `L = K K*`.
//! * [`depolarization`]: change of the squared degree of polarization under
//!   the rotation and boost variants.
//! * [`verify`]: a self-contained invariant suite used by the CLI.

#![allow(clippy::needless_range_loop)]

pub mod cone;
pub mod depolarization;
pub mod dirac;
pub mod error;
pub mod factorization;
pub mod lorentz;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use types::{
    ComplexMatrix4, ParamInterval, PolarizationState, RealMatrix4, StokesVector, EPS_ALG,
};
