// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form ranges against the grid oracle.

use std::f64::consts::FRAC_PI_2;

use mueller_sl4::cone::{brute_force_range, variant_range, Chart};
use mueller_sl4::dirac::SubgroupId;
use mueller_sl4::types::{stokes_from_state, PolarizationState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STEPS: usize = 100_000;

fn random_state(rng: &mut ChaCha8Rng, full: bool) -> PolarizationState {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(1e-3..=1.0).contains(&n) {
            continue;
        }
        let deg = if full { 1.0 } else { rng.random_range(0.0..1.0) };
        return PolarizationState::new(rng.random_range(0.5..2.0), v.map(|c| c / n * deg)).unwrap();
    }
}

fn window(v: SubgroupId) -> (f64, f64) {
    match Chart::of(v) {
        Chart::X => (-FRAC_PI_2, FRAC_PI_2),
        _ => (-3.0, 3.0),
    }
}

fn compare(v: SubgroupId, ps: &PolarizationState) {
    let closed = variant_range(v, ps).unwrap().t_interval;
    let (lo_w, hi_w) = window(v);
    let brute = brute_force_range(v, &stokes_from_state(ps).unwrap(), lo_w, hi_w, STEPS).unwrap();
    let tol = 2.0 * brute.resolution;
    let lo = closed.lo.clamp(lo_w, hi_w);
    let hi = closed.hi.clamp(lo_w, hi_w);
    assert!(
        (brute.interval.lo - lo).abs() <= tol && (brute.interval.hi - hi).abs() <= tol,
        "{v} {ps:?}: closed [{lo}, {hi}] brute [{}, {}]",
        brute.interval.lo,
        brute.interval.hi
    );
}

#[test]
fn rotation_and_boost_ranges_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for v in SubgroupId::ROTATIONS.into_iter().chain(SubgroupId::BOOSTS) {
        for k in 0..40 {
            let ps = random_state(&mut rng, k % 2 == 0);
            compare(v, &ps);
        }
    }
}

#[test]
fn diagonal_ranges_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for v in SubgroupId::DIAGONAL {
        for k in 0..40 {
            compare(v, &random_state(&mut rng, k % 2 == 0));
        }
    }
}
