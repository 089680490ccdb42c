// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Seeded self-check suite covering the library's invariants.
//!
//! Each check draws its own deterministic random stream, so results and
//! reported residuals are reproducible for a given seed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::{
    boost_coords, brute_force_range, check_on_state_eps, rotation_coords, transform,
    variant_range, Chart,
};
use crate::depolarization::{d_entity, d_sign_boundaries, neutral_curve};
use crate::dirac::{
    alpha_beta_commutation_residual, basis_matrix, check_triplet, commuting_triplets,
    exp_generator, generator, gell_mann_check_eps, one_param_element, su2_catalog, su2_residual,
    BasisId, GeneratorId, SubgroupId,
};
use crate::error::{Error, Result};
use crate::factorization::{
    compose_alpha, compose_beta, lorentz_from_k, r_alpha, r_beta, QuatParams,
};
use crate::lorentz::{
    act_full, act_partial, boost_matrix, degree_sq_after, ellipsoid_image, invariant,
    rest_frame, transform_p_axial, BoostSpec,
};
use crate::types::{
    minkowski_norm, stokes_from_state, state_from_stokes, ComplexMatrix4, PolarizationState,
    RealMatrix4, StokesVector, EPS_ALG,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Module {
    CoreTypes,
    DiracSl4,
    StokesCone,
    LorentzOptics,
    Factorization,
    Depolarization,
}

impl Module {
    pub const ALL: [Module; 6] = [
        Module::CoreTypes,
        Module::DiracSl4,
        Module::StokesCone,
        Module::LorentzOptics,
        Module::Factorization,
        Module::Depolarization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Module::CoreTypes => "core_types",
            Module::DiracSl4 => "dirac_sl4",
            Module::StokesCone => "stokes_cone",
            Module::LorentzOptics => "lorentz_optics",
            Module::Factorization => "factorization",
            Module::Depolarization => "depolarization",
        }
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Module {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Module::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub module: Module,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Tolerance for checks stated at the algebraic level.
    pub eps: f64,
    pub cone_states: usize,
    pub cone_steps: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 20_260_101, eps: EPS_ALG, cone_states: 200, cone_steps: 100_000 }
    }
}

type Outcome = Result<(bool, String)>;

struct Suite<'a> {
    cfg: &'a VerifyConfig,
    filter: Option<Module>,
    checks: Vec<CheckResult>,
    stream: u64,
}

impl Suite<'_> {
    fn run(&mut self, module: Module, name: &'static str, f: impl FnOnce(&mut ChaCha8Rng) -> Outcome) {
        self.stream += 1;
        if self.filter.is_some_and(|m| m != module) {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(self.stream);
        let (passed, detail) = match f(&mut rng) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(CheckResult { module, name, passed, detail });
    }
}

fn residual_outcome(res: f64, tol: f64) -> Outcome {
    Ok((res <= tol, format!("max residual {res:.3e} (tol {tol:.0e})")))
}

fn count_outcome(bad: usize, total: usize) -> Outcome {
    Ok((bad == 0, format!("{} / {total} cases hold", total - bad)))
}

/// Random state; `|p| = 1` when `full`, otherwise uniform in `[0, 1)`.
pub fn random_state(rng: &mut ChaCha8Rng, full: bool) -> PolarizationState {
    let dir = random_unit(rng);
    let deg = if full { 1.0 } else { rng.random_range(0.0..1.0) };
    PolarizationState::new(rng.random_range(0.5..2.0), dir.map(|c| c * deg))
        .expect("sampled state is physical")
}

pub fn random_unit(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (1e-3..=1.0).contains(&n) {
            return v.map(|c| c / n);
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, bound: f64) -> RealMatrix4 {
    RealMatrix4(std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-bound..bound))))
}

fn random_quat(rng: &mut ChaCha8Rng) -> QuatParams {
    let v: [f64; 8] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
    QuatParams::from_reals(&v).expect("eight reals")
}

fn max_entry(m: &RealMatrix4) -> f64 {
    m.0.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()))
}

/// Sampling window used by the grid oracle for a variant.
pub fn oracle_window(variant: SubgroupId) -> (f64, f64) {
    match Chart::of(variant) {
        Chart::X => (-FRAC_PI_2, FRAC_PI_2),
        _ => (-3.0, 3.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleComparison {
    pub closed: [f64; 2],
    pub brute: [f64; 2],
    pub tolerance: f64,
    pub agrees: bool,
}

/// Closed-form `t` interval, clipped to the oracle window, against the grid
/// oracle; they agree when both endpoints lie within two grid steps.
pub fn compare_with_oracle(
    variant: SubgroupId,
    ps: &PolarizationState,
    steps: usize,
) -> Result<OracleComparison> {
    let (lo_w, hi_w) = oracle_window(variant);
    let closed = variant_range(variant, ps)?.t_interval;
    let brute = brute_force_range(variant, &stokes_from_state(ps)?, lo_w, hi_w, steps)?;
    let tolerance = 2.0 * brute.resolution;
    let closed = [closed.lo.clamp(lo_w, hi_w), closed.hi.clamp(lo_w, hi_w)];
    let brute = [brute.interval.lo, brute.interval.hi];
    let agrees =
        (closed[0] - brute[0]).abs() <= tolerance && (closed[1] - brute[1]).abs() <= tolerance;
    Ok(OracleComparison { closed, brute, tolerance, agrees })
}

/// `D` for the rotation and boost variants from the displayed fractions,
/// written directly in the state coordinates with denominator `(1 + a·v)²`.
pub fn displayed_d(variant: SubgroupId, p: [f64; 3], v: f64) -> Option<f64> {
    let [p1, p2, p3] = p;
    let p_sq = p1 * p1 + p2 * p2 + p3 * p3;
    let rot = |a: f64, b: f64, c: f64| {
        ((a - v).powi(2) + (b * b + c * c) * (1.0 + v * v)) / (1.0 + a * v).powi(2) - p_sq
    };
    let boost = |a: f64, b: f64, c: f64| {
        ((a - b * v).powi(2) + (b - a * v).powi(2) + (c + v).powi(2)) / (1.0 + c * v).powi(2)
            - p_sq
    };
    Some(match variant {
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
        _ => return None,
    })
}

fn rotation_12(phi: f64) -> RealMatrix4 {
    let (c, s) = (phi.cos(), phi.sin());
    RealMatrix4([[1., 0., 0., 0.], [0., c, -s, 0.], [0., s, c, 0.], [0., 0., 0., 1.]])
}

fn rotation_23(phi: f64) -> RealMatrix4 {
    let (c, s) = (phi.cos(), phi.sin());
    RealMatrix4([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., c, -s], [0., 0., s, c]])
}

fn boost_03(b: f64) -> RealMatrix4 {
    let (c, s) = (b.cosh(), b.sinh());
    RealMatrix4([[c, 0., 0., -s], [0., 1., 0., 0.], [0., 0., 1., 0.], [-s, 0., 0., c]])
}

fn boost_01(b: f64) -> RealMatrix4 {
    let (c, s) = (b.cosh(), b.sinh());
    RealMatrix4([[c, -s, 0., 0.], [-s, c, 0., 0.], [0., 0., 1., 0.], [0., 0., 0., 1.]])
}

/// The four two-parameter special cases of the factorization, with their
/// expected real matrices including the `D²` factor.
pub fn factorization_special_cases(d: f64, f: f64) -> [(&'static str, QuatParams, RealMatrix4); 4] {
    let z = Complex64::new(0.0, 0.0);
    let (ch, sh) = (d * (f / 2.0).cosh(), d * (f / 2.0).sinh());
    let (c, s) = (d * (f / 2.0).cos(), d * (f / 2.0).sin());
    [
        ("rotation in the (1,2) plane", QuatParams::real(c, [0.0, 0.0, s]), rotation_12(f).scale(d * d)),
        (
            "boost along 3",
            QuatParams::new(Complex64::new(ch, 0.0), [z, z, Complex64::new(0.0, sh)]),
            boost_03(f).scale(d * d),
        ),
        ("rotation in the (2,3) plane", QuatParams::real(c, [s, 0.0, 0.0]), rotation_23(f).scale(d * d)),
        (
            "boost along 1",
            QuatParams::new(Complex64::new(ch, 0.0), [Complex64::new(0.0, sh), z, z]),
            boost_01(f).scale(d * d),
        ),
    ]
}

/// Runs every check, or only those of `filter`.
pub fn run_suite(filter: Option<Module>, cfg: &VerifyConfig) -> VerifyReport {
    let mut suite = Suite { cfg, filter, checks: Vec::new(), stream: 0 };
    core_types_checks(&mut suite);
    dirac_checks(&mut suite);
    cone_checks(&mut suite);
    lorentz_checks(&mut suite);
    factorization_checks(&mut suite);
    depolarization_checks(&mut suite);
    let passed = suite.checks.iter().filter(|c| c.passed).count();
    let failed = suite.checks.len() - passed;
    VerifyReport { checks: suite.checks, passed, failed }
}

fn core_types_checks(s: &mut Suite) {
    let m = Module::CoreTypes;
    s.run(m, "mat_mul associativity", |rng| {
        let mut res = 0.0f64;
        for _ in 0..200 {
            let (a, b, c) = (random_matrix(rng, 1e3), random_matrix(rng, 1e3), random_matrix(rng, 1e3));
            let left = (a * b) * c;
            let right = a * (b * c);
            res = res.max(left.max_abs_diff(&right) / max_entry(&left).max(1.0));
        }
        Ok((res <= 1e-12, format!("max residual relative to product scale {res:.3e}")))
    });
    s.run(m, "state/stokes round trip", |rng| {
        let mut res = 0.0f64;
        for k in 0..500 {
            let ps = random_state(rng, k % 5 == 0);
            let sv = stokes_from_state(&ps)?;
            let again = stokes_from_state(&state_from_stokes(&sv)?)?;
            for i in 0..4 {
                res = res.max((again.0[i] - sv.0[i]).abs() / sv.s0());
            }
        }
        residual_outcome(res, 1e-14)
    });
    s.run(m, "minkowski norm of a state", |rng| {
        let mut res = 0.0f64;
        for k in 0..500 {
            let ps = random_state(rng, k % 5 == 0);
            let want = ps.intensity.powi(2) * (1.0 - ps.degree_sq());
            let got = minkowski_norm(&stokes_from_state(&ps)?);
            res = res.max((got - want).abs() / ps.intensity.powi(2));
        }
        residual_outcome(res, 1e-14)
    });
}

fn dirac_checks(s: &mut Suite) {
    let m = Module::DiracSl4;
    let eps = s.cfg.eps;
    s.run(m, "basis is of Gell-Mann type", |_| {
        let bad = BasisId::ALL[1..]
            .iter()
            .filter(|&&b| !gell_mann_check_eps(&basis_matrix(b), eps).all())
            .count();
        count_outcome(bad, 15)
    });
    s.run(m, "alpha and beta algebras", |_| {
        let i = Complex64::new(0.0, 1.0);
        let id = ComplexMatrix4::identity();
        let mut res = 0.0f64;
        for fam in [GeneratorId::alpha as fn(u8) -> GeneratorId, GeneratorId::beta] {
            for j in 1..=3u8 {
                let (x, y, z) = (generator(fam(j)), generator(fam(j % 3 + 1)), generator(fam((j + 1) % 3 + 1)));
                res = res.max((x * x).max_abs_diff(&id));
                res = res.max((x * y).max_abs_diff(&z.scale(i)));
                res = res.max((y * x).max_abs_diff(&z.scale(-i)));
            }
        }
        residual_outcome(res, eps)
    });
    s.run(m, "alpha-beta products", |_| {
        let mut res = 0.0f64;
        for a in 1..=3 {
            for b in 1..=3 {
                let prod = generator(GeneratorId::alpha(a)) * generator(GeneratorId::beta(b));
                res = res.max(prod.max_abs_diff(&generator(GeneratorId::product_of(a, b))));
            }
        }
        residual_outcome(res, eps)
    });
    s.run(m, "alpha-beta commutation", |_| residual_outcome(alpha_beta_commutation_residual(), eps));
    s.run(m, "abelian two-parameter subgroups", |rng| {
        let mut res = 0.0f64;
        for a_i in 1..=3 {
            for b_i in 1..=3 {
                for _ in 0..10 {
                    let a = Complex64::new(rng.random_range(-PI..PI), 0.0);
                    let b = Complex64::new(rng.random_range(-PI..PI), 0.0);
                    let x = exp_generator(GeneratorId::alpha(a_i), a);
                    let y = exp_generator(GeneratorId::beta(b_i), b);
                    res = res.max((x * y).max_abs_diff(&(y * x)));
                }
            }
        }
        residual_outcome(res, eps)
    });
    s.run(m, "su(2) triples close", |_| {
        let cat = su2_catalog();
        let res = cat.iter().map(su2_residual).fold(0.0, f64::max);
        let (pos, neg) = cat.iter().fold((0, 0), |(p, n), t| if t.sign > 0.0 { (p + 1, n) } else { (p, n + 1) });
        Ok((res <= eps && cat.len() == 20, format!("20 triples, signs +i: {pos}, -i: {neg}, max residual {res:.3e}")))
    });
    s.run(m, "commuting triplets", |_| {
        let checks: Vec<_> = commuting_triplets().iter().map(|t| (t.name, check_triplet(t))).collect();
        let first_three = checks[..3].iter().all(|(_, c)| c.closes());
        let detail = checks
            .iter()
            .map(|(n, c)| format!("{n}: {}", if c.closes() { "closes" } else { "fails" }))
            .collect::<Vec<_>>()
            .join(", ");
        Ok((first_three, detail))
    });
    s.run(m, "subgroup determinant", |_| {
        let mut res = 0.0f64;
        for v in SubgroupId::ALL.into_iter().filter(|&v| v != SubgroupId::U0) {
            for k in 0..=200 {
                let t = -5.0 + k as f64 * 0.05;
                res = res.max((one_param_element(v, t).det() - 1.0).abs());
            }
        }
        residual_outcome(res, 1e-10)
    });
    s.run(m, "one-parameter group law", |rng| {
        let mut res = 0.0f64;
        for v in SubgroupId::ALL {
            for _ in 0..50 {
                let (a, b) = (rng.random_range(-2.5..2.5), rng.random_range(-2.5..2.5));
                let lhs = one_param_element(v, a) * one_param_element(v, b);
                res = res.max(lhs.max_abs_diff(&one_param_element(v, a + b)));
            }
        }
        residual_outcome(res, 1e-10)
    });
}

fn cone_checks(s: &mut Suite) {
    let m = Module::StokesCone;
    let (n_states, steps) = (s.cfg.cone_states, s.cfg.cone_steps);
    s.run(m, "closed-form ranges match the grid oracle", |rng| {
        let mut bad = Vec::new();
        let mut total = 0;
        for v in SubgroupId::ALL {
            for k in 0..n_states {
                let ps = random_state(rng, k % 2 == 0);
                total += 1;
                let c = compare_with_oracle(v, &ps, steps)?;
                if !c.agrees && bad.len() < 3 {
                    bad.push(format!("{v} {:?}: closed {:?} grid {:?}", ps.p, c.closed, c.brute));
                }
                if !c.agrees {
                    return Ok((false, bad.join("; ")));
                }
            }
        }
        Ok((true, format!("{total} (variant, state) pairs, {steps} steps")))
    });
    s.run(m, "identity lies in every range", |rng| {
        let mut bad = 0;
        for v in SubgroupId::ALL {
            for k in 0..200 {
                let r = variant_range(v, &random_state(rng, k % 2 == 0))?;
                bad += usize::from(!r.t_interval.contains(0.0) || !r.interval.contains(0.0));
            }
        }
        count_outcome(bad, 16 * 200)
    });
    s.run(m, "boost roots bounded by the chart", |rng| {
        let mut bad = 0;
        for k in 0..10_000 {
            let ps = random_state(rng, k % 2 == 0);
            for v in SubgroupId::BOOSTS {
                let r = variant_range(v, &ps)?;
                let [y1, y2] = r.roots.unwrap_or([r.interval.lo, r.interval.hi]);
                let ok = (-1.0..=0.0).contains(&y1) && (0.0..=1.0).contains(&y2);
                bad += usize::from(!ok);
            }
        }
        count_outcome(bad, 60_000)
    });
    s.run(m, "fully polarized rotation range", |rng| {
        let mut res = 0.0f64;
        for _ in 0..200 {
            let drawn = random_state(rng, true);
            for v in SubgroupId::ROTATIONS {
                let (a, _) = rotation_coords(v, drawn.p)?;
                if a.abs() > 0.99 || a.abs() < 1e-3 {
                    continue;
                }
                let flip = a.signum();
                let ps = PolarizationState::new(drawn.intensity, drawn.p.map(|c| flip * c))?;
                let a = a.abs();
                let r = variant_range(v, &ps)?.interval;
                res = res.max(r.lo.abs()).max((r.hi - 2.0 * a / (1.0 - a * a)).abs());
            }
        }
        residual_outcome(res, 1e-10)
    });
    s.run(m, "transform is linear", |rng| {
        let mut res = 0.0f64;
        for _ in 0..200 {
            let mat = random_matrix(rng, 10.0);
            let a = StokesVector(std::array::from_fn(|_| rng.random_range(-10.0..10.0)));
            let b = StokesVector(std::array::from_fn(|_| rng.random_range(-10.0..10.0)));
            let (x, y) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let lhs = transform(&mat, &(a.scale(x) + b.scale(y)));
            let rhs = transform(&mat, &a).scale(x) + transform(&mat, &b).scale(y);
            let scale = lhs.0.iter().chain(&rhs.0).fold(1.0f64, |m, v| m.max(v.abs()));
            for i in 0..4 {
                res = res.max((lhs.0[i] - rhs.0[i]).abs() / scale);
            }
        }
        residual_outcome(res, 1e-14)
    });
    let eps = s.cfg.eps;
    s.run(m, "identity check tracks the cone", |rng| {
        let mut bad = 0;
        for k in 0..1000 {
            let sv = if k % 2 == 0 {
                stokes_from_state(&random_state(rng, k % 4 == 0))?
            } else {
                StokesVector(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
            };
            let inside = minkowski_norm(&sv) >= -eps * sv.s0().powi(2).max(1.0) && sv.s0() >= -eps;
            let second = match check_on_state_eps(&RealMatrix4::IDENTITY, &sv, eps) {
                Ok(r) => r.second_ok,
                Err(_) => false,
            };
            bad += usize::from(second != inside);
        }
        count_outcome(bad, 1000)
    });
}

fn lorentz_checks(s: &mut Suite) {
    let m = Module::LorentzOptics;
    let eps = s.cfg.eps;
    s.run(m, "boost inverse", |rng| {
        let mut res = 0.0f64;
        for _ in 0..200 {
            let b = BoostSpec::new(rng.random_range(-3.0..3.0), random_unit(rng))?;
            let prod = boost_matrix(&b) * boost_matrix(&b.inverse());
            res = res.max(prod.max_abs_diff(&RealMatrix4::IDENTITY));
        }
        residual_outcome(res, eps)
    });
    s.run(m, "invariant is conserved", |rng| {
        let mut res = 0.0f64;
        for k in 0..100 {
            let ps = random_state(rng, k % 4 == 0);
            for _ in 0..100 {
                let b = BoostSpec::new(rng.random_range(-3.0..3.0), random_unit(rng))?;
                let out = act_partial(&b, &ps);
                res = res.max((invariant(&out) - invariant(&ps)).abs() / ps.intensity.powi(2).max(1.0));
            }
        }
        residual_outcome(res, 1e-10)
    });
    s.run(m, "boost along the polarization is monotone", |rng| {
        let mut bad = 0;
        for _ in 0..500 {
            let e = random_unit(rng);
            let p = rng.random_range(0.05..0.95);
            let ps = PolarizationState::new(1.0, e.map(|c| c * p))?;
            // Past 2·atanh p the polarization reverses through zero.
            let beta = rng.random_range(0.01..0.99) * 2.0 * p.atanh();
            let down = act_partial(&BoostSpec::new(beta, e)?, &ps).degree();
            let up = act_partial(&BoostSpec::new(-beta, e)?, &ps).degree();
            bad += usize::from(!(down < p && up > p));
        }
        count_outcome(bad, 500)
    });
    s.run(m, "completely polarized light stays on the sphere", |rng| {
        let mut res = 0.0f64;
        for _ in 0..1000 {
            let b = BoostSpec::new(rng.random_range(-5.0..5.0), random_unit(rng))?;
            let (_, n) = act_full(&b, random_unit(rng), 1.0)?;
            res = res.max(((n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt() - 1.0).abs());
        }
        residual_outcome(res, 1e-12)
    });
    s.run(m, "boost fixed points on the sphere", |rng| {
        let mut res = 0.0f64;
        for _ in 0..200 {
            let e = random_unit(rng);
            let beta = rng.random_range(-3.0..3.0);
            let b = BoostSpec::new(beta, e)?;
            for (sign, factor) in [(1.0, (-beta).exp()), (-1.0, beta.exp())] {
                let n = e.map(|c| sign * c);
                let (i, out) = act_full(&b, n, 1.0)?;
                res = res.max(((i - factor) / factor).abs());
                for k in 0..3 {
                    res = res.max((out[k] - n[k]).abs());
                }
            }
        }
        residual_outcome(res, 1e-12)
    });
    s.run(m, "axial degree formula", |_| {
        let mut res = 0.0f64;
        for i in 0..10 {
            for j in 0..10 {
                let beta = -2.0 + 4.0 * i as f64 / 9.0;
                let theta = PI * j as f64 / 9.0;
                let p = [0.8 * theta.sin(), 0.0, 0.8 * theta.cos()];
                let out = transform_p_axial(beta, p);
                let direct = out[0] * out[0] + out[1] * out[1] + out[2] * out[2];
                res = res.max((direct - degree_sq_after(beta, 0.64, p[2])).abs());
            }
        }
        residual_outcome(res, 1e-12)
    });
    s.run(m, "ellipsoid axial coefficient is positive", |rng| {
        let mut bad = 0;
        for k in 0..=1000 {
            let beta = -5.0 + k as f64 * 0.01;
            let p = rng.random_range(0.0..1.0);
            let e = ellipsoid_image(beta, p)?;
            let want = beta.cosh().powi(2) * (1.0 - p * p) + p * p;
            bad += usize::from(!(e.a_axial > 0.0 && ((e.a_axial - want) / want).abs() <= 1e-12));
        }
        count_outcome(bad, 1001)
    });
    s.run(m, "sphere maps onto the ellipsoid", |rng| {
        let (beta, p) = (1.2, 0.7);
        let e = ellipsoid_image(beta, p)?;
        let mut res = 0.0f64;
        for _ in 0..1000 {
            let out = transform_p_axial(beta, random_unit(rng).map(|c| c * p));
            res = res.max(e.residual(out).abs());
        }
        residual_outcome(res, 1e-9)
    });
    s.run(m, "rest frame", |_| {
        let ps = PolarizationState::new(1.0, [0.0, 0.0, 0.6])?;
        let rf = rest_frame(&ps)?;
        let out = act_partial(&rf.boost(), &ps);
        let res = (rf.i_rest - 0.8).abs().max((out.intensity - 0.8).abs()).max(out.degree());
        residual_outcome(res, 1e-12)
    });
}

fn factorization_checks(s: &mut Suite) {
    let m = Module::Factorization;
    let eps = s.cfg.eps;
    s.run(m, "representations are homomorphisms", |rng| {
        let mut res = 0.0f64;
        for _ in 0..100 {
            let (a, b) = (random_quat(rng), random_quat(rng));
            res = res.max((r_alpha(&a) * r_alpha(&b)).max_abs_diff(&r_alpha(&compose_alpha(&a, &b))));
            res = res.max((r_beta(&a) * r_beta(&b)).max_abs_diff(&r_beta(&compose_beta(&a, &b))));
        }
        residual_outcome(res, 1e-12)
    });
    s.run(m, "alpha and beta representations commute", |rng| {
        let mut res = 0.0f64;
        for _ in 0..100 {
            let (a, b) = (r_alpha(&random_quat(rng)), r_beta(&random_quat(rng)));
            res = res.max((a * b).max_abs_diff(&(b * a)));
        }
        residual_outcome(res, eps)
    });
    s.run(m, "K and K* commute with a real product", |rng| {
        let mut res = 0.0f64;
        for _ in 0..100 {
            let lf = lorentz_from_k(&random_quat(rng));
            res = res.max(lf.commute_residual).max(lf.imag_residual);
        }
        residual_outcome(res, 1e-12)
    });
    s.run(m, "two-parameter special cases", |_| {
        let mut res = 0.0f64;
        for (d, f) in [(1.0, 0.7), (1.3, -1.1), (0.6, 2.4)] {
            for (_, q, want) in factorization_special_cases(d, f) {
                let lf = lorentz_from_k(&q);
                res = res.max(lf.l_matrix.max_abs_diff(&want));
                res = res.max((lf.det - d.powi(8)).abs() / d.powi(8));
            }
        }
        residual_outcome(res, 1e-12)
    });
    s.run(m, "unit real quaternion gives a rotation", |rng| {
        let mut res = 0.0f64;
        for _ in 0..100 {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            let v = v.map(|c| c / n);
            let l = lorentz_from_k(&QuatParams::real(v[0], [v[1], v[2], v[3]])).l_matrix;
            res = res.max((l.transpose() * l).max_abs_diff(&RealMatrix4::IDENTITY));
            res = res.max((l.0[0][0] - 1.0).abs()).max((l.det() - 1.0).abs());
            for i in 1..4 {
                res = res.max(l.0[0][i].abs()).max(l.0[i][0].abs());
            }
        }
        residual_outcome(res, 1e-12)
    });
}

fn chart_sample(variant: SubgroupId, ps: &PolarizationState, f: f64) -> Result<f64> {
    let r = variant_range(variant, ps)?.interval;
    let (lo, hi) = match Chart::of(variant) {
        Chart::Y => (r.lo.max(-1.0 + 1e-9), r.hi.min(1.0 - 1e-9)),
        _ => (r.lo.max(-5.0), r.hi.min(5.0)),
    };
    Ok(lo + f * (hi - lo))
}

fn depolarization_checks(s: &mut Suite) {
    let m = Module::Depolarization;
    let variants: Vec<SubgroupId> = SubgroupId::ROTATIONS.into_iter().chain(SubgroupId::BOOSTS).collect();
    s.run(m, "D vanishes at the identity", |rng| {
        let mut bad = 0;
        for k in 0..100 {
            let ps = random_state(rng, k % 2 == 0);
            for &v in &variants {
                bad += usize::from(d_entity(v, &ps, 0.0)?.d_value != 0.0);
            }
        }
        count_outcome(bad, 1200)
    });
    s.run(m, "matrix action matches the displayed fractions", |rng| {
        let mut res = 0.0f64;
        for k in 0..200 {
            let ps = random_state(rng, k % 2 == 0);
            let v = variants[k % variants.len()];
            let x = chart_sample(v, &ps, rng.random_range(0.0..1.0))?;
            let want = displayed_d(v, ps.p, x).expect("rotation or boost");
            res = res.max((d_entity(v, &ps, x)?.d_value - want).abs());
        }
        residual_outcome(res, 1e-10)
    });
    s.run(m, "rotation D changes sign at the boundaries", |rng| {
        let mut bad = 0;
        let mut total = 0;
        for k in 0..100 {
            let ps = random_state(rng, k % 2 == 0);
            for v in SubgroupId::ROTATIONS {
                let (a, _) = rotation_coords(v, ps.p)?;
                if a.abs() < 1e-2 || a.abs() > 0.99 {
                    continue;
                }
                for r in d_sign_boundaries(v, &ps)?.points {
                    total += 1;
                    let h = 1e-6 * r.abs().max(1.0);
                    let below = d_entity(v, &ps, r - h)?.d_value;
                    let above = d_entity(v, &ps, r + h)?.d_value;
                    bad += usize::from(below * above >= 0.0);
                }
            }
        }
        count_outcome(bad, total)
    });
    s.run(m, "sign regions match sampling", |rng| {
        let mut bad = 0;
        let mut total = 0;
        for k in 0..200 {
            let ps = random_state(rng, k % 2 == 0);
            for &v in &variants {
                let b = d_sign_boundaries(v, &ps)?;
                let param = chart_sample(v, &ps, rng.random_range(0.0..1.0))?;
                let Ok(r) = d_entity(v, &ps, param) else { continue };
                if b.degenerate || r.d_value.abs() < 1e-9 || b.points.iter().any(|p| (p - param).abs() < 1e-6) {
                    continue;
                }
                total += 1;
                bad += usize::from(b.sign_at(param) != Some(r.sign));
            }
        }
        count_outcome(bad, total)
    });
    s.run(m, "fully polarized boost range ends on the sphere", |rng| {
        let mut res = 0.0f64;
        for _ in 0..200 {
            let ps = random_state(rng, true);
            for v in SubgroupId::BOOSTS {
                let [_, _, c] = boost_coords(v, ps.p)?;
                let r = variant_range(v, &ps)?.interval;
                for end in [r.lo, r.hi] {
                    if end.abs() >= 1.0 - 1e-6 || (1.0 + c * end).abs() < 1e-6 {
                        continue;
                    }
                    res = res.max(d_entity(v, &ps, end)?.d_value.abs());
                }
            }
        }
        residual_outcome(res, 1e-10)
    });
    s.run(m, "neutral curve follows the closed form", |_| {
        let grid: Vec<f64> = (0..99).map(|k| -0.9 + 1.8 * k as f64 / 98.0).collect();
        let mut res = 0.0f64;
        for &v in &variants {
            res = res.max(neutral_curve(v, &grid)?.max_deviation);
        }
        residual_outcome(res, 1e-10)
    });
}
