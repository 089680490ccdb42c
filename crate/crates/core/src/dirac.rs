// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dirac 16-basis in the Weyl representation, the fifteen generators
//! α, β, A, B, C and the sixteen real one-parameter subgroups of SL(4,ℝ).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{ComplexMatrix4, RealMatrix4, EPS_ALG};

const O: Complex64 = Complex64::new(0.0, 0.0);
const P: Complex64 = Complex64::new(1.0, 0.0);
const N: Complex64 = Complex64::new(-1.0, 0.0);
const J: Complex64 = Complex64::new(0.0, 1.0);
const NJ: Complex64 = Complex64::new(0.0, -1.0);

type Block = [[Complex64; 2]; 2];

const ZERO2: Block = [[O, O], [O, O]];
const ONE2: Block = [[P, O], [O, P]];
const SIGMA1: Block = [[O, P], [P, O]];
const SIGMA2: Block = [[O, NJ], [J, O]];
const SIGMA3: Block = [[P, O], [O, N]];

fn bscale(b: Block, k: Complex64) -> Block {
    b.map(|row| row.map(|z| z * k))
}

/// The sixteen basis elements. `Identity` plus the fifteen Gell-Mann-type
/// matrices Λ_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisId {
    Identity,
    Gamma5,
    Gamma0,
    IGamma5Gamma0,
    IGamma1,
    Gamma5Gamma1,
    IGamma2,
    Gamma5Gamma2,
    IGamma3,
    Gamma5Gamma3,
    Sigma01,
    Sigma02,
    Sigma03,
    ISigma12,
    ISigma23,
    ISigma31,
}

impl BasisId {
    pub const ALL: [BasisId; 16] = [
        BasisId::Identity,
        BasisId::Gamma5,
        BasisId::Gamma0,
        BasisId::IGamma5Gamma0,
        BasisId::IGamma1,
        BasisId::Gamma5Gamma1,
        BasisId::IGamma2,
        BasisId::Gamma5Gamma2,
        BasisId::IGamma3,
        BasisId::Gamma5Gamma3,
        BasisId::Sigma01,
        BasisId::Sigma02,
        BasisId::Sigma03,
        BasisId::ISigma12,
        BasisId::ISigma23,
        BasisId::ISigma31,
    ];

    /// ASCII spelling used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            BasisId::Identity => "I",
            BasisId::Gamma5 => "g5",
            BasisId::Gamma0 => "g0",
            BasisId::IGamma5Gamma0 => "ig5g0",
            BasisId::IGamma1 => "ig1",
            BasisId::Gamma5Gamma1 => "g5g1",
            BasisId::IGamma2 => "ig2",
            BasisId::Gamma5Gamma2 => "g5g2",
            BasisId::IGamma3 => "ig3",
            BasisId::Gamma5Gamma3 => "g5g3",
            BasisId::Sigma01 => "2s01",
            BasisId::Sigma02 => "2s02",
            BasisId::Sigma03 => "2s03",
            BasisId::ISigma12 => "2is12",
            BasisId::ISigma23 => "2is23",
            BasisId::ISigma31 => "2is31",
        }
    }
}

impl fmt::Display for BasisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasisId::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Exact Weyl-representation matrix of a basis element.
pub fn basis_matrix(id: BasisId) -> ComplexMatrix4 {
    let m = match id {
        BasisId::Identity => return ComplexMatrix4::identity(),
        BasisId::Gamma5 => return ComplexMatrix4::diag([N, N, P, P]),
        BasisId::Sigma03 => return ComplexMatrix4::diag([P, N, N, P]),
        BasisId::ISigma12 => return ComplexMatrix4::diag([P, N, P, N]),
        BasisId::Gamma0 => [[O, O, P, O], [O, O, O, P], [P, O, O, O], [O, P, O, O]],
        BasisId::IGamma5Gamma0 => [[O, O, NJ, O], [O, O, O, NJ], [J, O, O, O], [O, J, O, O]],
        BasisId::IGamma1 => [[O, O, O, NJ], [O, O, NJ, O], [O, J, O, O], [J, O, O, O]],
        BasisId::Gamma5Gamma1 => [[O, O, O, P], [O, O, P, O], [O, P, O, O], [P, O, O, O]],
        BasisId::IGamma2 => [[O, O, O, N], [O, O, P, O], [O, P, O, O], [N, O, O, O]],
        BasisId::Gamma5Gamma2 => [[O, O, O, NJ], [O, O, J, O], [O, NJ, O, O], [J, O, O, O]],
        BasisId::IGamma3 => [[O, O, NJ, O], [O, O, O, J], [J, O, O, O], [O, NJ, O, O]],
        BasisId::Gamma5Gamma3 => [[O, O, P, O], [O, O, O, N], [P, O, O, O], [O, N, O, O]],
        BasisId::Sigma01 => [[O, P, O, O], [P, O, O, O], [O, O, O, N], [O, O, N, O]],
        BasisId::Sigma02 => [[O, NJ, O, O], [J, O, O, O], [O, O, O, J], [O, O, NJ, O]],
        BasisId::ISigma23 => [[O, P, O, O], [P, O, O, O], [O, O, O, P], [O, O, P, O]],
        BasisId::ISigma31 => [[O, NJ, O, O], [J, O, O, O], [O, O, O, NJ], [O, O, J, O]],
    };
    ComplexMatrix4(m)
}

/// Individual Dirac matrix γ^μ, μ = 0..3, and γ⁵ for μ = 5.
pub fn gamma(mu: usize) -> Result<ComplexMatrix4> {
    let minus_i = Complex64::new(0.0, -1.0);
    match mu {
        0 => Ok(basis_matrix(BasisId::Gamma0)),
        1 => Ok(basis_matrix(BasisId::IGamma1).scale(minus_i)),
        2 => Ok(basis_matrix(BasisId::IGamma2).scale(minus_i)),
        3 => Ok(basis_matrix(BasisId::IGamma3).scale(minus_i)),
        5 => Ok(basis_matrix(BasisId::Gamma5)),
        _ => Err(Error::InvalidArgument(format!("no gamma matrix with index {mu}"))),
    }
}

/// Result of the three Gell-Mann predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GellMann {
    pub traceless: bool,
    pub hermitian: bool,
    pub involutive: bool,
}

impl GellMann {
    pub fn all(&self) -> bool {
        self.traceless && self.hermitian && self.involutive
    }
}

pub fn gell_mann_check(m: &ComplexMatrix4) -> GellMann {
    gell_mann_check_eps(m, EPS_ALG)
}

pub fn gell_mann_check_eps(m: &ComplexMatrix4, eps: f64) -> GellMann {
    GellMann {
        traceless: m.trace().norm() <= eps,
        hermitian: m.adjoint().approx_eq(m, eps),
        involutive: (*m * *m).approx_eq(&ComplexMatrix4::identity(), eps),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Alpha,
    Beta,
    A,
    B,
    C,
}

/// One of the fifteen generators α_i, β_i, A_i, B_i, C_i (i = 1..3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    pub family: Family,
    pub index: u8,
}

impl GeneratorId {
    pub const fn new(family: Family, index: u8) -> Self {
        GeneratorId { family, index }
    }

    pub const A1: GeneratorId = GeneratorId::new(Family::A, 1);
    pub const A2: GeneratorId = GeneratorId::new(Family::A, 2);
    pub const A3: GeneratorId = GeneratorId::new(Family::A, 3);
    pub const B1: GeneratorId = GeneratorId::new(Family::B, 1);
    pub const B2: GeneratorId = GeneratorId::new(Family::B, 2);
    pub const B3: GeneratorId = GeneratorId::new(Family::B, 3);
    pub const C1: GeneratorId = GeneratorId::new(Family::C, 1);
    pub const C2: GeneratorId = GeneratorId::new(Family::C, 2);
    pub const C3: GeneratorId = GeneratorId::new(Family::C, 3);

    pub const fn alpha(i: u8) -> Self {
        GeneratorId::new(Family::Alpha, i)
    }

    pub const fn beta(i: u8) -> Self {
        GeneratorId::new(Family::Beta, i)
    }

    pub fn all() -> impl Iterator<Item = GeneratorId> {
        [Family::Alpha, Family::Beta, Family::A, Family::B, Family::C]
            .into_iter()
            .flat_map(|f| (1..=3).map(move |i| GeneratorId::new(f, i)))
    }

    /// For the nine products α_iβ_j, the A/B/C generator they equal:
    /// family is picked by j, index by i.
    pub fn product_of(alpha: u8, beta: u8) -> Self {
        let family = match beta {
            1 => Family::A,
            2 => Family::B,
            _ => Family::C,
        };
        GeneratorId::new(family, alpha)
    }

    pub fn name(&self) -> String {
        let prefix = match self.family {
            Family::Alpha => 'a',
            Family::Beta => 'b',
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
        };
        format!("{prefix}{}", self.index)
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownName(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(unknown)? {
            'a' => Family::Alpha,
            'b' => Family::Beta,
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            _ => return Err(unknown()),
        };
        let index = match chars.as_str() {
            "1" => 1,
            "2" => 2,
            "3" => 3,
            _ => return Err(unknown()),
        };
        Ok(GeneratorId::new(family, index))
    }
}

/// Block form of a generator.
pub fn generator(id: GeneratorId) -> ComplexMatrix4 {
    let b = ComplexMatrix4::from_blocks;
    let neg = |m: Block| bscale(m, N);
    let i = |m: Block| bscale(m, J);
    match (id.family, id.index) {
        (Family::Alpha, 1) => b(SIGMA2, ZERO2, ZERO2, neg(SIGMA2)),
        (Family::Alpha, 2) => b(ZERO2, i(ONE2), neg(i(ONE2)), ZERO2),
        (Family::Alpha, _) => b(ZERO2, SIGMA2, SIGMA2, ZERO2),
        (Family::Beta, 1) => b(SIGMA2, ZERO2, ZERO2, SIGMA2),
        (Family::Beta, 2) => b(ZERO2, neg(i(SIGMA3)), i(SIGMA3), ZERO2),
        (Family::Beta, _) => b(ZERO2, neg(i(SIGMA1)), i(SIGMA1), ZERO2),
        (Family::A, 1) => b(ONE2, ZERO2, ZERO2, neg(ONE2)),
        (Family::A, 2) => b(ZERO2, i(SIGMA2), neg(i(SIGMA2)), ZERO2),
        (Family::A, _) => b(ZERO2, ONE2, ONE2, ZERO2),
        (Family::B, 1) => b(ZERO2, SIGMA1, SIGMA1, ZERO2),
        (Family::B, 2) => b(neg(SIGMA3), ZERO2, ZERO2, neg(SIGMA3)),
        (Family::B, _) => b(neg(SIGMA1), ZERO2, ZERO2, SIGMA1),
        (Family::C, 1) => b(ZERO2, neg(SIGMA3), neg(SIGMA3), ZERO2),
        (Family::C, 2) => b(neg(SIGMA1), ZERO2, ZERO2, neg(SIGMA1)),
        (Family::C, _) => b(SIGMA3, ZERO2, ZERO2, neg(SIGMA3)),
    }
}

/// `cos(a)·I + i·sin(a)·Λ`. Valid for any involutive Λ, in particular every
/// generator.
pub fn exp_generator(id: GeneratorId, a: Complex64) -> ComplexMatrix4 {
    exp_involution(&generator(id), a)
}

pub fn exp_involution(lambda: &ComplexMatrix4, a: Complex64) -> ComplexMatrix4 {
    ComplexMatrix4::identity().scale(a.cos()) + lambda.scale(J * a.sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Angle,
    Rapidity,
    LogScale,
}

/// The sixteen elementary one-parameter subgroups.
#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SubgroupId {
    U0,
    U1a,
    U2a,
    U3a,
    U1b,
    U2b,
    U3b,
    U1A,
    U2A,
    U3A,
    U1B,
    U2B,
    U3B,
    U1C,
    U2C,
    U3C,
}

impl SubgroupId {
    pub const ALL: [SubgroupId; 16] = [
        SubgroupId::U0,
        SubgroupId::U1a,
        SubgroupId::U2a,
        SubgroupId::U3a,
        SubgroupId::U1b,
        SubgroupId::U2b,
        SubgroupId::U3b,
        SubgroupId::U1A,
        SubgroupId::U2A,
        SubgroupId::U3A,
        SubgroupId::U1B,
        SubgroupId::U2B,
        SubgroupId::U3B,
        SubgroupId::U1C,
        SubgroupId::U2C,
        SubgroupId::U3C,
    ];

    pub const ROTATIONS: [SubgroupId; 6] = [
        SubgroupId::U1a,
        SubgroupId::U2a,
        SubgroupId::U3a,
        SubgroupId::U1b,
        SubgroupId::U2b,
        SubgroupId::U3b,
    ];

    pub const BOOSTS: [SubgroupId; 6] = [
        SubgroupId::U2A,
        SubgroupId::U3A,
        SubgroupId::U1B,
        SubgroupId::U3B,
        SubgroupId::U1C,
        SubgroupId::U2C,
    ];

    pub const DIAGONAL: [SubgroupId; 4] =
        [SubgroupId::U0, SubgroupId::U2B, SubgroupId::U1A, SubgroupId::U3C];

    pub fn name(self) -> &'static str {
        match self {
            SubgroupId::U0 => "U0",
            SubgroupId::U1a => "U1a",
            SubgroupId::U2a => "U2a",
            SubgroupId::U3a => "U3a",
            SubgroupId::U1b => "U1b",
            SubgroupId::U2b => "U2b",
            SubgroupId::U3b => "U3b",
            SubgroupId::U1A => "U1A",
            SubgroupId::U2A => "U2A",
            SubgroupId::U3A => "U3A",
            SubgroupId::U1B => "U1B",
            SubgroupId::U2B => "U2B",
            SubgroupId::U3B => "U3B",
            SubgroupId::U1C => "U1C",
            SubgroupId::U2C => "U2C",
            SubgroupId::U3C => "U3C",
        }
    }

    /// The generator Λ with U(t) = exp(i·a·Λ); `None` for U₀.
    pub fn generator(self) -> Option<GeneratorId> {
        let (family, index) = match self {
            SubgroupId::U0 => return None,
            SubgroupId::U1a => (Family::Alpha, 1),
            SubgroupId::U2a => (Family::Alpha, 2),
            SubgroupId::U3a => (Family::Alpha, 3),
            SubgroupId::U1b => (Family::Beta, 1),
            SubgroupId::U2b => (Family::Beta, 2),
            SubgroupId::U3b => (Family::Beta, 3),
            SubgroupId::U1A => (Family::A, 1),
            SubgroupId::U2A => (Family::A, 2),
            SubgroupId::U3A => (Family::A, 3),
            SubgroupId::U1B => (Family::B, 1),
            SubgroupId::U2B => (Family::B, 2),
            SubgroupId::U3B => (Family::B, 3),
            SubgroupId::U1C => (Family::C, 1),
            SubgroupId::U2C => (Family::C, 2),
            SubgroupId::U3C => (Family::C, 3),
        };
        Some(GeneratorId::new(family, index))
    }

    pub fn param_kind(self) -> ParamKind {
        match self {
            SubgroupId::U1a
            | SubgroupId::U2a
            | SubgroupId::U3a
            | SubgroupId::U1b
            | SubgroupId::U2b
            | SubgroupId::U3b => ParamKind::Angle,
            SubgroupId::U0 | SubgroupId::U1A | SubgroupId::U2B | SubgroupId::U3C => {
                ParamKind::LogScale
            }
            _ => ParamKind::Rapidity,
        }
    }

    /// Complex exponent `a(t)` with U(t) = cos a + i sin a · Λ: `t` for
    /// angles, `i t` otherwise.
    pub fn exponent(self, t: f64) -> Complex64 {
        match self.param_kind() {
            ParamKind::Angle => Complex64::new(t, 0.0),
            _ => Complex64::new(0.0, t),
        }
    }
}

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubgroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubgroupId::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Real closed form of the subgroup element at parameter `t`.
pub fn one_param_element(id: SubgroupId, t: f64) -> RealMatrix4 {
    let (c, s) = match id.param_kind() {
        ParamKind::Angle => (t.cos(), t.sin()),
        ParamKind::Rapidity => (t.cosh(), t.sinh()),
        ParamKind::LogScale => (0.0, 0.0),
    };
    let m = match id {
        SubgroupId::U0 | SubgroupId::U1A | SubgroupId::U2B | SubgroupId::U3C => {
            let (ep, em) = (t.exp(), (-t).exp());
            let d = match id {
                SubgroupId::U0 => [em; 4],
                SubgroupId::U1A => [em, em, ep, ep],
                SubgroupId::U2B => [ep, em, ep, em],
                _ => [em, ep, ep, em],
            };
            return RealMatrix4::diag(d);
        }
        SubgroupId::U1a => [[c, s, 0., 0.], [-s, c, 0., 0.], [0., 0., c, -s], [0., 0., s, c]],
        SubgroupId::U2a => [[c, 0., -s, 0.], [0., c, 0., -s], [s, 0., c, 0.], [0., s, 0., c]],
        SubgroupId::U3a => [[c, 0., 0., s], [0., c, -s, 0.], [0., s, c, 0.], [-s, 0., 0., c]],
        SubgroupId::U1b => [[c, s, 0., 0.], [-s, c, 0., 0.], [0., 0., c, s], [0., 0., -s, c]],
        SubgroupId::U2b => [[c, 0., s, 0.], [0., c, 0., -s], [-s, 0., c, 0.], [0., s, 0., c]],
        SubgroupId::U3b => [[c, 0., 0., s], [0., c, s, 0.], [0., -s, c, 0.], [-s, 0., 0., c]],
        SubgroupId::U2A => [[c, 0., 0., -s], [0., c, s, 0.], [0., s, c, 0.], [-s, 0., 0., c]],
        SubgroupId::U3A => [[c, 0., -s, 0.], [0., c, 0., -s], [-s, 0., c, 0.], [0., -s, 0., c]],
        SubgroupId::U1B => [[c, 0., 0., -s], [0., c, -s, 0.], [0., -s, c, 0.], [-s, 0., 0., c]],
        SubgroupId::U3B => [[c, s, 0., 0.], [s, c, 0., 0.], [0., 0., c, -s], [0., 0., -s, c]],
        SubgroupId::U1C => [[c, 0., s, 0.], [0., c, 0., -s], [s, 0., c, 0.], [0., -s, 0., c]],
        SubgroupId::U2C => [[c, s, 0., 0.], [s, c, 0., 0.], [0., 0., c, s], [0., 0., s, c]],
    };
    RealMatrix4(m)
}

/// Generator with an overall sign, as used in the triplet listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedGenerator {
    pub negated: bool,
    pub id: GeneratorId,
}

impl SignedGenerator {
    pub const fn plus(id: GeneratorId) -> Self {
        SignedGenerator { negated: false, id }
    }

    pub const fn minus(id: GeneratorId) -> Self {
        SignedGenerator { negated: true, id }
    }

    pub fn matrix(&self) -> ComplexMatrix4 {
        let g = generator(self.id);
        if self.negated {
            -g
        } else {
            g
        }
    }
}

impl fmt::Display for SignedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negated { "-" } else { "" }, self.id)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Triplet {
    pub name: &'static str,
    pub members: [SignedGenerator; 3],
}

/// The six listed commuting triplets K, L, M, K′, L′, M′, verbatim.
pub fn commuting_triplets() -> [Triplet; 6] {
    use GeneratorId as G;
    use SignedGenerator as S;
    [
        Triplet { name: "K", members: [S::plus(G::A1), S::plus(G::B2), S::plus(G::C3)] },
        Triplet { name: "L", members: [S::plus(G::C1), S::plus(G::A2), S::plus(G::B3)] },
        Triplet { name: "M", members: [S::plus(G::B1), S::plus(G::C2), S::plus(G::A3)] },
        Triplet { name: "K'", members: [S::minus(G::C1), S::minus(G::B2), S::minus(G::C3)] },
        Triplet { name: "L'", members: [S::minus(G::B1), S::minus(G::A2), S::minus(G::B3)] },
        Triplet { name: "M'", members: [S::minus(G::A1), S::minus(G::C2), S::minus(G::B3)] },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripletCheck {
    /// `Γ₁Γ₂ = −Γ₃`, `Γ₂Γ₃ = −Γ₁`, `Γ₃Γ₁ = −Γ₂`.
    pub products: [bool; 3],
    pub commute: bool,
    pub max_residual: f64,
}

impl TripletCheck {
    pub fn closes(&self) -> bool {
        self.products.iter().all(|&b| b) && self.commute
    }
}

pub fn check_triplet(t: &Triplet) -> TripletCheck {
    let g = t.members.map(|m| m.matrix());
    let mut products = [false; 3];
    let mut max_residual = 0.0f64;
    for (k, (p, q, r)) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)].into_iter().enumerate() {
        let res = (g[p] * g[q]).max_abs_diff(&-g[r]);
        max_residual = max_residual.max(res);
        products[k] = res <= EPS_ALG;
    }
    let mut commute = true;
    for (p, q) in [(0, 1), (1, 2), (0, 2)] {
        let res = g[p].commutator(&g[q]).max_abs();
        max_residual = max_residual.max(res);
        commute &= res <= EPS_ALG;
    }
    TripletCheck { products, commute, max_residual }
}

/// An su(2)-type triple with `X₁X₂ = sign·i·X₃` (and cyclic).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Su2Triple {
    pub members: [GeneratorId; 3],
    pub sign: f64,
}

const SU2_MEMBERS: [[GeneratorId; 3]; 20] = {
    use GeneratorId as G;
    [
        [G::alpha(1), G::alpha(2), G::alpha(3)],
        [G::beta(1), G::beta(2), G::beta(3)],
        [G::alpha(1), G::A2, G::A3],
        [G::A1, G::alpha(2), G::A3],
        [G::A1, G::A2, G::alpha(3)],
        [G::alpha(1), G::B2, G::B3],
        [G::B1, G::alpha(2), G::B3],
        [G::B1, G::B2, G::alpha(3)],
        [G::alpha(1), G::C2, G::C3],
        [G::C1, G::alpha(2), G::C3],
        [G::C1, G::C2, G::alpha(3)],
        [G::beta(1), G::B1, G::C1],
        [G::beta(1), G::B2, G::C2],
        [G::beta(1), G::B3, G::C3],
        [G::A1, G::beta(2), G::C1],
        [G::A2, G::beta(2), G::C2],
        [G::A3, G::beta(2), G::C3],
        [G::A1, G::B1, G::beta(3)],
        [G::A2, G::B2, G::beta(3)],
        [G::A3, G::B3, G::beta(3)],
    ]
};

/// The twenty su(2) triples. Structure signs are read off the generator
/// products on first use.
pub fn su2_catalog() -> &'static [Su2Triple; 20] {
    static CATALOG: OnceLock<[Su2Triple; 20]> = OnceLock::new();
    CATALOG.get_or_init(|| {
        SU2_MEMBERS.map(|members| {
            let x = members.map(generator);
            let prod = x[0] * x[1];
            let plus = prod.max_abs_diff(&x[2].scale(J));
            let minus = prod.max_abs_diff(&x[2].scale(NJ));
            Su2Triple { members, sign: if plus <= minus { 1.0 } else { -1.0 } }
        })
    })
}

/// Largest deviation from `X_pX_q = sign·i·X_r` (cyclic) and from mutual
/// anticommutation.
pub fn su2_residual(t: &Su2Triple) -> f64 {
    let x = t.members.map(generator);
    let si = Complex64::new(0.0, t.sign);
    let mut res = 0.0f64;
    for (p, q, r) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        res = res.max((x[p] * x[q]).max_abs_diff(&x[r].scale(si)));
        res = res.max((x[q] * x[p]).max_abs_diff(&x[r].scale(-si)));
    }
    res
}

/// Largest commutator residual over the nine pairs (α_j, β_k).
pub fn alpha_beta_commutation_residual() -> f64 {
    let mut res = 0.0f64;
    for j in 1..=3 {
        for k in 1..=3 {
            let a = generator(GeneratorId::alpha(j));
            let b = generator(GeneratorId::beta(k));
            res = res.max(a.commutator(&b).max_abs());
        }
    }
    res
}

pub fn verify_commutation_alpha_beta() -> bool {
    alpha_beta_commutation_residual() <= EPS_ALG
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g(mu: usize) -> ComplexMatrix4 {
        gamma(mu).unwrap()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(basis_matrix(BasisId::Gamma5), ComplexMatrix4::diag([N, N, P, P]));
        assert_eq!(basis_matrix(BasisId::Sigma03), ComplexMatrix4::diag([P, N, N, P]));
        assert_eq!(basis_matrix(BasisId::Identity), ComplexMatrix4::identity());
    }

    #[test]
    fn basis_is_gell_mann() {
        for id in BasisId::ALL.into_iter().skip(1) {
            assert!(gell_mann_check(&basis_matrix(id)).all(), "{id}");
        }
        let i = gell_mann_check(&ComplexMatrix4::identity());
        assert_eq!(
            i,
            GellMann { traceless: false, hermitian: true, involutive: true }
        );
        let shifted = basis_matrix(BasisId::Gamma0) + ComplexMatrix4::identity();
        assert_eq!(
            gell_mann_check(&shifted),
            GellMann { traceless: false, hermitian: true, involutive: false }
        );
    }

    #[test]
    fn basis_entries_are_units() {
        for id in BasisId::ALL {
            for z in basis_matrix(id).0.iter().flatten() {
                assert!([O, P, N, J, NJ].contains(z));
            }
        }
    }

    #[test]
    fn basis_is_linearly_independent() {
        // Trace orthogonality tr(Λ_a Λ_b) = 4δ_ab.
        for a in BasisId::ALL {
            for b in BasisId::ALL {
                let tr = (basis_matrix(a) * basis_matrix(b)).trace();
                let want = if a == b { 4.0 } else { 0.0 };
                assert!((tr - c(want, 0.0)).norm() < 1e-14, "{a} {b}");
            }
        }
    }

    #[test]
    fn basis_products_of_gammas() {
        let i = c(0.0, 1.0);
        let cases = [
            (BasisId::IGamma5Gamma0, (g(5) * g(0)).scale(i)),
            (BasisId::Gamma5Gamma1, g(5) * g(1)),
            (BasisId::Gamma5Gamma2, g(5) * g(2)),
            (BasisId::Gamma5Gamma3, g(5) * g(3)),
        ];
        for (id, want) in cases {
            assert!(basis_matrix(id).approx_eq(&want, EPS_ALG), "{id}");
        }
        let sigma = |m: usize, n: usize| (g(m) * g(n) - g(n) * g(m)).scale(c(0.25, 0.0));
        let two = c(2.0, 0.0);
        let two_i = c(0.0, 2.0);
        let cases = [
            (BasisId::Sigma01, sigma(0, 1).scale(two)),
            (BasisId::Sigma02, sigma(0, 2).scale(two)),
            (BasisId::Sigma03, sigma(0, 3).scale(two)),
            (BasisId::ISigma12, sigma(1, 2).scale(two_i)),
            (BasisId::ISigma23, sigma(2, 3).scale(two_i)),
            (BasisId::ISigma31, sigma(3, 1).scale(two_i)),
        ];
        for (id, want) in cases {
            assert!(basis_matrix(id).approx_eq(&want, EPS_ALG), "{id}");
        }
    }

    #[test]
    fn clifford_relations() {
        let eta = [1.0, -1.0, -1.0, -1.0];
        for m in 0..4 {
            for n in 0..4 {
                let anti = g(m) * g(n) + g(n) * g(m);
                let want = if m == n {
                    ComplexMatrix4::identity().scale(c(2.0 * eta[m], 0.0))
                } else {
                    ComplexMatrix4::ZERO
                };
                assert!(anti.approx_eq(&want, EPS_ALG));
            }
        }
        // γ⁵ = diag(−1,−1,1,1) fixes the chirality sign here.
        let g5 = (g(0) * g(1) * g(2) * g(3)).scale(c(0.0, -1.0));
        assert!(g5.approx_eq(&g(5), EPS_ALG));
        assert!(gamma(4).is_err());
    }

    #[test]
    fn names_round_trip() {
        for id in BasisId::ALL {
            assert_eq!(id.name().parse::<BasisId>().unwrap(), id);
        }
        for id in GeneratorId::all() {
            assert_eq!(id.name().parse::<GeneratorId>().unwrap(), id);
        }
        for id in SubgroupId::ALL {
            assert_eq!(id.name().parse::<SubgroupId>().unwrap(), id);
        }
        assert_eq!(GeneratorId::all().count(), 15);
        assert!("a4".parse::<GeneratorId>().is_err());
        assert!("U4a".parse::<SubgroupId>().is_err());
    }

    #[test]
    fn generators_are_gell_mann() {
        for id in GeneratorId::all() {
            assert!(gell_mann_check(&generator(id)).all(), "{id}");
        }
    }

    #[test]
    fn alpha_beta_from_gammas() {
        let i = c(0.0, 1.0);
        let cases = [
            (GeneratorId::alpha(1), g(0) * g(2)),
            (GeneratorId::alpha(2), (g(0) * g(5)).scale(i)),
            (GeneratorId::alpha(3), g(5) * g(2)),
            (GeneratorId::beta(1), (g(3) * g(1)).scale(i)),
            (GeneratorId::beta(2), g(3).scale(i)),
            (GeneratorId::beta(3), g(1).scale(i)),
        ];
        for (id, want) in cases {
            assert!(generator(id).approx_eq(&want, EPS_ALG), "{id}");
        }
    }

    #[test]
    fn alpha_and_beta_algebra() {
        let a = |k| generator(GeneratorId::alpha(k));
        let b = |k| generator(GeneratorId::beta(k));
        let i = c(0.0, 1.0);
        assert!((a(1) * a(2)).approx_eq(&a(3).scale(i), EPS_ALG));
        assert!((a(2) * a(1)).approx_eq(&a(3).scale(-i), EPS_ALG));
        assert!((b(1) * b(2)).approx_eq(&b(3).scale(i), EPS_ALG));
        assert!((b(2) * b(1)).approx_eq(&b(3).scale(-i), EPS_ALG));
        assert!(verify_commutation_alpha_beta());
        assert!(a(1).commutator(&b(3)).max_abs() <= EPS_ALG);
        assert!(a(1).commutator(&a(2)).max_abs() > 1.0);
    }

    #[test]
    fn products_alpha_beta() {
        for i in 1..=3 {
            for j in 1..=3 {
                let prod = generator(GeneratorId::alpha(i)) * generator(GeneratorId::beta(j));
                let id = GeneratorId::product_of(i, j);
                assert!(prod.approx_eq(&generator(id), EPS_ALG), "a{i} b{j}");
            }
        }
    }

    #[test]
    fn abc_from_gammas() {
        let i = c(0.0, 1.0);
        let cases = [
            (GeneratorId::A1, -g(5)),
            (GeneratorId::B1, g(5) * g(1)),
            (GeneratorId::C1, g(3) * g(5)),
            (GeneratorId::A2, g(2).scale(-i)),
            (GeneratorId::B2, (g(1) * g(2)).scale(-i)),
            (GeneratorId::C2, (g(2) * g(3)).scale(-i)),
            (GeneratorId::A3, g(0)),
            // Opposite sign to the conventional γ⁰γ¹.
            (GeneratorId::B3, -(g(0) * g(1))),
            (GeneratorId::C3, g(0) * g(3)),
        ];
        for (id, want) in cases {
            assert!(generator(id).approx_eq(&want, EPS_ALG), "{id}");
        }
        assert!(!generator(GeneratorId::B3).approx_eq(&(g(0) * g(1)), EPS_ALG));
    }

    #[test]
    fn exp_generator_examples() {
        for id in GeneratorId::all() {
            assert!(exp_generator(id, c(0.0, 0.0)).approx_eq(&ComplexMatrix4::identity(), 0.0));
        }
        let a = c(0.7, 0.0);
        let ea = (J * a).exp();
        let want = ComplexMatrix4::diag([ea, ea, ea.conj(), ea.conj()]);
        assert!(exp_generator(GeneratorId::A1, a).approx_eq(&want, EPS_ALG));
        let e1 = exp_generator(GeneratorId::alpha(1), a);
        assert!((e1 * e1).approx_eq(&exp_generator(GeneratorId::alpha(1), a * 2.0), EPS_ALG));
    }

    #[test]
    fn exp_generator_is_unitary_for_real_argument() {
        for id in GeneratorId::all() {
            let u = exp_generator(id, c(1.3, 0.0));
            assert!((u * u.adjoint()).approx_eq(&ComplexMatrix4::identity(), EPS_ALG));
        }
    }

    #[test]
    fn one_param_examples() {
        assert_eq!(one_param_element(SubgroupId::U1a, 0.0), RealMatrix4::IDENTITY);
        let m = one_param_element(SubgroupId::U2B, 2f64.ln());
        assert!(m.approx_eq(&RealMatrix4::diag([2.0, 0.5, 2.0, 0.5]), 1e-15));
        let (ch, sh) = (0.5f64.cosh(), 0.5f64.sinh());
        let want = RealMatrix4([
            [ch, 0.0, 0.0, -sh],
            [0.0, ch, sh, 0.0],
            [0.0, sh, ch, 0.0],
            [-sh, 0.0, 0.0, ch],
        ]);
        assert_eq!(one_param_element(SubgroupId::U2A, 0.5), want);
        let u0 = one_param_element(SubgroupId::U0, 0.3);
        assert!((u0.det() - (-1.2f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_exponential() {
        for id in SubgroupId::ALL.into_iter().skip(1) {
            let gen = id.generator().unwrap();
            for t in [-2.1, -0.4, 0.0, 0.9, 3.0] {
                let want = exp_generator(gen, id.exponent(t));
                let got = one_param_element(id, t).to_complex();
                let scale = t.abs().cosh();
                assert!(want.max_imag() <= EPS_ALG * scale, "{id} not real");
                assert!(got.approx_eq(&want, EPS_ALG * scale), "{id} at {t}");
            }
        }
    }

    #[test]
    fn param_kinds() {
        use ParamKind::*;
        let angle = SubgroupId::ALL.iter().filter(|v| v.param_kind() == Angle).count();
        let rap = SubgroupId::ALL.iter().filter(|v| v.param_kind() == Rapidity).count();
        assert_eq!((angle, rap), (6, 6));
        for v in SubgroupId::DIAGONAL {
            assert_eq!(v.param_kind(), LogScale);
        }
        for v in SubgroupId::ROTATIONS {
            assert_eq!(v.param_kind(), Angle);
        }
        for v in SubgroupId::BOOSTS {
            assert_eq!(v.param_kind(), Rapidity);
        }
    }

    #[test]
    fn triplets_as_listed() {
        let t = commuting_triplets();
        let names: Vec<_> = t.iter().map(|t| t.name).collect();
        assert_eq!(names, ["K", "L", "M", "K'", "L'", "M'"]);
        assert_eq!(
            t[0].members.map(|m| m.id),
            [GeneratorId::A1, GeneratorId::B2, GeneratorId::C3]
        );
        let a1 = generator(GeneratorId::A1);
        let b2 = generator(GeneratorId::B2);
        assert!((a1 * b2).approx_eq(&-generator(GeneratorId::C3), EPS_ALG));
        assert!(a1.commutator(&b2).max_abs() <= EPS_ALG);
    }

    #[test]
    fn which_triplets_close() {
        let closes: Vec<bool> = commuting_triplets()
            .iter()
            .map(|t| check_triplet(t).closes())
            .collect();
        // K' and L' as listed repeat a family (C1/C3, B1/B3), whose members
        // anticommute.
        assert_eq!(closes, [true, true, true, false, false, true]);
        let commute: Vec<bool> = commuting_triplets()
            .iter()
            .map(|t| check_triplet(t).commute)
            .collect();
        assert_eq!(commute, [true, true, true, false, false, true]);
    }

    #[test]
    fn negated_triples_that_close() {
        use GeneratorId as G;
        use SignedGenerator as S;
        let alt = [
            [G::A1, G::B3, G::C2],
            [G::A2, G::B1, G::C3],
            [G::A3, G::B2, G::C1],
        ];
        for members in alt {
            let t = Triplet { name: "alt", members: members.map(S::minus) };
            assert!(check_triplet(&t).closes());
        }
        let suggested = Triplet {
            name: "M'?",
            members: [S::minus(G::A1), S::minus(G::C2), S::minus(G::A3)],
        };
        assert!(!check_triplet(&suggested).closes());
    }

    #[test]
    fn su2_catalog_closes() {
        let cat = su2_catalog();
        assert_eq!(cat.len(), 20);
        assert_eq!(
            cat[0].members,
            [GeneratorId::alpha(1), GeneratorId::alpha(2), GeneratorId::alpha(3)]
        );
        assert!(cat
            .iter()
            .any(|t| t.members == [GeneratorId::beta(1), GeneratorId::B2, GeneratorId::C2]));
        for t in cat {
            assert!(su2_residual(t) <= EPS_ALG, "{:?}", t.members);
            assert_eq!(t.sign, 1.0);
        }
    }

    proptest! {
        #[test]
        fn group_law(idx in 0usize..16, s in -3.0..3.0f64, t in -3.0..3.0f64) {
            let id = SubgroupId::ALL[idx];
            let prod = one_param_element(id, s) * one_param_element(id, t);
            let direct = one_param_element(id, s + t);
            let scale = direct.0.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
            prop_assert!(prod.max_abs_diff(&direct) <= EPS_ALG * scale);
        }

        #[test]
        fn unit_determinant(idx in 1usize..16, t in -5.0..5.0f64) {
            let id = SubgroupId::ALL[idx];
            prop_assert!((one_param_element(id, t).det() - 1.0).abs() <= 1e-10);
        }

        #[test]
        fn abelian_two_parameter(i in 1u8..=3, j in 1u8..=3, a in -3.0..3.0f64, b in -3.0..3.0f64) {
            let ea = exp_generator(GeneratorId::alpha(i), c(a, 0.0));
            let eb = exp_generator(GeneratorId::beta(j), c(b, 0.0));
            prop_assert!((ea * eb).approx_eq(&(eb * ea), EPS_ALG));
        }
    }
}
