//! Triangles: the twelve canonical invariants, their extraction from the
//! basic group identity, derived quantities and special configurations.

mod derived;
mod sample;
mod solve;
mod vertices;

pub use derived::{
    area_from, coarea_from, derived, derived_with, existence_check, gramm_polynomial,
    DerivedInvariants, ExistenceEntry, ExistenceReport, SymmetricValue,
};
pub use sample::{sample_corpus, sample_triangle, SampleMode};
pub use solve::{complete_lateral_phases, solve, solve_sas, solve_with, SasInput, SolveOptions};
pub use vertices::{from_vertices, vertices_of, VertexTriangle};

use serde::{Deserialize, Serialize};

use crate::algebra::Generator;
use crate::group::{word, GroupElement};
use crate::scalars::{sink, SpaceLabels};

/// The twelve invariants of a triangle with vertices A, B, C and opposite sides a, b, c.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleData {
    pub labels: SpaceLabels,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi_a: f64,
    pub phi_b: f64,
    pub phi_c: f64,
    pub angle_a: f64,
    pub angle_b: f64,
    pub angle_c: f64,
    pub psi_a: f64,
    pub psi_b: f64,
    pub psi_c: f64,
    /// Entrywise deviation of the reconstructed factorization.
    pub residual: f64,
}

/// Signed compact notation: x = (−a, b, c), X = (−A, B, C) and likewise for phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Compact {
    pub sides: [f64; 3],
    pub angles: [f64; 3],
    pub lateral: [f64; 3],
    pub angular: [f64; 3],
}

impl Compact {
    /// ω = ψ_I + ψ_J + φ_k, any cyclic choice.
    pub fn omega(&self) -> f64 {
        self.angular[0] + self.angular[1] + self.lateral[2]
    }

    /// Ω = φ_i + φ_j + ψ_K.
    pub fn big_omega(&self) -> f64 {
        self.lateral[0] + self.lateral[1] + self.angular[2]
    }
}

/// Cyclic index triples (i, j, k).
pub const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

impl TriangleData {
    pub fn zero(labels: SpaceLabels) -> Self {
        Self::from_compact(
            labels,
            &Compact {
                sides: [0.0; 3],
                angles: [0.0; 3],
                lateral: [0.0; 3],
                angular: [0.0; 3],
            },
        )
    }

    pub fn compact(&self) -> Compact {
        Compact {
            sides: [-self.a, self.b, self.c],
            angles: [-self.angle_a, self.angle_b, self.angle_c],
            lateral: [-self.phi_a, self.phi_b, self.phi_c],
            angular: [-self.psi_a, self.psi_b, self.psi_c],
        }
    }

    pub fn from_compact(labels: SpaceLabels, k: &Compact) -> Self {
        Self {
            labels,
            a: -k.sides[0],
            b: k.sides[1],
            c: k.sides[2],
            angle_a: -k.angles[0],
            angle_b: k.angles[1],
            angle_c: k.angles[2],
            phi_a: -k.lateral[0],
            phi_b: k.lateral[1],
            phi_c: k.lateral[2],
            psi_a: -k.angular[0],
            psi_b: k.angular[1],
            psi_c: k.angular[2],
            residual: 0.0,
        }
    }

    /// e^{−bP}e^{−φ_bT}e^{−CJ}e^{−ψ_C I}e^{aP}e^{φ_aT}, the side-angle-side half of the identity.
    pub fn right_product(&self) -> GroupElement {
        use Generator::*;
        word(
            self.labels,
            &[
                (P1, -self.b),
                (T1, -self.phi_b),
                (J, -self.angle_c),
                (I, -self.psi_c),
                (P1, self.a),
                (T1, self.phi_a),
            ],
        )
    }

    /// e^{−AJ}e^{−ψ_A I}e^{cP}e^{φ_cT}e^{BJ}e^{ψ_B I}.
    pub fn left_product(&self) -> GroupElement {
        use Generator::*;
        word(
            self.labels,
            &[
                (J, -self.angle_a),
                (I, -self.psi_a),
                (P1, self.c),
                (T1, self.phi_c),
                (J, self.angle_b),
                (I, self.psi_b),
            ],
        )
    }

    /// Deviation from the identity of the full twelve-factor product, relative to the size
    /// of either half; the same scale the solver accepts a factorization against.
    pub fn basic_identity_residual(&self) -> f64 {
        use Generator::*;
        let g = word(
            self.labels,
            &[
                (P1, -self.a),
                (T1, -self.phi_a),
                (J, self.angle_c),
                (I, self.psi_c),
                (P1, self.b),
                (T1, self.phi_b),
                (J, -self.angle_a),
                (I, -self.psi_a),
                (P1, self.c),
                (T1, self.phi_c),
                (J, self.angle_b),
                (I, self.psi_b),
            ],
        );
        let scale = 1f64.max(self.right_product().matrix.max_abs());
        g.dist(&GroupElement::identity(self.labels)) / scale
    }

    /// Spread of ψ_I − φ_i over the three vertices, compared with Ω − ω.
    pub fn cartan_sector_residual(&self) -> f64 {
        let k = self.compact();
        let target = k.big_omega() - k.omega();
        (0..3)
            .map(|i| (k.lateral[i] - k.angular[i] - target).abs())
            .fold(0.0, f64::max)
    }

    pub fn values(&self) -> [f64; 12] {
        [
            self.a,
            self.b,
            self.c,
            self.phi_a,
            self.phi_b,
            self.phi_c,
            self.angle_a,
            self.angle_b,
            self.angle_c,
            self.psi_a,
            self.psi_b,
            self.psi_c,
        ]
    }
}

/// Sides and angles swap, lateral and angular phases swap, κ₁ and κ₂ swap.
pub fn dual_triangle(t: &TriangleData) -> TriangleData {
    TriangleData {
        labels: t.labels.dual(),
        a: t.angle_a,
        b: t.angle_b,
        c: t.angle_c,
        phi_a: t.psi_a,
        phi_b: t.psi_b,
        phi_c: t.psi_c,
        angle_a: t.a,
        angle_b: t.b,
        angle_c: t.c,
        psi_a: t.phi_a,
        psi_b: t.phi_b,
        psi_c: t.phi_c,
        residual: t.residual,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    Generic,
    Collinear,
    Concurrent,
    PurelyReal,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::Generic => "generic",
            SpecialCase::Collinear => "collinear",
            SpecialCase::Concurrent => "concurrent",
            SpecialCase::PurelyReal => "purely_real",
        }
    }
}

/// Collinear takes precedence over concurrent, which takes precedence over purely real.
pub fn classify_special(t: &TriangleData, tol: f64) -> SpecialCase {
    let SpaceLabels {
        eta,
        kappa1,
        kappa2,
    } = t.labels;
    let small = |k: f64, xs: &[f64]| xs.iter().all(|&x| sink(k, x).abs() <= tol);
    if small(kappa2, &[t.angle_a, t.angle_b, t.angle_c]) {
        SpecialCase::Collinear
    } else if small(kappa1, &[t.a, t.b, t.c]) {
        SpecialCase::Concurrent
    } else if small(eta, &[t.phi_a, t.phi_b, t.phi_c, t.psi_a, t.psi_b, t.psi_c]) {
        SpecialCase::PurelyReal
    } else {
        SpecialCase::Generic
    }
}

/// Flat record used for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub eta: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub phi_a: f64,
    pub phi_b: f64,
    pub phi_c: f64,
    #[serde(rename = "A")]
    pub angle_a: f64,
    #[serde(rename = "B")]
    pub angle_b: f64,
    #[serde(rename = "C")]
    pub angle_c: f64,
    #[serde(rename = "psi_A")]
    pub psi_a: f64,
    #[serde(rename = "psi_B")]
    pub psi_b: f64,
    #[serde(rename = "psi_C")]
    pub psi_c: f64,
    pub omega: f64,
    #[serde(rename = "Omega")]
    pub big_omega: f64,
    #[serde(rename = "S")]
    pub area: f64,
    #[serde(rename = "s")]
    pub coarea: f64,
    pub gamma: f64,
    #[serde(rename = "Gamma")]
    pub big_gamma: f64,
    pub residual: f64,
}

impl TriangleRecord {
    pub fn new(t: &TriangleData) -> Self {
        let d = derived(t);
        Self {
            eta: t.labels.eta,
            kappa1: t.labels.kappa1,
            kappa2: t.labels.kappa2,
            a: t.a,
            b: t.b,
            c: t.c,
            phi_a: t.phi_a,
            phi_b: t.phi_b,
            phi_c: t.phi_c,
            angle_a: t.angle_a,
            angle_b: t.angle_b,
            angle_c: t.angle_c,
            psi_a: t.psi_a,
            psi_b: t.psi_b,
            psi_c: t.psi_c,
            omega: d.omega,
            big_omega: d.big_omega,
            area: d.area,
            coarea: d.coarea,
            gamma: d.gamma,
            big_gamma: d.big_gamma,
            residual: t.residual,
        }
    }

    pub fn labels(&self) -> SpaceLabels {
        SpaceLabels::of(self.eta, self.kappa1, self.kappa2)
    }

    pub fn triangle(&self) -> TriangleData {
        TriangleData {
            labels: self.labels(),
            a: self.a,
            b: self.b,
            c: self.c,
            phi_a: self.phi_a,
            phi_b: self.phi_b,
            phi_c: self.phi_c,
            angle_a: self.angle_a,
            angle_b: self.angle_b,
            angle_c: self.angle_c,
            psi_a: self.psi_a,
            psi_b: self.psi_b,
            psi_c: self.psi_c,
            residual: self.residual,
        }
    }
}
