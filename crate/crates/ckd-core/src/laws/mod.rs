//! Residuals of every trigonometric equation, collected in a static registry.

mod basis;
pub(crate) mod identities;
mod loops;
mod special;

pub use basis::{
    basis_residuals, basis_value, independent_set, jacobian_rank, BasisEquation, Part, RankReport,
};
pub use identities::residual_nine;
pub use loops::{conjugated_generators, residual_loops, ConjugatedGenerators, LoopResiduals};
pub use special::{residual_special, SpecialReport, SPECIAL_TOL};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalars::SpaceLabels;
use crate::triangle::{
    area_from, classify_special, coarea_from, Compact, SpecialCase, TriangleData, TriangleRecord,
};

use identities as id;

/// Default pass threshold for law residuals.
pub const LAW_TOL: f64 = 1e-8;

/// The fourteen quantities the laws relate, with ω and Ω carried alongside.
///
/// ω and Ω are normally the phase sums, but a record read from disk keeps its own values
/// so that an edited record is caught.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawInput {
    pub labels: SpaceLabels,
    pub k: Compact,
    pub omega: f64,
    pub big_omega: f64,
    pub area: f64,
    pub coarea: f64,
}

impl LawInput {
    pub fn from_triangle(t: &TriangleData) -> Self {
        let k = t.compact();
        let (omega, big_omega) = (k.omega(), k.big_omega());
        Self {
            labels: t.labels,
            k,
            omega,
            big_omega,
            area: area_from(&t.labels, &k, omega),
            coarea: coarea_from(&t.labels, &k, big_omega),
        }
    }

    pub fn from_record(r: &TriangleRecord) -> Self {
        Self {
            labels: r.labels(),
            k: r.triangle().compact(),
            omega: r.omega,
            big_omega: r.big_omega,
            area: r.area,
            coarea: r.coarea,
        }
    }

    /// From (x, X, φ, ψ, S, s) in compact notation; ω and Ω become the phase sums.
    pub fn from_tuple(labels: SpaceLabels, q: &[f64; 14]) -> Self {
        let part = |o: usize| [q[o], q[o + 1], q[o + 2]];
        let k = Compact {
            sides: part(0),
            angles: part(3),
            lateral: part(6),
            angular: part(9),
        };
        Self {
            labels,
            k,
            omega: k.omega(),
            big_omega: k.big_omega(),
            area: q[12],
            coarea: q[13],
        }
    }

    pub fn tuple(&self) -> [f64; 14] {
        let k = &self.k;
        let mut q = [0.0; 14];
        for i in 0..3 {
            q[i] = k.sides[i];
            q[3 + i] = k.angles[i];
            q[6 + i] = k.lateral[i];
            q[9 + i] = k.angular[i];
        }
        q[12] = self.area;
        q[13] = self.coarea;
        q
    }

    pub fn triangle(&self) -> TriangleData {
        TriangleData::from_compact(self.labels, &self.k)
    }

    /// The same data read in the dual space.
    pub fn dual(&self) -> Self {
        let k = &self.k;
        Self {
            labels: self.labels.dual(),
            k: Compact {
                sides: k.angles,
                angles: k.sides,
                lateral: k.angular,
                angular: k.lateral,
            },
            omega: self.big_omega,
            big_omega: self.omega,
            area: self.coarea,
            coarea: self.area,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Identity,
    Nine,
    Final,
    Named,
    Loop,
    Contracted,
    Special,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Identity,
        Family::Nine,
        Family::Final,
        Family::Named,
        Family::Loop,
        Family::Contracted,
        Family::Special,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Nine => "nine",
            Family::Final => "final",
            Family::Named => "named",
            Family::Loop => "loop",
            Family::Contracted => "contracted",
            Family::Special => "special",
        }
    }
}

/// A registered law. `eval` returns `None` when the configuration does not admit the law.
pub struct Law {
    pub id: &'static str,
    pub family: Family,
    pub description: &'static str,
    pub applies: fn(&SpaceLabels) -> bool,
    pub eval: fn(&LawInput) -> Option<f64>,
}

fn always(_: &SpaceLabels) -> bool {
    true
}

fn flat_nonzero_eta(l: &SpaceLabels) -> bool {
    l.kappa1 == 0.0 && l.kappa2 == 0.0 && l.eta != 0.0
}

fn all_flat(l: &SpaceLabels) -> bool {
    l.kappa1 == 0.0 && l.kappa2 == 0.0 && l.eta == 0.0
}

fn special_case(inp: &LawInput, want: SpecialCase) -> Option<f64> {
    let t = inp.triangle();
    if classify_special(&t, SPECIAL_TOL) != want {
        return None;
    }
    residual_special(&t).ok().map(|r| r.max_residual())
}

macro_rules! law {
    ($id:literal, $fam:ident, $desc:literal, $f:expr) => {
        law!($id, $fam, $desc, always, $f)
    };
    ($id:literal, $fam:ident, $desc:literal, $applies:expr, $f:expr) => {
        Law {
            id: $id,
            family: Family::$fam,
            description: $desc,
            applies: $applies,
            eval: |x| Some($f(x)),
        }
    };
}

macro_rules! nine {
    ($id:literal, $n:literal, $desc:literal) => {
        Law {
            id: $id,
            family: Family::Nine,
            description: $desc,
            applies: always,
            eval: |x| Some(residual_nine(x)[$n]),
        }
    };
}

pub static LAWS: &[Law] = &[
    law!(
        "basic_identity",
        Identity,
        "twelve-factor product of complete translations and rotations equals the identity",
        |x: &LawInput| x.triangle().basic_identity_residual()
    ),
    nine!("nine_1", 0, "complex cosine theorem for side c"),
    nine!("nine_2", 1, "complex cosine theorem for angle C"),
    nine!("nine_3", 2, "complex sine relation between c, A and a, C"),
    nine!("nine_4", 3, "complex sine relation between c, B and b, C"),
    nine!("nine_5", 4, "complex side-angle relation for S(c)C(A)"),
    nine!("nine_6", 5, "complex side-angle relation for S(c)C(B)"),
    nine!("nine_7", 6, "complex angle-side relation for S(C)C(a)"),
    nine!("nine_8", 7, "complex angle-side relation for S(C)C(b)"),
    nine!("nine_9", 8, "self-dual complex relation"),
    law!(
        "t0ij",
        Final,
        "phases theorem: lateral minus angular phase equals Omega minus omega",
        id::t0ij
    ),
    law!(
        "t1i",
        Final,
        "Hermitian cosine theorem for sides, real and imaginary parts",
        id::t1i
    ),
    law!(
        "t1I",
        Final,
        "Hermitian cosine theorem for angles",
        id::t1big_i
    ),
    law!("t2ij", Final, "Hermitian sine theorem", id::t2ij),
    law!(
        "t3iJ",
        Final,
        "mixed relation for one side and two angles",
        id::t3i_big_j
    ),
    law!(
        "t3Ij",
        Final,
        "mixed relation for one angle and two sides",
        id::t3big_ij
    ),
    law!(
        "t4ij",
        Final,
        "self-dual relation for two sides and two angles",
        id::t4ij
    ),
    law!(
        "omega_def",
        Final,
        "omega and Omega as cyclic phase sums",
        id::omega_def
    ),
    law!(
        "omega_area",
        Final,
        "omega equals twice kappa1 times the symplectic area",
        |x: &LawInput| { identities::rel(x.omega, 2.0 * x.labels.kappa1 * x.area) }
    ),
    law!(
        "Omega_coarea",
        Final,
        "Omega equals twice kappa2 times the symplectic coarea",
        |x: &LawInput| { identities::rel(x.big_omega, 2.0 * x.labels.kappa2 * x.coarea) }
    ),
    law!(
        "sr_cos",
        Named,
        "Shirokov-Rosenfeld cosine theorem",
        id::sr_cos
    ),
    law!(
        "sr_cos2",
        Named,
        "Shirokov-Rosenfeld double cosine theorem",
        id::sr_cos2
    ),
    law!(
        "sr_dualcos",
        Named,
        "Shirokov-Rosenfeld dual cosine theorem",
        id::sr_dualcos
    ),
    law!(
        "sr_dualcos2",
        Named,
        "Shirokov-Rosenfeld dual double cosine theorem",
        id::sr_dualcos2
    ),
    law!(
        "bt_cos",
        Named,
        "Blaschke-Terheggen cosine theorem for sides",
        id::bt_cos
    ),
    law!(
        "bt_dualcos",
        Named,
        "Blaschke-Terheggen cosine theorem for angles",
        id::bt_dualcos
    ),
    law!(
        "sr_sin2",
        Named,
        "Shirokov-Rosenfeld double sine theorem",
        id::sr_sin2
    ),
    law!(
        "sr_dualsin2",
        Named,
        "dual double sine theorem",
        id::sr_dualsin2
    ),
    law!("ss", Named, "self-dual product of sine theorems", id::ss),
    law!(
        "cT",
        Named,
        "cosine of side times tangent of angle over angular phase sine",
        id::c_t
    ),
    law!(
        "Ct",
        Named,
        "cosine of angle times tangent of side over lateral phase sine",
        id::big_c_t
    ),
    law!("cc", Named, "side cosines against angular phases", id::cc),
    law!(
        "CC",
        Named,
        "angle cosines against lateral phases",
        id::big_cc
    ),
    law!("Tc", Named, "angle tangents against angular phases", id::tc),
    law!(
        "Tc2",
        Named,
        "angle tangents against angular phases, second index pattern",
        id::tc2
    ),
    law!("tC", Named, "side tangents against lateral phases", id::t_c),
    law!(
        "tC2",
        Named,
        "side tangents against lateral phases, second index pattern",
        id::t_c2
    ),
    law!(
        "c_euler",
        Named,
        "Euler-like cosine of a side from angular phases",
        id::c_euler
    ),
    law!(
        "C_euler",
        Named,
        "Euler-like cosine of an angle from lateral phases",
        id::big_c_euler
    ),
    law!(
        "s_euler",
        Named,
        "squared sine of a side from phases and area",
        id::s_euler
    ),
    law!(
        "S_euler",
        Named,
        "squared sine of an angle from phases and coarea",
        id::big_s_euler
    ),
    law!(
        "gramm_gamma",
        Named,
        "gamma equals kappa2 times the triple product of squared sines",
        id::gramm_gamma
    ),
    law!(
        "gramm_Gamma",
        Named,
        "Gamma equals kappa1 times the triple product of squared sines",
        id::gramm_big_gamma
    ),
    law!(
        "gamma_sides",
        Named,
        "gamma against area, coarea and angular phases",
        id::gamma_sides
    ),
    law!(
        "Gamma_angles",
        Named,
        "Gamma against area, coarea and lateral phases",
        id::big_gamma_angles
    ),
    law!("xi", Named, "xi invariant cleared of denominators", id::xi),
    law!(
        "Xi",
        Named,
        "Xi invariant cleared of denominators",
        id::big_xi
    ),
    law!(
        "loop_point",
        Loop,
        "complete translations around the triangle equal a complete rotation by the angular excess",
        |x: &LawInput| {
            let r = residual_loops(&x.triangle());
            r.point.iter().fold(0.0, |m: f64, &v| m.max(v))
        }
    ),
    law!(
        "loop_line",
        Loop,
        "complete rotations about the vertices equal a complete translation by the lateral excess",
        |x: &LawInput| {
            let r = residual_loops(&x.triangle());
            r.line.iter().fold(0.0, |m: f64, &v| m.max(v))
        }
    ),
    law!(
        "compat",
        Loop,
        "cyclic closure of the side and vertex generators",
        |x: &LawInput| residual_loops(&x.triangle()).compat
    ),
    law!(
        "t1i_prime",
        Contracted,
        "cosine theorem for sides in versed sines, valid for every kappa1",
        id::t1i_prime
    ),
    law!(
        "t1I_prime",
        Contracted,
        "cosine theorem for angles in versed sines, valid for every kappa2",
        id::t1big_i_prime
    ),
    law!(
        "zero_eta_nonzero",
        Contracted,
        "both curvatures zero, eta nonzero",
        flat_nonzero_eta,
        id::zero_eta_nonzero
    ),
    law!(
        "zero_eta_zero",
        Contracted,
        "all three labels zero",
        all_flat,
        id::zero_eta_zero
    ),
    Law {
        id: "collinear_reduced",
        family: Family::Special,
        description: "collinear triangle: real laws for doubled sides and angular phases",
        applies: always,
        eval: |x| special_case(x, SpecialCase::Collinear),
    },
    Law {
        id: "concurrent_reduced",
        family: Family::Special,
        description: "concurrent triangle: dual of the collinear reduction",
        applies: always,
        eval: |x| special_case(x, SpecialCase::Concurrent),
    },
    Law {
        id: "purely_real_reduced",
        family: Family::Special,
        description: "purely real triangle: real laws with phase cosines of unit modulus",
        applies: always,
        eval: |x| special_case(x, SpecialCase::PurelyReal),
    },
];

pub fn law(id: &str) -> Option<&'static Law> {
    LAWS.iter().find(|l| l.id == id)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LawEntry {
    pub residual: f64,
    pub pass: bool,
    pub applicable: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LawResidualReport {
    pub entries: BTreeMap<String, LawEntry>,
}

impl LawResidualReport {
    pub fn all_pass(&self) -> bool {
        self.entries.values().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, e)| !e.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Largest residual among applicable entries.
    pub fn max_residual(&self) -> f64 {
        self.entries
            .values()
            .filter(|e| e.applicable)
            .map(|e| e.residual)
            .fold(0.0, f64::max)
    }
}

fn entry(law: &Law, inp: &LawInput, tol: f64) -> LawEntry {
    let value = if (law.applies)(&inp.labels) {
        (law.eval)(inp)
    } else {
        None
    };
    match value {
        Some(residual) => LawEntry {
            residual,
            pass: residual <= tol,
            applicable: true,
        },
        None => LawEntry {
            residual: 0.0,
            pass: true,
            applicable: false,
        },
    }
}

/// Every registered law of the chosen families.
pub fn evaluate_families(inp: &LawInput, families: &[Family], tol: f64) -> LawResidualReport {
    let entries = LAWS
        .iter()
        .filter(|l| families.contains(&l.family))
        .map(|l| (l.id.to_string(), entry(l, inp, tol)))
        .collect();
    LawResidualReport { entries }
}

/// The full suite.
pub fn evaluate(inp: &LawInput, tol: f64) -> LawResidualReport {
    evaluate_families(inp, &Family::ALL, tol)
}

pub fn evaluate_triangle(t: &TriangleData, tol: f64) -> LawResidualReport {
    evaluate(&LawInput::from_triangle(t), tol)
}

pub fn residual_basic(t: &TriangleData) -> f64 {
    t.basic_identity_residual()
}

pub fn residual_final(t: &TriangleData, tol: f64) -> LawResidualReport {
    evaluate_families(&LawInput::from_triangle(t), &[Family::Final], tol)
}

pub fn residual_named(t: &TriangleData, tol: f64) -> LawResidualReport {
    evaluate_families(&LawInput::from_triangle(t), &[Family::Named], tol)
}

pub fn residual_contracted(t: &TriangleData, tol: f64) -> LawResidualReport {
    evaluate_families(&LawInput::from_triangle(t), &[Family::Contracted], tol)
}
