//! The ten independent equations among the fourteen quantities (x, X, φ, ψ, S, s)
//! and a numerical rank check of their Jacobian.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::scalars::SpaceLabels;

use super::identities::Trig;
use super::LawInput;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Part {
    Re,
    Im,
    Whole,
}

/// One real equation of the basis: the registered law it belongs to, the equation
/// within that law, the index it is taken at and which part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisEquation {
    pub law: &'static str,
    pub equation: &'static str,
    pub index: usize,
    pub part: Part,
}

const fn eq(equation: &'static str, index: usize, part: Part) -> BasisEquation {
    BasisEquation {
        law: equation,
        equation,
        index,
        part,
    }
}

/// The basis for a geometry, chosen by which curvature labels vanish.
pub fn independent_set(labels: &SpaceLabels) -> Vec<BasisEquation> {
    use Part::*;
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = *labels;
    let complex = |law| (0..3).flat_map(move |i| [eq(law, i, Re), eq(law, i, Im)]);
    if k1 != 0.0 || k2 != 0.0 {
        let mut v = vec![
            eq("t0ij", 0, Whole),
            eq("t0ij", 1, Whole),
            eq("omega_area", 0, Whole),
            eq("Omega_coarea", 0, Whole),
        ];
        let cosines = match (k1 != 0.0, k2 != 0.0) {
            (true, true) => "t1i",
            (false, true) => "t1i_prime",
            _ => "t1I_prime",
        };
        v.extend(complex(cosines));
        return v;
    }
    let mut v = vec![
        eq("equal_phases", 0, Whole),
        eq("equal_phases", 1, Whole),
        eq("equal_phases", 2, Whole),
        eq("proportional_sides", 0, Whole),
        eq("proportional_sides", 1, Whole),
    ];
    let flat = if eta != 0.0 {
        "zero_eta_nonzero"
    } else {
        "zero_eta_zero"
    };
    if eta != 0.0 {
        v.extend((0..3).map(|i| eq("t1i_prime", i, Re)));
        v.push(eq("t1i_prime", 0, Im));
        v.push(eq("t1I_prime", 0, Im));
    } else {
        v.extend([
            eq("side_sum", 0, Whole),
            eq("side_phase_ratio", 0, Whole),
            eq("side_phase_ratio", 1, Whole),
            eq("t1i_prime", 0, Im),
            eq("t1I_prime", 0, Im),
        ]);
    }
    for e in &mut v {
        e.law = flat;
    }
    v
}

/// Signed value of one basis equation, zero on an actual triangle.
pub fn basis_value(e: &BasisEquation, inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ph, ps) = (inp.k.sides, inp.k.angles, inp.k.lateral, inp.k.angular);
    let (i, j, k) = (e.index, (e.index + 1) % 3, (e.index + 2) % 3);
    match (e.equation, e.part) {
        ("t0ij", _) => (ph[i] - ps[i]) - (inp.big_omega - inp.omega),
        ("omega_area", _) => inp.omega - 2.0 * g.k1 * inp.area,
        ("Omega_coarea", _) => inp.big_omega - 2.0 * g.k2 * inp.coarea,
        ("t1i", Part::Re) => {
            g.c1(x[i]) * g.ce(inp.omega) - g.c1(x[j]) * g.c1(x[k])
                + g.k1 * g.s1(x[j]) * g.s1(x[k]) * g.c2(xx[i]) * g.ce(ps[i])
        }
        ("t1i", _) => {
            g.c1(x[i]) * g.se(inp.omega)
                + g.k1 * g.s1(x[j]) * g.s1(x[k]) * g.c2(xx[i]) * g.se(ps[i])
        }
        ("t1i_prime", Part::Re) => {
            g.v1(x[i])
                - g.v1(x[j] + x[k])
                - g.s1(x[j]) * g.s1(x[k]) * (g.c2(xx[i]) * g.ce(ps[i]) - 1.0)
                + g.eta * g.k1 * g.v_area(inp.area) * g.c1(x[i])
        }
        ("t1i_prime", _) => {
            g.c1(x[i]) * g.s_area(inp.area) + g.s1(x[j]) * g.s1(x[k]) * g.c2(xx[i]) * g.se(ps[i])
        }
        ("t1I_prime", p) => basis_value(&eq("t1i_prime", e.index, p), &inp.dual()),
        ("equal_phases", _) => ps[i] - ph[i],
        ("proportional_sides", _) => x[i] * xx[j] - x[j] * xx[i],
        ("side_sum", _) => x[0] + x[1] + x[2],
        ("side_phase_ratio", _) => x[i] * ps[j] - x[j] * ps[i],
        (other, _) => unreachable!("no basis equation {other}"),
    }
}

/// Values of the whole basis at a 14-tuple (x, X, φ, ψ, S, s).
pub fn basis_residuals(labels: &SpaceLabels, q: &[f64; 14]) -> Vec<f64> {
    let inp = LawInput::from_tuple(*labels, q);
    independent_set(labels)
        .iter()
        .map(|e| basis_value(e, &inp))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub singular_values: Vec<f64>,
}

/// Central-difference Jacobian of the basis; rank counts singular values above rel·σ_max.
pub fn jacobian_rank(labels: &SpaceLabels, q: &[f64; 14], rel: f64) -> RankReport {
    let h = 1e-6;
    let rows = independent_set(labels).len();
    let mut jac = DMatrix::<f64>::zeros(rows, 14);
    for col in 0..14 {
        let (mut up, mut down) = (*q, *q);
        up[col] += h;
        down[col] -= h;
        let (fu, fd) = (basis_residuals(labels, &up), basis_residuals(labels, &down));
        for row in 0..rows {
            jac[(row, col)] = (fu[row] - fd[row]) / (2.0 * h);
        }
    }
    let mut sv: Vec<f64> = jac.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let top = sv.first().copied().unwrap_or(0.0);
    let rank = sv.iter().filter(|&&s| s > rel * top).count();
    RankReport {
        rank,
        singular_values: sv,
    }
}
