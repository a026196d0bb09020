use serde::Serialize;

use crate::scalars::{cosk, sink, versink, SpaceLabels};

use super::{Compact, TriangleData};

/// A ratio that may blow up at degenerate configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SymmetricValue {
    Finite(f64),
    Infinite { sign: f64, cause: &'static str },
    Indeterminate(&'static str),
}

impl SymmetricValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            SymmetricValue::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// The same ratio evaluated at i = 0, 1, 2; the best conditioned choice is kept.
    fn from_ratios(pairs: [(f64, f64); 3], cause: &'static str) -> Self {
        let (num, den) = pairs
            .into_iter()
            .max_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
            .expect("three pairs");
        let eps = 1e-12;
        if den.abs() > eps {
            SymmetricValue::Finite(num / den)
        } else if num.abs() > eps {
            SymmetricValue::Infinite {
                sign: num.signum(),
                cause,
            }
        } else {
            SymmetricValue::Indeterminate(cause)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedInvariants {
    pub omega: f64,
    pub big_omega: f64,
    /// Σ X_I = −A + B + C.
    pub angle_excess: f64,
    /// Σ x_i = −a + b + c.
    pub side_excess: f64,
    /// Σ ψ_I, equal to 2ω − Ω.
    pub angular_phase_excess: f64,
    /// Σ φ_i, equal to 2Ω − ω.
    pub lateral_phase_excess: f64,
    /// Symplectic area S.
    pub area: f64,
    /// Symplectic coarea s.
    pub coarea: f64,
    pub gamma: f64,
    pub big_gamma: f64,
    pub tau: SymmetricValue,
    pub xi: SymmetricValue,
    pub big_xi: SymmetricValue,
}

/// Symplectic area from the phase excess, or from its finite limit when κ₁ = 0.
pub fn area_from(labels: &SpaceLabels, k: &Compact, omega: f64) -> f64 {
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = *labels;
    if k1 != 0.0 {
        return omega / (2.0 * k1);
    }
    let (x, big_x, psi) = (k.sides, k.angles, k.angular);
    -sink(k1, x[1]) * sink(k1, x[2]) * cosk(k2, big_x[0]) * sink(eta, psi[0]) / cosk(k1, x[0]) / 2.0
}

/// The dual of [`area_from`].
pub fn coarea_from(labels: &SpaceLabels, k: &Compact, big_omega: f64) -> f64 {
    let dual = Compact {
        sides: k.angles,
        angles: k.sides,
        lateral: k.angular,
        angular: k.lateral,
    };
    area_from(&labels.dual(), &dual, big_omega)
}

/// Renormalized Gramm determinant Δ_g/κ₁² in polynomial form, finite at κ₁ = 0.
pub fn gramm_polynomial(eta: f64, k1: f64, sides: [f64; 3], area: f64) -> f64 {
    let v = sides.map(|x| versink(k1, x));
    let c = sides.map(|x| cosk(k1, x));
    2.0 * (v[0] * v[1] + v[1] * v[2] + v[2] * v[0])
        - (v[0] * v[0] + v[1] * v[1] + v[2] * v[2])
        - 2.0 * eta * c[0] * c[1] * c[2] * versink(eta * k1 * k1, 2.0 * area)
        - 2.0 * k1 * v[0] * v[1] * v[2]
}

pub fn derived(t: &TriangleData) -> DerivedInvariants {
    let k = t.compact();
    derived_with(&t.labels, &k, k.omega(), k.big_omega())
}

/// Derived quantities with ω and Ω supplied by the caller rather than recomputed.
pub fn derived_with(
    labels: &SpaceLabels,
    k: &Compact,
    omega: f64,
    big_omega: f64,
) -> DerivedInvariants {
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = *labels;
    let area = area_from(labels, k, omega);
    let coarea = coarea_from(labels, k, big_omega);
    let (x, big_x, phi, psi) = (k.sides, k.angles, k.lateral, k.angular);
    let sum = |v: [f64; 3]| v[0] + v[1] + v[2];
    let tau = SymmetricValue::from_ratios(
        std::array::from_fn(|i| (sink(k1, x[i]), sink(k2, big_x[i]))),
        "an angle has vanishing sine",
    );
    let xi = SymmetricValue::from_ratios(
        std::array::from_fn(|i| (sink(k1, 2.0 * x[i]), sink(eta, psi[i]) * cosk(k2, big_x[i]))),
        "an angular phase has vanishing sine",
    );
    let big_xi = SymmetricValue::from_ratios(
        std::array::from_fn(|i| (sink(k2, 2.0 * big_x[i]), sink(eta, phi[i]) * cosk(k1, x[i]))),
        "a lateral phase has vanishing sine",
    );
    DerivedInvariants {
        omega,
        big_omega,
        angle_excess: sum(big_x),
        side_excess: sum(x),
        angular_phase_excess: sum(psi),
        lateral_phase_excess: sum(phi),
        area,
        coarea,
        gamma: gramm_polynomial(eta, k1, x, area),
        big_gamma: gramm_polynomial(eta, k2, big_x, coarea),
        tau,
        xi,
        big_xi,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceEntry {
    pub name: &'static str,
    /// The quantity that must be non-negative; doubles as the margin.
    pub value: f64,
    pub pass: bool,
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceReport {
    pub entries: Vec<ExistenceEntry>,
}

impl ExistenceReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| !e.applicable || e.pass)
    }

    pub fn min_margin(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.applicable)
            .map(|e| e.value)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Large phase products only magnify rounding in the sign test.
fn unit_scaled(p: f64) -> f64 {
    p / p.abs().max(1.0)
}

/// Sign conditions every real triangle satisfies.
/// The phase forms are divided by max(1, |ΠS_η|) so that the margin is not scaled by the phases.
pub fn existence_check(t: &TriangleData) -> ExistenceReport {
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = t.labels;
    let d = derived(t);
    let k = t.compact();
    let prod = |v: [f64; 3]| v.iter().map(|&p| sink(eta, p)).product::<f64>();
    let margin = -1e-12;
    let entry = |name, value: f64, applicable| ExistenceEntry {
        name,
        value,
        pass: value >= margin,
        applicable,
    };
    ExistenceReport {
        entries: vec![
            entry(
                "gamma_over_kappa2",
                if k2 != 0.0 { d.gamma / k2 } else { 0.0 },
                k2 != 0.0,
            ),
            entry(
                "Gamma_over_kappa1",
                if k1 != 0.0 { d.big_gamma / k1 } else { 0.0 },
                k1 != 0.0,
            ),
            entry(
                "coarea_phase_form",
                -sink(eta * k2 * k2, 2.0 * d.coarea) * unit_scaled(prod(k.angular)),
                true,
            ),
            entry(
                "area_phase_form",
                -sink(eta * k1 * k1, 2.0 * d.area) * unit_scaled(prod(k.lateral)),
                true,
            ),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::solve_sas;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_triangle() {
        let z = TriangleData::zero(SpaceLabels::of(1.0, 1.0, 1.0));
        let d = derived(&z);
        assert_eq!(
            [d.omega, d.big_omega, d.area, d.coarea, d.gamma, d.big_gamma],
            [0.0; 6]
        );
        assert!(matches!(d.tau, SymmetricValue::Indeterminate(_)));
        let e = existence_check(&z);
        assert!(e.all_pass());
        assert_eq!(e.min_margin(), 0.0);
    }

    #[test]
    fn flat_area_formula() {
        let l = SpaceLabels::of(1.0, 0.0, 1.0);
        let t = solve_sas(0.6, 0.8, 0.7, 0.4, l, 1e-9).unwrap();
        let k = t.compact();
        let d = derived(&t);
        for (i, j, m) in crate::triangle::CYCLIC {
            let expect =
                -k.sides[j] * k.sides[m] * cosk(1.0, k.angles[i]) * sink(1.0, k.angular[i]);
            assert_abs_diff_eq!(2.0 * d.area, expect, epsilon = 1e-10);
        }
    }

    #[test]
    fn gramm_matches_sine_product() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let t = solve_sas(0.6, 0.8, 0.7, 0.4, l, 1e-9).unwrap();
        let k = t.compact();
        let d = derived(&t);
        let s = |v: f64| v.sin().powi(2);
        for (i, j, m) in crate::triangle::CYCLIC {
            assert_abs_diff_eq!(
                d.gamma,
                s(k.sides[i]) * s(k.angles[j]) * s(k.sides[m]),
                epsilon = 1e-12
            );
        }
        assert_abs_diff_eq!(
            d.angular_phase_excess,
            2.0 * d.omega - d.big_omega,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            d.lateral_phase_excess,
            2.0 * d.big_omega - d.omega,
            epsilon = 1e-12
        );
    }

    #[test]
    fn hand_edited_excess_fails_existence() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let mut t = TriangleData::zero(l);
        t.a = 0.5;
        t.b = 0.5;
        t.c = 0.5;
        // ω = ψ₁ + ψ₂ + φ₃ = π
        t.phi_c = std::f64::consts::PI;
        let d = derived(&t);
        let c = 0.5f64.cos();
        assert_abs_diff_eq!(
            d.gamma,
            1.0 - 3.0 * c * c - 2.0 * c.powi(3),
            epsilon = 1e-12
        );
        assert!(!existence_check(&t).all_pass());
    }

    #[test]
    fn symmetric_ratios() {
        assert_eq!(
            SymmetricValue::from_ratios([(1.0, 2.0), (0.0, 0.0), (2.0, 4.0)], "x"),
            SymmetricValue::Finite(0.5)
        );
        assert!(matches!(
            SymmetricValue::from_ratios([(1.0, 0.0); 3], "x"),
            SymmetricValue::Infinite { sign, .. } if sign == 1.0
        ));
    }
}
