//! Reductions of the general laws on collinear, concurrent and purely real triangles.

use serde::Serialize;

use crate::error::{CkdError, Result};
use crate::scalars::{cosk, sink};
use crate::triangle::{classify_special, dual_triangle, SpecialCase, TriangleData, CYCLIC};

use super::identities::Acc;
use super::LawInput;

/// Threshold on the sines that decides whether a triangle is special.
pub const SPECIAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpecialReport {
    pub case: SpecialCase,
    pub checks: Vec<(&'static str, f64)>,
}

impl SpecialReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.1).fold(0.0, f64::max)
    }
}

pub fn residual_special(t: &TriangleData) -> Result<SpecialReport> {
    let case = classify_special(t, SPECIAL_TOL);
    let checks = match case {
        SpecialCase::Generic => return Err(CkdError::NotSpecial),
        SpecialCase::Collinear => collinear(&LawInput::from_triangle(t)),
        SpecialCase::Concurrent => collinear(&LawInput::from_triangle(&dual_triangle(t))),
        SpecialCase::PurelyReal => purely_real(&LawInput::from_triangle(t)),
    };
    Ok(SpecialReport { case, checks })
}

/// All angles vanish or are straight: a real triangle with sides 2x̃ and angles ψ
/// in the space of labels (κ₁, η), where x̃_i = x_i C₂(X_I) carries the orientation.
fn collinear(inp: &LawInput) -> Vec<(&'static str, f64)> {
    let (eta, k1, k2) = (inp.labels.eta, inp.labels.kappa1, inp.labels.kappa2);
    let k = &inp.k;
    let side: [f64; 3] = std::array::from_fn(|i| 2.0 * k.sides[i] * cosk(k2, k.angles[i]).signum());
    let ps = k.angular;
    let (mut cos, mut sin, mut shift) = (Acc::default(), Acc::default(), Acc::default());
    for (i, j, l) in CYCLIC {
        cos.eq(
            cosk(k1, side[j]),
            cosk(k1, side[i]) * cosk(k1, side[l])
                - k1 * sink(k1, side[i]) * sink(k1, side[l]) * cosk(eta, ps[j]),
        );
        sin.eq(
            sink(k1, side[j]) * sink(eta, ps[i]),
            sink(k1, side[i]) * sink(eta, ps[j]),
        );
        shift.eq(ps[i] - k.lateral[i], inp.omega);
    }
    let mut excess = Acc::default();
    excess.eq(ps.iter().sum(), 2.0 * inp.omega);
    vec![
        ("reduced_cos", cos.0),
        ("reduced_sin", sin.0),
        ("big_omega_zero", inp.big_omega.abs()),
        ("phase_shift", shift.0),
        ("angular_excess", excess.0),
    ]
}

/// All phases have vanishing sine, so each enters only through ρ = C_η(phase) = ±1.
fn purely_real(inp: &LawInput) -> Vec<(&'static str, f64)> {
    let (eta, k1, k2) = (inp.labels.eta, inp.labels.kappa1, inp.labels.kappa2);
    let k = &inp.k;
    let rho = |p: f64| cosk(eta, p).signum();
    let phase_sines = k
        .lateral
        .iter()
        .chain(&k.angular)
        .map(|&p| sink(eta, p).abs())
        .fold(0.0, f64::max);
    let (mut cos, mut dual_cos, mut sine) = (Acc::default(), Acc::default(), Acc::default());
    let (x, xx) = (k.sides, k.angles);
    for (i, j, l) in CYCLIC {
        cos.eq(
            cosk(k1, x[i]) * rho(inp.omega),
            cosk(k1, x[j]) * cosk(k1, x[l])
                - k1 * sink(k1, x[j]) * sink(k1, x[l]) * cosk(k2, xx[i]) * rho(k.angular[i]),
        );
        dual_cos.eq(
            cosk(k2, xx[i]) * rho(inp.big_omega),
            cosk(k2, xx[j]) * cosk(k2, xx[l])
                - k2 * sink(k2, xx[j]) * sink(k2, xx[l]) * cosk(k1, x[i]) * rho(k.lateral[i]),
        );
        sine.eq(
            sink(k1, x[i]) * sink(k2, xx[j]),
            sink(k1, x[j]) * sink(k2, xx[i]),
        );
    }
    vec![
        ("phase_sines", phase_sines),
        ("real_cos", cos.0),
        ("real_dual_cos", dual_cos.0),
        ("real_sine", sine.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::SpaceLabels;
    use crate::triangle::{sample_corpus, solve, SampleMode};

    #[test]
    fn generic_is_not_special() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let t = sample_corpus(l, 1, 3, SampleMode::Generic, 1e-9)[0];
        assert!(matches!(residual_special(&t), Err(CkdError::NotSpecial)));
    }

    #[test]
    fn spherical_law_of_cosines_on_real_triangle() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let t = solve(0.7, 0.0, 0.9, 0.0, 1.1, 0.0, l, 1e-9).unwrap();
        let r = residual_special(&t).unwrap();
        assert_eq!(r.case, SpecialCase::PurelyReal);
        assert!(r.max_residual() < 1e-10, "{r:?}");
    }

    #[test]
    fn collinear_and_concurrent_reductions() {
        for l in SpaceLabels::all_normalized() {
            if l.kappa2 == 0.0 {
                continue;
            }
            for t in sample_corpus(l, 4, 5, SampleMode::Collinear, 1e-9) {
                let r = residual_special(&t).unwrap();
                assert_eq!(r.case, SpecialCase::Collinear, "{l}");
                assert!(r.max_residual() < 1e-10, "{l}: {r:?}");
                let d = residual_special(&dual_triangle(&t)).unwrap();
                assert_eq!(d.case, SpecialCase::Concurrent, "{l}");
                assert!(d.max_residual() < 1e-10, "{l}: {d:?}");
            }
        }
    }
}
