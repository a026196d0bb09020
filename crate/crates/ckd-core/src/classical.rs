//! Classical angular invariants of CP² and CH² and the historically named laws
//! written in them, checked on triangles produced by the solver.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{CkdError, Result};
use crate::laws::identities::Acc;
use crate::scalars::{cosk, sink, SpaceLabels};
use crate::triangle::{from_vertices, vertices_of, TriangleData};

/// Below this sin φ̂ the inclination is not defined.
pub const INDETERMINATE_TOL: f64 = 1e-12;

/// The angular invariants of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexAngles {
    /// Angle between the sides as complex lines, in [0, π/2].
    pub hermitian: f64,
    /// Kasner pseudoangle, the argument of the hermitian product, in (−π, π].
    pub pseudo: f64,
    /// Riemannian Fubini-Study angle φ̂, in [0, π].
    pub fs_angle: f64,
    /// Holomorphy inclination, in [0, π]; above π/2 when the pseudoangle is negative.
    pub incl: f64,
    /// Fubini-Study angle Θ between iu and v.
    pub theta: f64,
    /// Ψ = π/2 − Θ.
    pub big_psi: f64,
}

impl VertexAngles {
    /// Largest defect over the three pairs of relations tying the invariants together.
    pub fn relation_residual(&self) -> f64 {
        let (c, p, f, i) = (self.hermitian, self.pseudo, self.fs_angle, self.incl);
        [
            f.cos() - c.cos() * p.cos(),
            i.cos() * f.sin() - c.cos() * p.sin(),
            c.sin() - f.sin() * i.sin(),
            self.big_psi.sin() - f.sin() * i.cos(),
            c.cos().powi(2) - f.cos().powi(2) - (f.sin() * i.cos()).powi(2),
            f.sin().powi(2) - c.sin().powi(2) - self.big_psi.sin().powi(2),
        ]
        .iter()
        .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Riemannian angle, inclination and Θ from the hermitian angle and pseudoangle.
pub fn convert_vertex(hermitian: f64, pseudo: f64) -> Result<VertexAngles> {
    let (sc, cc) = hermitian.sin_cos();
    let (sp, cp) = pseudo.sin_cos();
    let fs_angle = (cc * cp).clamp(-1.0, 1.0).acos();
    let sin_fs = (sc * sc + cc * cc * sp * sp).sqrt();
    if sin_fs <= INDETERMINATE_TOL {
        return Err(CkdError::Indeterminate(
            "holomorphy inclination of parallel tangent vectors",
        ));
    }
    let big_psi = (cc * sp).clamp(-1.0, 1.0).asin();
    Ok(VertexAngles {
        hermitian,
        pseudo,
        fs_angle,
        incl: sc.atan2(cc * sp),
        theta: FRAC_PI_2 - big_psi,
        big_psi,
    })
}

/// K = ±(4cos²θ + sin²θ) along a real 2-direction of inclination θ.
pub fn sectional_curvature(incl: f64, sign: f64) -> f64 {
    let (s, c) = incl.sin_cos();
    sign.signum() * (4.0 * c * c + s * s)
}

fn check_labels(l: &SpaceLabels) -> Result<()> {
    if l.eta == 1.0 && l.kappa2 == 1.0 && l.kappa1.abs() == 1.0 {
        Ok(())
    } else {
        Err(CkdError::UnsupportedLabels {
            expected: "(1; ±1, 1)",
            eta: l.eta,
            kappa1: l.kappa1,
            kappa2: l.kappa2,
        })
    }
}

/// Brehm's σ: cos a cos b cos c cos ω, or −cosh a cosh b cosh c cos ω in CH².
pub fn shape_invariant(t: &TriangleData) -> Result<f64> {
    check_labels(&t.labels)?;
    let k1 = t.labels.kappa1;
    let omega = t.compact().omega();
    let cc: f64 = [t.a, t.b, t.c].iter().map(|&x| cosk(k1, x)).product();
    Ok(k1.signum() * cc * omega.cos())
}

/// Hermitian angle and pseudoangle at each vertex, read off the solver's angles.
/// The reference frame traverses side b backwards at A, so that vertex is reflected.
pub fn classical_vertices(t: &TriangleData) -> Result<[VertexAngles; 3]> {
    let k = t.compact();
    let orient = [-1.0, 1.0, 1.0];
    let mut out = [None; 3];
    for i in 0..3 {
        let (s, c) = k.angular[i].sin_cos();
        let (sx, cx) = k.angles[i].sin_cos();
        let r = orient[i] * cx;
        let hermitian = sx.abs().atan2(cx.abs());
        out[i] = Some(convert_vertex(hermitian, (r * s).atan2(r * c))?);
    }
    Ok(out.map(Option::unwrap))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub vertices: [VertexAngles; 3],
    pub checks: Vec<(&'static str, f64)>,
    pub sigma: f64,
    pub sigma_from_vertices: f64,
}

impl ClassicalReport {
    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.1).fold(0.0, f64::max)
    }
}

/// Every classical law in its original variables, on a (1; ±1, 1) triangle.
pub fn check_classical(t: &TriangleData) -> Result<ClassicalReport> {
    check_labels(&t.labels)?;
    let k1 = t.labels.kappa1;
    let v = classical_vertices(t)?;
    let x = [t.a, t.b, t.c];
    let s = |x: f64| sink(k1, x);
    let c = |x: f64| cosk(k1, x);
    let k = t.compact();
    let cos_herm = v.map(|w| w.hermitian.cos());
    let sin_herm = v.map(|w| w.hermitian.sin());
    // Phase excesses measured against nonnegative cosines.
    let cos_omega = k.omega().cos();
    let cos_big_omega =
        k.big_omega().cos() * k.angles.iter().map(|a| a.cos().signum()).product::<f64>();

    let mut acc: [Acc; 10] = Default::default();
    let [coolidge, sr_sin, sr_sin2, sr_cos, sr_cos2, bt_cos, bt_dualcos, hsiang, brehm_cos, relations] =
        &mut acc;
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        let (vi, vj) = (&v[i], &v[j]);
        coolidge.eq(s(x[i]) * sin_herm[j], s(x[j]) * sin_herm[i]);
        sr_sin.eq(
            s(x[i]) * vj.fs_angle.sin() * vj.incl.sin(),
            s(x[j]) * vi.fs_angle.sin() * vi.incl.sin(),
        );
        sr_sin2.eq(
            s(2.0 * x[i]) * vj.fs_angle.sin() * vj.incl.cos(),
            s(2.0 * x[j]) * vi.fs_angle.sin() * vi.incl.cos(),
        );
        hsiang.eq(
            s(2.0 * x[i]) * vj.big_psi.sin(),
            s(2.0 * x[j]) * vi.big_psi.sin(),
        );

        let (sf, cf) = vi.fs_angle.sin_cos();
        let ssjl = s(x[j]) * s(x[l]);
        sr_cos.eq(
            c(x[i]).powi(2),
            (c(x[j]) * c(x[l]) + k1 * ssjl * cf).powi(2) + (ssjl * vi.incl.cos() * sf).powi(2),
        );
        let double = |sin2: f64| {
            c(2.0 * x[j]) * c(2.0 * x[l]) + k1 * s(2.0 * x[j]) * s(2.0 * x[l]) * cf
                - 2.0 * ssjl * ssjl * sin2
        };
        sr_cos2.eq(c(2.0 * x[i]), double((vi.incl.sin() * sf).powi(2)));
        brehm_cos.eq(c(2.0 * x[i]), double(sin_herm[i].powi(2)));

        let (ci, cj, cl) = (cos_herm[i], cos_herm[j], cos_herm[l]);
        bt_cos.eq(
            c(x[i]).powi(2) * (sin_herm[j] * sin_herm[l]).powi(2),
            ci * ci + (cj * cl).powi(2) - 2.0 * ci * cj * cl * cos_big_omega,
        );
        let (xi, xj, xl) = (c(x[i]), c(x[j]), c(x[l]));
        bt_dualcos.eq(
            ci * ci * ssjl * ssjl,
            xi * xi + (xj * xl).powi(2) - 2.0 * xi * xj * xl * cos_omega,
        );
        relations.eq(vi.relation_residual(), 0.0);
    }

    let sigma = shape_invariant(t)?;
    let [za, zb, zc] = vertices_of(t)?;
    let sigma_from_vertices = from_vertices(&za, &zb, &zc, t.labels, 0.0)?.sigma;
    let mut sig = Acc::default();
    sig.eq(sigma, sigma_from_vertices);

    let names = [
        "coolidge_sine",
        "sr_sine",
        "sr_double_sine",
        "sr_cosine",
        "sr_double_cosine",
        "bt_cosine",
        "bt_dual_cosine",
        "hsiang_double_sine",
        "brehm_cosine",
        "angle_relations",
    ];
    let mut checks: Vec<_> = names.iter().zip(&acc).map(|(n, a)| (*n, a.0)).collect();
    checks.push(("shape_invariant", sig.0));
    Ok(ClassicalReport {
        vertices: v,
        checks,
        sigma,
        sigma_from_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{sample_corpus, solve, SampleMode};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn real_flat_vertex() {
        let v = convert_vertex(0.7, 0.0).unwrap();
        assert_abs_diff_eq!(v.fs_angle, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(v.incl, FRAC_PI_2, epsilon = 1e-15);
    }

    #[test]
    fn complex_line_vertex() {
        let v = convert_vertex(0.0, 0.4).unwrap();
        assert_abs_diff_eq!(v.fs_angle, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(v.incl, 0.0, epsilon = 1e-15);
        let w = convert_vertex(0.0, -0.4).unwrap();
        assert_abs_diff_eq!(w.fs_angle, 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(w.incl, PI, epsilon = 1e-15);
    }

    #[test]
    fn parallel_vectors_are_indeterminate() {
        assert!(matches!(
            convert_vertex(0.0, 0.0),
            Err(CkdError::Indeterminate(_))
        ));
        assert!(matches!(
            convert_vertex(0.0, PI),
            Err(CkdError::Indeterminate(_))
        ));
    }

    #[test]
    fn relations_hold_on_a_grid() {
        for i in 0..=20 {
            for j in 0..=40 {
                let (c, p) = (
                    FRAC_PI_2 * i as f64 / 20.0,
                    -PI + 2.0 * PI * j as f64 / 40.0,
                );
                if let Ok(v) = convert_vertex(c, p) {
                    assert!(v.relation_residual() < 1e-12, "{c} {p}: {v:?}");
                    assert!((0.0..=PI).contains(&v.incl));
                }
            }
        }
    }

    #[test]
    fn curvature_extremes() {
        assert_eq!(sectional_curvature(0.0, 1.0), 4.0);
        assert_abs_diff_eq!(sectional_curvature(FRAC_PI_2, 1.0), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sectional_curvature(PI / 3.0, -1.0), -1.75, epsilon = 1e-15);
    }

    #[test]
    fn zero_triangle_sigma() {
        let t = TriangleData::zero(SpaceLabels::of(1.0, 1.0, 1.0));
        assert_eq!(shape_invariant(&t).unwrap(), 1.0);
        let h = TriangleData::zero(SpaceLabels::of(1.0, -1.0, 1.0));
        assert_eq!(shape_invariant(&h).unwrap(), -1.0);
    }

    #[test]
    fn purely_real_sigma() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let t = solve(0.7, 0.0, 0.9, 0.0, 1.1, 0.0, l, 1e-9).unwrap();
        let cc = t.a.cos() * t.b.cos() * t.c.cos();
        assert_abs_diff_eq!(
            shape_invariant(&t).unwrap().abs(),
            cc.abs(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn other_labels_are_rejected() {
        let t = TriangleData::zero(SpaceLabels::of(1.0, 0.0, 1.0));
        assert!(matches!(
            check_classical(&t),
            Err(CkdError::UnsupportedLabels { .. })
        ));
        assert!(matches!(
            shape_invariant(&t),
            Err(CkdError::UnsupportedLabels { .. })
        ));
    }

    #[test]
    fn classical_laws_on_both_planes() {
        for k1 in [1.0, -1.0] {
            let l = SpaceLabels::of(1.0, k1, 1.0);
            for mode in [
                SampleMode::Generic,
                SampleMode::PurelyReal,
                SampleMode::Collinear,
            ] {
                for t in sample_corpus(l, 40, 11, mode, 1e-9) {
                    let r = check_classical(&t).unwrap();
                    assert!(r.max_residual() < 1e-9, "{l} {mode:?}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn complex_line_triangle_has_zero_inclination() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        for t in sample_corpus(l, 10, 3, SampleMode::Collinear, 1e-9) {
            for v in classical_vertices(&t).unwrap() {
                let i = v.incl.min(PI - v.incl);
                assert!(i < 1e-7, "{v:?}");
                assert_abs_diff_eq!(sectional_curvature(v.incl, 1.0), 4.0, epsilon = 1e-9);
            }
        }
    }
}
