use serde::Serialize;

use crate::algebra::Generator;
use crate::error::{CkdError, Result};
use crate::group::{act, hermitian_form, word, Ray};
use crate::scalars::{CdScalar, SpaceLabels};

use super::TriangleData;

/// What can be read off three points of CP² or CH² without a choice of frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexTriangle {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub omega: f64,
    /// Shape invariant σ.
    pub sigma: f64,
    /// cos² of the angles at A, B, C.
    pub cos2_angles: [f64; 3],
    /// Arguments of the pairwise products; these depend on the gauge of each vertex.
    pub epsilon: [f64; 3],
}

/// Vertex rays of a solved triangle: C at the origin, B along side a, A along side b.
pub fn vertices_of(t: &TriangleData) -> Result<[Ray; 3]> {
    use Generator::*;
    let o = Ray::origin(t.labels);
    let za = act(
        &word(t.labels, &[(J, -t.angle_c), (I, -t.psi_c), (P1, t.b)]),
        &o,
    )?;
    let zb = act(&word(t.labels, &[(P1, t.a)]), &o)?;
    Ok([za, zb, o])
}

fn side_from_cos(k1: f64, c: f64) -> f64 {
    if k1 > 0.0 {
        c.min(1.0).acos() / k1.sqrt()
    } else {
        c.max(1.0).acosh() / (-k1).sqrt()
    }
}

fn arg(z: CdScalar) -> f64 {
    z.im.atan2(z.re)
}

/// Sides, ω, σ and the squared angle cosines of the triangle with vertices zA, zB, zC.
pub fn from_vertices(
    za: &Ray,
    zb: &Ray,
    zc: &Ray,
    labels: SpaceLabels,
    tol: f64,
) -> Result<VertexTriangle> {
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = labels;
    if eta != 1.0 || k2 != 1.0 || k1 == 0.0 {
        return Err(CkdError::UnsupportedLabels {
            expected: "η = 1, κ₂ = 1, κ₁ ≠ 0",
            eta,
            kappa1: k1,
            kappa2: k2,
        });
    }
    let norm = |z: &Ray| -> Result<f64> {
        let n = hermitian_form(z, z)?.re;
        if n > 0.0 {
            Ok(n.sqrt())
        } else {
            Err(CkdError::CutLocus)
        }
    };
    let (na, nb, nc) = (norm(za)?, norm(zb)?, norm(zc)?);
    let pair = |z: &Ray, w: &Ray, nz: f64, nw: f64| -> Result<CdScalar> {
        let p = hermitian_form(z, w)?.scale(1.0 / (nz * nw));
        if p.pair_norm() <= tol {
            Err(CkdError::CutLocus)
        } else {
            Ok(p)
        }
    };
    let p_ab = pair(za, zb, na, nb)?;
    let p_bc = pair(zb, zc, nb, nc)?;
    let p_ca = pair(zc, za, nc, na)?;
    let triple = p_ab.mul(p_bc, eta).mul(p_ca, eta);
    let cos_sides = [p_bc.pair_norm(), p_ca.pair_norm(), p_ab.pair_norm()];
    let [a, b, c] = cos_sides.map(|x| side_from_cos(k1, x));
    let omega = arg(triple);
    let sigma = if k1 > 0.0 { triple.re } else { -triple.re };

    let sin2 = cos_sides.map(|x| (1.0 - x * x) / k1);
    let cos_omega = omega.cos();
    let cos2_angles = std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (ci, cj, ck) = (cos_sides[i], cos_sides[j], cos_sides[k]);
        (ci * ci + cj * cj * ck * ck - 2.0 * ci * cj * ck * cos_omega)
            / (k1 * k1 * sin2[j] * sin2[k])
    });
    Ok(VertexTriangle {
        a,
        b,
        c,
        omega,
        sigma,
        cos2_angles,
        epsilon: [arg(p_bc), arg(p_ca), arg(p_ab)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{derived, solve_sas};
    use approx::assert_abs_diff_eq;

    #[test]
    fn coincident_vertices() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let o = Ray::origin(l);
        let v = from_vertices(&o, &o, &o, l, 1e-12).unwrap();
        assert_eq!([v.a, v.b, v.c, v.omega], [0.0; 4]);
        assert_eq!(v.sigma, 1.0);
    }

    #[test]
    fn unsupported_labels() {
        let l = SpaceLabels::of(0.0, 1.0, 1.0);
        let o = Ray::origin(l);
        assert!(matches!(
            from_vertices(&o, &o, &o, l, 1e-12),
            Err(CkdError::UnsupportedLabels { .. })
        ));
    }

    #[test]
    fn orthogonal_points_are_on_the_cut_locus() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let o = Ray::origin(l);
        let z = Ray::new([CdScalar::zero(), CdScalar::one(), CdScalar::zero()], l);
        assert_eq!(from_vertices(&o, &z, &o, l, 1e-12), Err(CkdError::CutLocus));
    }

    #[test]
    fn agrees_with_the_solver() {
        for k1 in [1.0, -1.0, 0.5] {
            let l = SpaceLabels::of(1.0, k1, 1.0);
            for (a, b, c, p) in [(0.5, 0.7, 0.9, 0.3), (0.3, 0.4, 1.1, -0.6)] {
                let t = solve_sas(a, b, c, p, l, 1e-9).unwrap();
                let [za, zb, zc] = vertices_of(&t).unwrap();
                let v = from_vertices(&za, &zb, &zc, l, 1e-12).unwrap();
                assert_abs_diff_eq!(v.a, t.a, epsilon = 1e-9);
                assert_abs_diff_eq!(v.b, t.b, epsilon = 1e-9);
                assert_abs_diff_eq!(v.c, t.c, epsilon = 1e-9);
                let d = derived(&t);
                assert_abs_diff_eq!(v.omega, d.omega, epsilon = 1e-9);
                let cc = [t.a, t.b, t.c]
                    .iter()
                    .map(|&x| crate::scalars::cosk(k1, x))
                    .product::<f64>();
                let expect = if k1 > 0.0 {
                    cc * d.omega.cos()
                } else {
                    -cc * d.omega.cos()
                };
                assert_abs_diff_eq!(v.sigma, expect, epsilon = 1e-9);
                let angles = [t.angle_a, t.angle_b, t.angle_c];
                for i in 0..3 {
                    assert_abs_diff_eq!(v.cos2_angles[i], angles[i].cos().powi(2), epsilon = 1e-8);
                }
            }
        }
    }
}
