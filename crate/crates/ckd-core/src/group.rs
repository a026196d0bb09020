//! Group elements, closed-form one-parameter subgroups, the Hermitian form and ray actions.

use num_traits::ToPrimitive;

use crate::algebra::{AlgebraElement, CdMat, Generator};
use crate::error::{CkdError, Result};
use crate::scalars::{cd_exp_imag, cosk, sink, Cd, CdScalar, SpaceLabels};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub matrix: CdMat<f64>,
    pub labels: SpaceLabels,
}

impl GroupElement {
    pub fn identity(labels: SpaceLabels) -> Self {
        Self {
            matrix: CdMat::identity(),
            labels,
        }
    }

    pub fn eta(&self) -> f64 {
        self.labels.eta
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.labels != o.labels {
            return Err(CkdError::LabelMismatch);
        }
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        Self {
            matrix: self.matrix.mul(&o.matrix, self.labels.eta),
            labels: self.labels,
        }
    }

    /// Inverse through the adjugate, valid since det U = 1 and free of divisions.
    pub fn inverse(&self) -> Self {
        Self {
            matrix: adjugate(&self.matrix, self.labels.eta),
            labels: self.labels,
        }
    }

    pub fn det(&self) -> CdScalar {
        self.matrix.det(self.labels.eta)
    }

    pub fn dist(&self, o: &Self) -> f64 {
        self.matrix.dist(&o.matrix)
    }

    /// g X g⁻¹.
    pub fn conjugate(&self, x: &AlgebraElement) -> AlgebraElement {
        let eta = self.labels.eta;
        let m = self
            .matrix
            .mul(&x.matrix, eta)
            .mul(&self.inverse().matrix, eta);
        AlgebraElement {
            matrix: m,
            labels: x.labels,
        }
    }
}

fn adjugate(m: &CdMat<f64>, eta: f64) -> CdMat<f64> {
    let a = &m.m;
    CdMat::from_fn(|i, j| {
        // cofactor of (j, i)
        let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let minor = a[r[0]][c[0]].mul(a[r[1]][c[1]], eta) - a[r[0]][c[1]].mul(a[r[1]][c[0]], eta);
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

fn rotation(i: usize, j: usize, k: f64, upper: f64, t: f64, imag: bool) -> CdMat<f64> {
    // block [[C, −k S], [S, C]] with label k, real or imaginary off-diagonal
    let mut m = CdMat::identity();
    let (c, s) = (cosk(k, t), sink(k, t));
    m.m[i][i] = Cd::real(c);
    m.m[j][j] = Cd::real(c);
    if imag {
        m.m[i][j] = Cd::new(0.0, upper * s);
        m.m[j][i] = Cd::new(0.0, s);
    } else {
        m.m[i][j] = Cd::real(-upper * s);
        m.m[j][i] = Cd::real(s);
    }
    m
}

/// e^{t·g} in closed form.
pub fn one_param(g: Generator, t: f64, labels: SpaceLabels) -> GroupElement {
    use Generator::*;
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = labels;
    let matrix = match g {
        P1 => rotation(0, 1, k1, k1, t, false),
        P2 => rotation(0, 2, k1 * k2, k1 * k2, t, false),
        J => rotation(1, 2, k2, k2, t, false),
        Q1 => rotation(0, 1, eta * k1, k1, t, true),
        Q2 => rotation(0, 2, eta * k1 * k2, k1 * k2, t, true),
        M => rotation(1, 2, eta * k2, k2, t, true),
        _ => {
            let d = g.cartan_diagonal().expect("Cartan generator");
            CdMat::diagonal(d.map(|f| cd_exp_imag(f.to_f64().unwrap_or(0.0) * t, eta)))
        }
    };
    GroupElement { matrix, labels }
}

/// Product of one-parameter factors, left to right.
pub fn word(labels: SpaceLabels, factors: &[(Generator, f64)]) -> GroupElement {
    factors
        .iter()
        .fold(GroupElement::identity(labels), |acc, &(g, t)| {
            acc.mul_unchecked(&one_param(g, t, labels))
        })
}

/// Scaling-and-squaring Taylor exponential, an oracle for `one_param`.
pub fn exp_series(x: &AlgebraElement) -> Result<GroupElement> {
    let eta = x.labels.eta;
    let norm = x
        .matrix
        .m
        .iter()
        .flatten()
        .map(|z| z.re.abs() + z.im.abs())
        .fold(0.0, f64::max);
    if !norm.is_finite() {
        return Err(CkdError::NonFinite);
    }
    let mut n = norm;
    let mut squarings = 0;
    while n > 0.5 {
        n /= 2.0;
        squarings += 1;
    }
    let y = x.matrix.scale(0.5f64.powi(squarings));
    let mut sum = CdMat::identity();
    let mut term = CdMat::identity();
    for k in 1..=18 {
        term = term.mul(&y, eta).scale(1.0 / k as f64);
        sum = sum.add(&term);
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum, eta);
    }
    if !sum.is_finite() {
        return Err(CkdError::NonFinite);
    }
    Ok(GroupElement {
        matrix: sum,
        labels: x.labels,
    })
}

/// U†ΛU = Λ and det U = 1 within `tol`.
pub fn is_isometry(u: &GroupElement, tol: f64) -> bool {
    let eta = u.labels.eta;
    let lam = CdMat::diagonal(u.labels.lambda().map(Cd::real));
    let lhs = u.matrix.conj_transpose().mul(&lam, eta).mul(&u.matrix, eta);
    let det = u.det();
    lhs.dist(&lam) <= tol && (det - Cd::one()).max_abs() <= tol
}

/// A point of the space, as a vector in ℂ_η³ up to unimodular factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub z: [CdScalar; 3],
    pub labels: SpaceLabels,
}

impl Ray {
    pub fn new(z: [CdScalar; 3], labels: SpaceLabels) -> Self {
        Self { z, labels }
    }

    /// The origin O = (1, 0, 0).
    pub fn origin(labels: SpaceLabels) -> Self {
        Self {
            z: [Cd::one(), Cd::zero(), Cd::zero()],
            labels,
        }
    }

    /// Unit norm with the leading nonzero component real and positive.
    pub fn normalized(&self) -> Self {
        let eta = self.labels.eta;
        let n = hermitian_form_unchecked(self, self).re;
        let mut z = self.z;
        if n > 0.0 {
            let r = n.sqrt();
            z = z.map(|c| c.scale(1.0 / r));
        }
        if let Some(lead) = z.iter().find(|c| c.max_abs() > 1e-300) {
            if let Some(u) = lead.unit(eta) {
                let uc = u.conj();
                z = z.map(|c| c.mul(uc, eta));
                if z.iter()
                    .find(|c| c.max_abs() > 1e-300)
                    .is_some_and(|c| c.re < 0.0)
                {
                    z = z.map(|c| -c);
                }
            }
        }
        Self {
            z,
            labels: self.labels,
        }
    }

    pub fn dist(&self, o: &Self) -> f64 {
        (0..3)
            .map(|i| (self.z[i] - o.z[i]).max_abs())
            .fold(0.0, f64::max)
    }
}

fn hermitian_form_unchecked(z: &Ray, w: &Ray) -> CdScalar {
    let eta = z.labels.eta;
    let lam = z.labels.lambda();
    (0..3).fold(Cd::zero(), |acc, i| {
        acc + z.z[i].conj().mul(w.z[i], eta).scale(lam[i])
    })
}

/// ⟨z|w⟩ = Σ conj(z_i) Λ_ii w_i.
pub fn hermitian_form(z: &Ray, w: &Ray) -> Result<CdScalar> {
    if z.labels != w.labels {
        return Err(CkdError::LabelMismatch);
    }
    Ok(hermitian_form_unchecked(z, w))
}

pub fn act(u: &GroupElement, z: &Ray) -> Result<Ray> {
    if u.labels != z.labels {
        return Err(CkdError::LabelMismatch);
    }
    let eta = u.labels.eta;
    let m = &u.matrix.m;
    let out =
        std::array::from_fn(|i| (0..3).fold(Cd::zero(), |acc, k| acc + m[i][k].mul(z.z[k], eta)));
    Ok(Ray {
        z: out,
        labels: z.labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rep;
    use proptest::prelude::*;
    use Generator::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn closed_form_examples() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let p = one_param(P1, 0.4, l);
        assert!((p.matrix.m[0][0].re - 0.4f64.cos()).abs() < TOL);
        assert!((p.matrix.m[0][1].re + 0.4f64.sin()).abs() < TOL);
        assert!((p.matrix.m[1][0].re - 0.4f64.sin()).abs() < TOL);
        let b = one_param(B, 0.3, l);
        let expect = CdMat::diagonal([Cd::one(), cd_exp_imag(-0.3, 1.0), cd_exp_imag(0.3, 1.0)]);
        assert!(b.matrix.dist(&expect) < TOL);
        for labels in SpaceLabels::all_normalized() {
            for g in Generator::ALL {
                assert_eq!(one_param(g, 0.0, labels).matrix, CdMat::identity());
            }
        }
    }

    #[test]
    fn series_matches_closed_form_everywhere() {
        for labels in SpaceLabels::all_normalized() {
            for g in Generator::ALL {
                for t in [-2.0, -0.7, 0.3, 1.1, 2.0] {
                    let s = exp_series(&rep(g, labels).scale(t)).unwrap();
                    let c = one_param(g, t, labels);
                    assert!(s.dist(&c) <= TOL, "{labels} {g} {t}: {}", s.dist(&c));
                }
            }
        }
    }

    #[test]
    fn cartan_series_on_i() {
        let l = SpaceLabels::of(1.0, -1.0, 0.0);
        let s = exp_series(&rep(I, l).scale(0.9)).unwrap();
        let expect = CdMat::diagonal([-0.6, 0.3, 0.3].map(|f| cd_exp_imag(f, 1.0)));
        assert!(s.matrix.dist(&expect) <= TOL);
    }

    #[test]
    fn series_overflow() {
        let l = SpaceLabels::of(1.0, -1.0, -1.0);
        assert_eq!(exp_series(&rep(P1, l).scale(1e6)), Err(CkdError::NonFinite));
    }

    #[test]
    fn complete_pairs_commute() {
        for labels in SpaceLabels::all_normalized() {
            let eta = labels.eta;
            for (g, h) in [(P1, T1), (J, I)] {
                let x = one_param(g, 0.8, labels).matrix;
                let y = one_param(h, -0.5, labels).matrix;
                assert!(x.mul(&y, eta).dist(&y.mul(&x, eta)) <= TOL);
            }
        }
    }

    #[test]
    fn isometry_examples() {
        let l = SpaceLabels::of(-1.0, 1.0, -1.0);
        assert!(is_isometry(&GroupElement::identity(l), TOL));
        assert!(is_isometry(&one_param(M, 1.3, l), TOL));
        let mut u = GroupElement::identity(l);
        u.matrix.m[0][0] = u.matrix.m[0][0].scale(2.0);
        assert!(!is_isometry(&u, TOL));
    }

    #[test]
    fn forms_and_actions() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let o = Ray::origin(l);
        assert_eq!(hermitian_form(&o, &o).unwrap(), Cd::one());
        let z = Ray::new([Cd::zero(), Cd::one(), Cd::zero()], l);
        assert_eq!(hermitian_form(&z, &z).unwrap(), Cd::real(1.0));
        let moved = act(&one_param(P1, 0.6, l), &o).unwrap();
        let expect = Ray::new(
            [Cd::real(0.6f64.cos()), Cd::real(0.6f64.sin()), Cd::zero()],
            l,
        );
        assert!(moved.dist(&expect) < TOL);
        assert_eq!(act(&GroupElement::identity(l), &z).unwrap(), z);
        let other = Ray::origin(SpaceLabels::of(1.0, 1.0, 0.0));
        assert_eq!(hermitian_form(&o, &other), Err(CkdError::LabelMismatch));
    }

    #[test]
    fn gauge_fixes_phase() {
        let l = SpaceLabels::of(1.0, 1.0, 1.0);
        let z = Ray::new([Cd::new(0.0, 2.0), Cd::new(1.0, 1.0), Cd::zero()], l).normalized();
        assert!(z.z[0].im.abs() < TOL && z.z[0].re > 0.0);
        assert!((hermitian_form(&z, &z).unwrap().re - 1.0).abs() < TOL);
    }

    fn labels_strategy() -> impl Strategy<Value = SpaceLabels> {
        let v = prop::sample::select(vec![-1.0, 0.0, 1.0]);
        (v.clone(), v.clone(), v).prop_map(|(e, a, b)| SpaceLabels::of(e, a, b))
    }

    fn gen_strategy() -> impl Strategy<Value = Generator> {
        prop::sample::select(Generator::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn one_parameter_homomorphism(l in labels_strategy(), g in gen_strategy(), s in -2.0..2.0f64, t in -2.0..2.0f64) {
            let lhs = one_param(g, s, l).mul(&one_param(g, t, l)).unwrap();
            prop_assert!(lhs.dist(&one_param(g, s + t, l)) <= 1e-12 * 16.0);
        }

        #[test]
        fn closed_forms_are_isometries(l in labels_strategy(), g in gen_strategy(), t in -2.0..2.0f64) {
            let u = one_param(g, t, l);
            let scale = 1.0f64.max(u.matrix.max_abs().powi(2));
            prop_assert!(is_isometry(&u, 1e-12 * scale));
            prop_assert!((u.det() - Cd::one()).max_abs() <= 1e-12 * scale);
        }

        #[test]
        fn action_preserves_form(l in labels_strategy(), g in gen_strategy(), t in -1.5..1.5f64,
                                 z0 in -1.0..1.0f64, z1 in -1.0..1.0f64, z2 in -1.0..1.0f64) {
            let z = Ray::new([Cd::new(z0, z1), Cd::new(z2, 0.3), Cd::new(0.5, z0)], l);
            let w = act(&one_param(g, t, l), &z).unwrap();
            let before = hermitian_form(&z, &z).unwrap();
            let after = hermitian_form(&w, &w).unwrap();
            prop_assert!((before - after).max_abs() <= 1e-10);
            let zw = hermitian_form(&z, &w).unwrap();
            let wz = hermitian_form(&w, &z).unwrap();
            prop_assert!((zw - wz.conj()).max_abs() <= 1e-12);
        }

        #[test]
        fn inverse_is_inverse(l in labels_strategy(), a in -1.0..1.0f64, b in -1.0..1.0f64) {
            let u = word(l, &[(P1, a), (Q2, b), (I, a - b), (M, 0.4)]);
            prop_assert!(u.mul(&u.inverse()).unwrap().dist(&GroupElement::identity(l)) <= 1e-12);
        }
    }
}
