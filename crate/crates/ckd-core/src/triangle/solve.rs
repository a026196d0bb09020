use crate::algebra::{CdMat, Generator};
use crate::error::{CkdError, Result};
use crate::group::{one_param, word, GroupElement};
use crate::scalars::{
    arck_tol, cd_arg, cd_exp_imag, cosk, sink, CdScalar, SpaceLabels, DEFAULT_TOL,
};

use super::TriangleData;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Bound on the factorization residual, relative to the largest entry.
    pub tol: f64,
    /// |S_κ₁(c)| below this makes the angle extraction singular.
    pub degeneracy: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            degeneracy: 1e-7,
        }
    }
}

/// Two complete sides and the included complete angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SasInput {
    pub a: f64,
    pub phi_a: f64,
    pub b: f64,
    pub phi_b: f64,
    pub angle_c: f64,
    pub psi_c: f64,
}

/// Factor e^{−bP}e^{−φ_bT}e^{−CJ}e^{−ψ_C I}e^{aP}e^{φ_aT} as
/// e^{−AJ}e^{−ψ_A I}e^{cP}e^{φ_cT}e^{BJ}e^{ψ_B I}.
#[allow(clippy::too_many_arguments)]
pub fn solve(
    a: f64,
    phi_a: f64,
    b: f64,
    phi_b: f64,
    angle_c: f64,
    psi_c: f64,
    labels: SpaceLabels,
    tol: f64,
) -> Result<TriangleData> {
    let input = SasInput {
        a,
        phi_a,
        b,
        phi_b,
        angle_c,
        psi_c,
    };
    solve_with(
        &input,
        labels,
        &SolveOptions {
            tol,
            ..Default::default()
        },
    )
}

fn period(eta: f64) -> f64 {
    2.0 * std::f64::consts::PI / eta.sqrt()
}

/// Reduce an η-phase into its principal window; no-op unless η > 0.
fn wrap(eta: f64, x: f64) -> f64 {
    if eta <= 0.0 {
        return x;
    }
    let p = period(eta);
    x - p * (x / p + 0.5).floor()
}

fn inverse_word(i: &SasInput, labels: SpaceLabels) -> GroupElement {
    use Generator::*;
    word(
        labels,
        &[
            (T1, -i.phi_a),
            (P1, -i.a),
            (I, i.psi_c),
            (J, i.angle_c),
            (T1, i.phi_b),
            (P1, i.b),
        ],
    )
}

pub fn solve_with(
    input: &SasInput,
    labels: SpaceLabels,
    opts: &SolveOptions,
) -> Result<TriangleData> {
    let SpaceLabels {
        eta,
        kappa1: k1,
        kappa2: k2,
    } = labels;
    let values = [
        input.a,
        input.phi_a,
        input.b,
        input.phi_b,
        input.angle_c,
        input.psi_c,
    ];
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CkdError::NonFinite);
    }
    let mut t = TriangleData::zero(labels);
    t.a = input.a;
    t.phi_a = input.phi_a;
    t.b = input.b;
    t.phi_b = input.phi_b;
    t.angle_c = input.angle_c;
    t.psi_c = input.psi_c;

    if input.b == 0.0 && input.phi_b == 0.0 {
        // A coincides with C: the left product is the right one read backwards
        t.c = input.a;
        t.phi_c = input.phi_a;
        t.angle_a = input.angle_c;
        t.psi_a = input.psi_c;
        t.residual = t.left_product().dist(&t.right_product());
        return Ok(t);
    }

    let m = t.right_product();
    let mi = inverse_word(input, labels);
    let scale = 1.0_f64.max(m.matrix.max_abs());
    let identity = GroupElement::identity(labels);
    if m.dist(&identity) <= opts.tol * scale {
        // both vertices collapse onto C: every extracted invariant vanishes
        t.residual = m.dist(&identity);
        return Ok(t);
    }

    // phase combinations fixed by the known Cartan factors
    let alpha1 = -(input.phi_a + 2.0 * input.phi_b + input.psi_c) / 3.0;
    let alpha2 = (-2.0 * input.phi_a - input.phi_b + input.psi_c) / 3.0;
    let e = |x: f64| cd_exp_imag(x, eta);
    let r1 = m.matrix.get(1, 0).mul(e(-alpha1), eta);
    let r2 = mi.matrix.get(1, 0).mul(e(-alpha2), eta);
    let sc_ca = r1.re;
    let sc_cb = -r2.re;
    let sa = sink(k1, input.a) * sink(k2, input.angle_c);
    let sb = sink(k1, input.b) * sink(k2, input.angle_c);

    let s1sq = sc_ca * sc_ca + k2 * sa * sa;
    if !(s1sq > 0.0) {
        if s1sq.abs() <= opts.degeneracy * opts.degeneracy {
            return Err(CkdError::DegenerateTriangle("S(c) vanishes".into()));
        }
        return Err(CkdError::NoRealTriangle(
            "the third side is not real".into(),
        ));
    }
    let mut sin_c = s1sq.sqrt();
    if k2 <= 0.0 && sc_ca < 0.0 {
        sin_c = -sin_c;
    }
    if sin_c.abs() < opts.degeneracy * scale {
        return Err(CkdError::DegenerateTriangle(format!("S(c) = {sin_c:e}")));
    }

    let z0 = m.matrix.get(0, 0);
    let u0 = z0.unit(eta).ok_or(CkdError::NoRealArgument {
        re: z0.re,
        im: z0.im,
        eta,
    })?;
    let mut cos_c = z0.modulus_sq(eta).sqrt();
    if eta <= 0.0 && z0.mul(u0.conj(), eta).re < 0.0 {
        cos_c = -cos_c;
    }
    let alpha0 = wrap(eta, cd_arg(u0, eta)?);

    // the moduli come from the same matrix, so the pairs are consistent up to rounding
    let loose = 1e-6;
    let c = arck_tol(k1, cos_c, sin_c, loose)?;
    // an inconsistent angle pair means the phases do not close the triangle
    let angle = |cos: f64, sin: f64| {
        arck_tol(k2, cos, sin, loose).map_err(|e| match e {
            CkdError::InconsistentPair { defect, .. } => CkdError::ResidualTooLarge {
                residual: defect.abs(),
                tol: opts.tol * scale,
            },
            other => other,
        })
    };
    let angle_a = angle(sc_ca / sin_c, sa / sin_c)?;
    let angle_b = angle(sc_cb / sin_c, sb / sin_c)?;
    let psi_a = alpha0 - alpha1;
    let psi_b = -alpha0 - alpha2;
    let phi_c = 2.0 * psi_a - 2.0 * psi_b - 3.0 * alpha0;

    t.c = c;
    t.phi_c = phi_c;
    t.angle_a = angle_a;
    t.psi_a = psi_a;
    t.angle_b = angle_b;
    t.psi_b = psi_b;
    t.residual = t.left_product().dist(&m);
    if !(t.residual <= opts.tol * scale) {
        return Err(CkdError::ResidualTooLarge {
            residual: t.residual,
            tol: opts.tol * scale,
        });
    }
    Ok(t)
}

/// Phase φ with e^{iφ}·z real, reduced into (−H/2, H/2] for η > 0 where H = π/√η.
fn realizing_phase(z: CdScalar, eta: f64) -> Result<f64> {
    let u = z
        .unit(eta)
        .ok_or_else(|| CkdError::NoRealTriangle("a lateral phase has no real argument".into()))?;
    let mut x = -cd_arg(u, eta)?;
    if eta > 0.0 {
        let h = std::f64::consts::PI / eta.sqrt();
        x -= h * ((x - h / 2.0) / h).ceil();
    }
    Ok(x)
}

fn ratio(num: CdScalar, den: CdScalar, eta: f64) -> Result<CdScalar> {
    num.div(den, eta)
        .ok_or_else(|| CkdError::DegenerateTriangle("lateral completion divides by zero".into()))
}

fn jgen(labels: SpaceLabels, sign: f64) -> GroupElement {
    // the real J generator, used as the C-derivative of e^{CJ} at C = 0
    let mut m = CdMat::zero();
    m.m[1][2] = CdScalar::real(-sign * labels.kappa2);
    m.m[2][1] = CdScalar::real(sign);
    GroupElement { matrix: m, labels }
}

/// The lateral phases (φ_a, φ_b) for which the side-angle-side data close into a triangle.
/// At C = 0 the ratio degenerates to 0/0 and is replaced by its limit.
pub fn complete_lateral_phases(
    a: f64,
    b: f64,
    angle_c: f64,
    psi_c: f64,
    labels: SpaceLabels,
) -> Result<(f64, f64)> {
    use Generator::*;
    let eta = labels.eta;
    let p = |g, t| one_param(g, t, labels);
    let (nb, db, na, da) = if angle_c == 0.0 {
        let n0 = word(labels, &[(P1, -b), (I, -psi_c), (P1, a)]);
        let nd = p(P1, -b)
            .mul_unchecked(&jgen(labels, -1.0))
            .mul_unchecked(&p(I, -psi_c))
            .mul_unchecked(&p(P1, a));
        let ni0 = word(labels, &[(P1, -a), (I, psi_c), (P1, b)]);
        let nid = p(P1, -a)
            .mul_unchecked(&p(I, psi_c))
            .mul_unchecked(&jgen(labels, 1.0))
            .mul_unchecked(&p(P1, b));
        (
            n0.matrix.get(1, 0),
            nd.matrix.get(2, 0),
            ni0.matrix.get(1, 0),
            nid.matrix.get(2, 0),
        )
    } else {
        let n = word(labels, &[(P1, -b), (J, -angle_c), (I, -psi_c), (P1, a)]);
        let ni = word(labels, &[(P1, -a), (I, psi_c), (J, angle_c), (P1, b)]);
        (
            n.matrix.get(1, 0),
            n.matrix.get(2, 0),
            ni.matrix.get(1, 0),
            ni.matrix.get(2, 0),
        )
    };
    let phi_b = realizing_phase(ratio(nb, db, eta)?, eta)?;
    let phi_a = realizing_phase(ratio(na, da, eta)?, eta)?;
    Ok((phi_a, phi_b))
}

/// Complete the lateral phases and solve. For η > 0 the completion is fixed only
/// modulo π/√η; every shift that factors is tried and the smallest phases win.
pub fn solve_sas(
    a: f64,
    b: f64,
    angle_c: f64,
    psi_c: f64,
    labels: SpaceLabels,
    tol: f64,
) -> Result<TriangleData> {
    let eta = labels.eta;
    if a == 0.0 && b == 0.0 {
        // all three vertices coincide; no lateral phase is determined
        return solve(a, 0.0, b, 0.0, angle_c, psi_c, labels, tol);
    }
    let (pa0, pb0) = complete_lateral_phases(a, b, angle_c, psi_c, labels)?;
    let shifts: Vec<f64> = if eta > 0.0 {
        let h = std::f64::consts::PI / eta.sqrt();
        vec![0.0, -h, h]
    } else {
        vec![0.0]
    };
    let collinear = angle_c == 0.0;
    let quant = |x: f64| (x * 1e6).round() as i64;
    let mut best: Option<((i64, i64, i64), TriangleData)> = None;
    let mut first_err = None;
    for &da in &shifts {
        for &db in &shifts {
            let (pa, pb) = (pa0 + da, pb0 + db);
            match solve(a, pa, b, pb, angle_c, psi_c, labels, tol) {
                Ok(t) => {
                    let size = quant(pa.abs() + pb.abs());
                    let key = if collinear {
                        // prefer Ω ≡ 0 over Ω ≡ π/√η, then the smallest representative
                        let big_omega = -pa + pb + psi_c;
                        (
                            quant((cosk(eta, big_omega) - 1.0).abs()),
                            quant(big_omega.abs()),
                            size,
                        )
                    } else {
                        (0, 0, size)
                    };
                    if best.as_ref().is_none_or(|(k, _)| key < *k) {
                        best = Some((key, t));
                    }
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
    }
    match best {
        Some((_, t)) => Ok(t),
        None => Err(first_err.unwrap_or(CkdError::NoRealTriangle("no completion factors".into()))),
    }
}
