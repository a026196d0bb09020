//! Scalar trigonometric equations: the nine complex identities, the final
//! set, the named laws and the label-robust contracted forms.

use crate::scalars::{cd_exp_imag, cosk, sink, versink, CdScalar};
use crate::triangle::{gramm_polynomial, CYCLIC};

use super::LawInput;

/// Relative deviation between the two sides of a real equation.
pub(crate) fn rel(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs())
}

/// Running maximum over the components of a law.
#[derive(Default)]
pub(crate) struct Acc(pub f64);

impl Acc {
    pub fn eq(&mut self, lhs: f64, rhs: f64) {
        self.eq_scaled(lhs, rhs, 0.0);
    }

    /// As [`Acc::eq`], for sides that are the small result of cancelling terms of size `scale`.
    pub fn eq_scaled(&mut self, lhs: f64, rhs: f64, scale: f64) {
        let r = (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs()).max(scale);
        // NaN must not hide
        self.0 = if r.is_nan() || self.0.is_nan() {
            f64::NAN
        } else {
            self.0.max(r)
        };
    }
}

/// Size of the terms a sum cancels down from.
pub(crate) fn term_scale(terms: &[f64]) -> f64 {
    terms.iter().map(|t| t.abs()).sum()
}

/// Labeled functions bound to one geometry.
#[derive(Clone, Copy)]
pub(crate) struct Trig {
    pub eta: f64,
    pub k1: f64,
    pub k2: f64,
}

impl Trig {
    pub fn of(inp: &LawInput) -> Self {
        Self {
            eta: inp.labels.eta,
            k1: inp.labels.kappa1,
            k2: inp.labels.kappa2,
        }
    }
    pub fn c1(&self, x: f64) -> f64 {
        cosk(self.k1, x)
    }
    pub fn s1(&self, x: f64) -> f64 {
        sink(self.k1, x)
    }
    pub fn v1(&self, x: f64) -> f64 {
        versink(self.k1, x)
    }
    pub fn c2(&self, x: f64) -> f64 {
        cosk(self.k2, x)
    }
    pub fn s2(&self, x: f64) -> f64 {
        sink(self.k2, x)
    }
    pub fn ce(&self, x: f64) -> f64 {
        cosk(self.eta, x)
    }
    pub fn se(&self, x: f64) -> f64 {
        sink(self.eta, x)
    }
    /// S_{ηκ₁²}(2S), which equals S_η(ω)/κ₁ when κ₁ ≠ 0.
    pub fn s_area(&self, area: f64) -> f64 {
        sink(self.eta * self.k1 * self.k1, 2.0 * area)
    }
    pub fn v_area(&self, area: f64) -> f64 {
        versink(self.eta * self.k1 * self.k1, 2.0 * area)
    }
    pub fn s_coarea(&self, coarea: f64) -> f64 {
        sink(self.eta * self.k2 * self.k2, 2.0 * coarea)
    }
}

/// The nine complex identities read off the two halves of the basic identity,
/// each as |LHS − RHS| / max(1, |RHS|).
pub fn residual_nine(inp: &LawInput) -> [f64; 9] {
    let g = Trig::of(inp);
    let eta = g.eta;
    let t = inp.triangle();
    let (a, b, c) = (t.a, t.b, t.c);
    let (aa, bb, cc) = (t.angle_a, t.angle_b, t.angle_c);
    let (pa, pb, pc) = (t.phi_a, t.phi_b, t.phi_c);
    let (qa, qb, qc) = (t.psi_a, t.psi_b, t.psi_c);
    let e = |x: f64| cd_exp_imag(x / 3.0, eta);
    let p = e(pa - pb - 2.0 * qc);
    let q = e(pa - pb + qc);
    let u = e(qa - qb - 2.0 * pc);
    let v = e(qa - qb + pc);
    let side_a = e(qa + 2.0 * qb + pc);
    let side_b = e(-2.0 * qa - qb + pc);
    let ang_a = e(pa + 2.0 * pb + qc);
    let ang_b = e(-2.0 * pa - pb + qc);
    let pairs: [(CdScalar, CdScalar); 9] = [
        (
            e(-2.0 * qa + 2.0 * qb + pc).scale(g.c1(c)),
            p.scale(g.c1(a) * g.c1(b)) + q.scale(g.k1 * g.s1(a) * g.s1(b) * g.c2(cc)),
        ),
        (
            e(-2.0 * pa + 2.0 * pb + qc).scale(g.c2(cc)),
            u.scale(g.c2(aa) * g.c2(bb)) + v.scale(g.k2 * g.s2(aa) * g.s2(bb) * g.c1(c)),
        ),
        (
            side_a.scale(g.s1(c) * g.s2(aa)),
            ang_a.scale(g.s1(a) * g.s2(cc)),
        ),
        (
            side_b.scale(g.s1(c) * g.s2(bb)),
            ang_b.scale(g.s1(b) * g.s2(cc)),
        ),
        (
            side_a.scale(g.s1(c) * g.c2(aa)),
            p.scale(-g.c1(a) * g.s1(b)) + q.scale(g.s1(a) * g.c1(b) * g.c2(cc)),
        ),
        (
            side_b.scale(g.s1(c) * g.c2(bb)),
            p.scale(g.c1(b) * g.s1(a)) - q.scale(g.s1(b) * g.c1(a) * g.c2(cc)),
        ),
        (
            ang_a.scale(g.s2(cc) * g.c1(a)),
            u.scale(-g.c2(aa) * g.s2(bb)) + v.scale(g.s2(aa) * g.c2(bb) * g.c1(c)),
        ),
        (
            ang_b.scale(g.s2(cc) * g.c1(b)),
            u.scale(g.c2(bb) * g.s2(aa)) - v.scale(g.s2(bb) * g.c2(aa) * g.c1(c)),
        ),
        (
            u.scale(g.k2 * g.s2(aa) * g.s2(bb)) + v.scale(g.c2(aa) * g.c2(bb) * g.c1(c)),
            p.scale(g.k1 * g.s1(a) * g.s1(b)) + q.scale(g.c1(a) * g.c1(b) * g.c2(cc)),
        ),
    ];
    pairs.map(|(l, r)| (l - r).max_abs() / 1f64.max(r.max_abs()))
}

// ---- final set, tags 0 to 4 ----

/// φ_i − ψ_I = Ω − ω.
pub fn t0ij(inp: &LawInput) -> f64 {
    let k = &inp.k;
    let mut acc = Acc::default();
    for i in 0..3 {
        acc.eq(k.lateral[i] - k.angular[i], inp.big_omega - inp.omega);
    }
    acc.0
}

/// Hermitian cosine theorem for sides, real and imaginary parts.
pub fn t1i(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let m = g.k1 * g.s1(x[j]) * g.s1(x[k]) * g.c2(xx[i]);
        acc.eq(
            g.c1(x[i]) * g.ce(inp.omega),
            g.c1(x[j]) * g.c1(x[k]) - m * g.ce(ps[i]),
        );
        acc.eq(g.c1(x[i]) * g.se(inp.omega), -m * g.se(ps[i]));
    }
    acc.0
}

/// Hermitian cosine theorem for angles.
pub fn t1big_i(inp: &LawInput) -> f64 {
    t1i(&inp.dual())
}

/// Hermitian sine theorem, S₁(x_i)S₂(X_J) = S₁(x_j)S₂(X_I).
pub fn t2ij(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx) = (inp.k.sides, inp.k.angles);
    let mut acc = Acc::default();
    for (i, j, _) in CYCLIC {
        acc.eq(g.s1(x[i]) * g.s2(xx[j]), g.s1(x[j]) * g.s2(xx[i]));
    }
    acc.0
}

pub fn t3i_big_j(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ph, ps) = (inp.k.sides, inp.k.angles, inp.k.lateral, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let l = g.s1(x[i]) * g.c2(xx[j]);
        acc.eq(
            l * g.ce(ph[k]),
            -g.c1(x[j]) * g.s1(x[k]) * g.ce(ps[i]) - g.s1(x[j]) * g.c1(x[k]) * g.c2(xx[i]),
        );
        acc.eq(l * g.se(ph[k]), g.c1(x[j]) * g.s1(x[k]) * g.se(ps[i]));
    }
    acc.0
}

pub fn t3big_ij(inp: &LawInput) -> f64 {
    t3i_big_j(&inp.dual())
}

/// Self-dual pair mixing two sides and two angles.
pub fn t4ij(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ph, ps) = (inp.k.sides, inp.k.angles, inp.k.lateral, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let l = g.c1(x[i]) * g.c1(x[j]) * g.c2(xx[k]);
        let r = g.c2(xx[i]) * g.c2(xx[j]) * g.c1(x[k]);
        acc.eq(
            -g.k1 * g.s1(x[i]) * g.s1(x[j]) + l * g.ce(ps[k]),
            -g.k2 * g.s2(xx[i]) * g.s2(xx[j]) + r * g.ce(ph[k]),
        );
        acc.eq(l * g.se(ps[k]), r * g.se(ph[k]));
    }
    acc.0
}

/// ω as the cyclic sum ψ_I + ψ_J + φ_k.
pub fn omega_def(inp: &LawInput) -> f64 {
    let k = &inp.k;
    let mut acc = Acc::default();
    for (i, j, l) in CYCLIC {
        acc.eq(inp.omega, k.angular[i] + k.angular[j] + k.lateral[l]);
        acc.eq(inp.big_omega, k.lateral[i] + k.lateral[j] + k.angular[l]);
    }
    acc.0
}

// ---- named laws ----

pub fn sr_cos(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let m = g.s1(x[j]) * g.s1(x[k]) * g.c2(xx[i]);
        let re = g.c1(x[j]) * g.c1(x[k]) - g.k1 * m * g.ce(ps[i]);
        let scale = (g.c1(x[j]) * g.c1(x[k])).abs() + (g.k1 * m * g.ce(ps[i])).abs();
        acc.eq_scaled(
            g.c1(x[i]).powi(2),
            re * re + g.eta * g.k1 * g.k1 * m * m * g.se(ps[i]).powi(2),
            scale * scale + (g.eta * g.k1 * g.k1 * m * m * g.se(ps[i]).powi(2)).abs(),
        );
    }
    acc.0
}

pub fn sr_dualcos(inp: &LawInput) -> f64 {
    sr_cos(&inp.dual())
}

pub fn sr_cos2(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let terms = [
            g.c1(2.0 * x[j]) * g.c1(2.0 * x[k]),
            -g.k1 * g.s1(2.0 * x[j]) * g.s1(2.0 * x[k]) * g.c2(xx[i]) * g.ce(ps[i]),
            -2.0 * g.k1 * g.k1 * g.k2 * (g.s1(x[j]) * g.s1(x[k]) * g.s2(xx[i])).powi(2),
        ];
        acc.eq_scaled(g.c1(2.0 * x[i]), terms.iter().sum(), term_scale(&terms));
    }
    acc.0
}

pub fn sr_dualcos2(inp: &LawInput) -> f64 {
    sr_cos2(&inp.dual())
}

/// Blaschke-Terheggen cosine theorem for sides.
pub fn bt_cos(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx) = (inp.k.sides, inp.k.angles);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let terms = [
            -(g.c1(x[j]) * g.c1(x[k])).powi(2),
            g.k1 * g.k1 * (g.s1(x[j]) * g.s1(x[k]) * g.c2(xx[i])).powi(2),
            2.0 * g.c1(x[i]) * g.c1(x[j]) * g.c1(x[k]) * g.ce(inp.omega),
        ];
        acc.eq_scaled(g.c1(x[i]).powi(2), terms.iter().sum(), term_scale(&terms));
    }
    acc.0
}

pub fn bt_dualcos(inp: &LawInput) -> f64 {
    bt_cos(&inp.dual())
}

/// Double sine theorem, S₁(2x_i)/(S_η(ψ_I)C₂(X_I)) constant, cross-multiplied.
pub fn sr_sin2(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, _) in CYCLIC {
        acc.eq(
            g.s1(2.0 * x[i]) * g.se(ps[j]) * g.c2(xx[j]),
            g.s1(2.0 * x[j]) * g.se(ps[i]) * g.c2(xx[i]),
        );
    }
    acc.0
}

pub fn sr_dualsin2(inp: &LawInput) -> f64 {
    sr_sin2(&inp.dual())
}

/// S₁(x_i)S₂(X_I)/(S_η(φ_i)S_η(ψ_I)) constant, cross-multiplied.
pub fn ss(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ph, ps) = (inp.k.sides, inp.k.angles, inp.k.lateral, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, _) in CYCLIC {
        acc.eq(
            g.s1(x[i]) * g.s2(xx[i]) * g.se(ph[j]) * g.se(ps[j]),
            g.s1(x[j]) * g.s2(xx[j]) * g.se(ph[i]) * g.se(ps[i]),
        );
    }
    acc.0
}

/// C₁(x_i)T₂(X_I)/S_η(ψ_I) constant; tangents cleared by C₂(X_I)C₂(X_J).
pub fn c_t(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, _) in CYCLIC {
        acc.eq(
            g.c1(x[i]) * g.s2(xx[i]) * g.c2(xx[j]) * g.se(ps[j]),
            g.c1(x[j]) * g.s2(xx[j]) * g.c2(xx[i]) * g.se(ps[i]),
        );
    }
    acc.0
}

pub fn big_c_t(inp: &LawInput) -> f64 {
    c_t(&inp.dual())
}

/// −C₁(x_i)/S_η(ψ_I) = C₁(x_j)C₁(x_k)/S_η(ω − ψ_I).
pub fn cc(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, ps) = (inp.k.sides, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq(
            -g.c1(x[i]) * g.se(inp.omega - ps[i]),
            g.c1(x[j]) * g.c1(x[k]) * g.se(ps[i]),
        );
    }
    acc.0
}

pub fn big_cc(inp: &LawInput) -> f64 {
    cc(&inp.dual())
}

/// −T₂(X_I)/S_η(ψ_I) = T₂(X_K)C₁(x_j)/S_η(ω − ψ_K).
pub fn tc(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq(
            -g.s2(xx[i]) * g.c2(xx[k]) * g.se(inp.omega - ps[k]),
            g.s2(xx[k]) * g.c2(xx[i]) * g.c1(x[j]) * g.se(ps[i]),
        );
    }
    acc.0
}

/// −T₂(X_I)/S_η(ψ_I) = T₂(X_J)C₁(x_k)/S_η(ω − ψ_J), the index order [`tc`] leaves out.
pub fn tc2(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq(
            -g.s2(xx[i]) * g.c2(xx[j]) * g.se(inp.omega - ps[j]),
            g.s2(xx[j]) * g.c2(xx[i]) * g.c1(x[k]) * g.se(ps[i]),
        );
    }
    acc.0
}

pub fn t_c(inp: &LawInput) -> f64 {
    tc(&inp.dual())
}

pub fn t_c2(inp: &LawInput) -> f64 {
    tc2(&inp.dual())
}

/// C₁²(x_k)S_η(ψ_I)S_η(ψ_J) = S_η(ω − ψ_I)S_η(ω − ψ_J).
pub fn c_euler(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, ps) = (inp.k.sides, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq(
            g.c1(x[k]).powi(2) * g.se(ps[i]) * g.se(ps[j]),
            g.se(inp.omega - ps[i]) * g.se(inp.omega - ps[j]),
        );
    }
    acc.0
}

pub fn big_c_euler(inp: &LawInput) -> f64 {
    c_euler(&inp.dual())
}

/// S₁²(x_k)S_η(ψ_I)S_η(ψ_J) = −S_η(φ_k)S_{ηκ₁²}(2S).
pub fn s_euler(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, ph, ps) = (inp.k.sides, inp.k.lateral, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq(
            g.s1(x[k]).powi(2) * g.se(ps[i]) * g.se(ps[j]),
            -g.se(ph[k]) * g.s_area(inp.area),
        );
    }
    acc.0
}

pub fn big_s_euler(inp: &LawInput) -> f64 {
    s_euler(&inp.dual())
}

/// γ = κ₂ S₁²(x_i)S₂²(X_J)S₁²(x_k), with γ in its polynomial form.
pub fn gramm_gamma(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx) = (inp.k.sides, inp.k.angles);
    let gamma = gramm_polynomial(g.eta, g.k1, x, inp.area);
    let scale = gramm_scale(&g, x, inp.area);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq_scaled(
            gamma,
            g.k2 * (g.s1(x[i]) * g.s2(xx[j]) * g.s1(x[k])).powi(2),
            scale,
        );
    }
    acc.0
}

/// Sum of the magnitudes of the terms of the Gramm polynomial.
fn gramm_scale(g: &Trig, sides: [f64; 3], area: f64) -> f64 {
    let v = sides.map(|x| g.v1(x));
    let c: f64 = sides.iter().map(|&x| g.c1(x)).product();
    2.0 * (v[0] * v[1]).abs()
        + 2.0 * (v[1] * v[2]).abs()
        + 2.0 * (v[2] * v[0]).abs()
        + v.iter().map(|a| a * a).sum::<f64>()
        + 2.0 * (g.eta * c * g.v_area(area)).abs()
        + 2.0 * (g.k1 * v[0] * v[1] * v[2]).abs()
}

pub fn gramm_big_gamma(inp: &LawInput) -> f64 {
    gramm_gamma(&inp.dual())
}

/// γ·ΠS_η(ψ) = −κ₂ S²_{ηκ₁²}(2S) S_{ηκ₂²}(2s).
pub fn gamma_sides(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let gamma = gramm_polynomial(g.eta, g.k1, inp.k.sides, inp.area);
    let prod: f64 = inp.k.angular.iter().map(|&p| g.se(p)).product();
    let mut acc = Acc::default();
    acc.eq_scaled(
        gamma * prod,
        -g.k2 * g.s_area(inp.area).powi(2) * g.s_coarea(inp.coarea),
        gramm_scale(&g, inp.k.sides, inp.area) * prod.abs(),
    );
    acc.0
}

pub fn big_gamma_angles(inp: &LawInput) -> f64 {
    gamma_sides(&inp.dual())
}

/// S₁(2x_i)S_{ηκ₁²}(2S) = −2 ΠS₁(x) S_η(ψ_I)C₂(X_I), the ξ invariant cleared of denominators.
pub fn xi(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let prod: f64 = x.iter().map(|&v| g.s1(v)).product();
    let mut acc = Acc::default();
    for i in 0..3 {
        acc.eq(
            g.s1(2.0 * x[i]) * g.s_area(inp.area),
            -2.0 * prod * g.se(ps[i]) * g.c2(xx[i]),
        );
    }
    acc.0
}

pub fn big_xi(inp: &LawInput) -> f64 {
    xi(&inp.dual())
}

// ---- contracted forms ----

/// The cosine theorem rewritten with versed sines and the symplectic area; valid for every κ₁.
pub fn t1i_prime(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ps) = (inp.k.sides, inp.k.angles, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        let m = g.s1(x[j]) * g.s1(x[k]);
        acc.eq(
            g.v1(x[i]) - g.v1(x[j] + x[k]),
            m * (g.c2(xx[i]) * g.ce(ps[i]) - 1.0) - g.eta * g.k1 * g.v_area(inp.area) * g.c1(x[i]),
        );
        acc.eq(
            g.c1(x[i]) * g.s_area(inp.area),
            -m * g.c2(xx[i]) * g.se(ps[i]),
        );
    }
    acc.0
}

pub fn t1big_i_prime(inp: &LawInput) -> f64 {
    t1i_prime(&inp.dual())
}

/// κ₁ = κ₂ = 0 with η ≠ 0: equal phases, proportional sides and the reduced cosine laws.
pub fn zero_eta_nonzero(inp: &LawInput) -> f64 {
    let g = Trig::of(inp);
    let (x, xx, ph, ps) = (inp.k.sides, inp.k.angles, inp.k.lateral, inp.k.angular);
    let mut acc = Acc::default();
    for (i, j, k) in CYCLIC {
        acc.eq(ps[i], ph[i]);
        acc.eq(x[i] * xx[j], x[j] * xx[i]);
        let terms = [x[j] * x[j], x[k] * x[k], 2.0 * x[j] * x[k] * g.ce(ps[i])];
        acc.eq_scaled(x[i] * x[i], terms.iter().sum(), term_scale(&terms));
        let terms = [
            xx[j] * xx[j],
            xx[k] * xx[k],
            2.0 * xx[j] * xx[k] * g.ce(ph[i]),
        ];
        acc.eq_scaled(xx[i] * xx[i], terms.iter().sum(), term_scale(&terms));
        acc.eq(2.0 * inp.area, -x[j] * x[k] * g.se(ps[i]));
        acc.eq(2.0 * inp.coarea, -xx[j] * xx[k] * g.se(ph[i]));
    }
    acc.0
}

/// All labels zero: the most contracted set.
pub fn zero_eta_zero(inp: &LawInput) -> f64 {
    let (x, xx, ph, ps) = (inp.k.sides, inp.k.angles, inp.k.lateral, inp.k.angular);
    let mut acc = Acc::default();
    acc.eq(x[0] + x[1], -x[2]);
    acc.eq(xx[0] + xx[1], -xx[2]);
    for (i, j, k) in CYCLIC {
        acc.eq(ps[i], ph[i]);
        acc.eq(x[i] * xx[j], x[j] * xx[i]);
        acc.eq(x[i] * ps[j], x[j] * ps[i]);
        acc.eq(2.0 * inp.area, -x[j] * x[k] * ps[i]);
        acc.eq(2.0 * inp.coarea, -xx[j] * xx[k] * ph[i]);
    }
    acc.0
}
