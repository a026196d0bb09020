//! Generators attached to each side and vertex, compatibility closure and loop equations.

use serde::Serialize;

use crate::algebra::{rep, AlgebraElement, Generator};
use crate::group::{one_param, GroupElement};
use crate::scalars::SpaceLabels;
use crate::triangle::TriangleData;

/// Translation generators along the sides and rotation generators about the vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatedGenerators {
    pub p_a: AlgebraElement,
    pub t_a: AlgebraElement,
    pub p_b: AlgebraElement,
    pub t_b: AlgebraElement,
    pub p_c: AlgebraElement,
    pub t_c: AlgebraElement,
    pub j_a: AlgebraElement,
    pub i_a: AlgebraElement,
    pub j_b: AlgebraElement,
    pub i_b: AlgebraElement,
    pub j_c: AlgebraElement,
    pub i_c: AlgebraElement,
}

/// Each side or vertex generator pair is the reference pair conjugated by one of these.
struct Frames {
    labels: SpaceLabels,
    side: [GroupElement; 3],
    vertex: [GroupElement; 3],
}

impl Frames {
    fn new(t: &TriangleData) -> Self {
        let l = t.labels;
        let one = GroupElement::identity(l);
        let pair = |g: Generator, x: f64, h: Generator, y: f64| {
            one_param(g, x, l).mul_unchecked(&one_param(h, y, l))
        };
        let sandwich =
            |f: &GroupElement, m: &GroupElement| f.mul_unchecked(m).mul_unchecked(&f.inverse());
        use Generator::*;
        let f_b_vertex = pair(P1, t.a, T1, t.phi_a);
        let f_b_side = pair(J, t.angle_c, I, t.psi_c);
        let f_a_vertex = sandwich(&f_b_side, &pair(P1, t.b, T1, t.phi_b));
        let f_c_side =
            sandwich(&f_a_vertex, &pair(J, -t.angle_a, I, -t.psi_a)).mul_unchecked(&f_b_side);
        Self {
            labels: l,
            side: [one, f_b_side, f_c_side],
            vertex: [f_a_vertex, f_b_vertex, one],
        }
    }

    /// Largest ‖F‖·‖F⁻¹‖ over the frames, at least 1. Rounding in a loop grows with it.
    fn conditioning(&self) -> f64 {
        self.side
            .iter()
            .chain(&self.vertex)
            .map(|f| f.matrix.max_abs() * f.inverse().matrix.max_abs())
            .fold(1.0, f64::max)
    }

    fn conj(&self, f: &GroupElement, g: Generator) -> AlgebraElement {
        f.conjugate(&rep(g, self.labels))
    }

    /// e^{xP_s}e^{φT_s} along side s.
    fn translate(&self, s: usize, x: f64, phi: f64) -> GroupElement {
        let l = self.labels;
        let f = &self.side[s];
        let m = one_param(Generator::P1, x, l).mul_unchecked(&one_param(Generator::T1, phi, l));
        f.mul_unchecked(&m).mul_unchecked(&f.inverse())
    }

    /// e^{XJ_V}e^{ψI_V} about vertex v.
    fn rotate(&self, v: usize, x: f64, psi: f64) -> GroupElement {
        let l = self.labels;
        let f = &self.vertex[v];
        let m = one_param(Generator::J, x, l).mul_unchecked(&one_param(Generator::I, psi, l));
        f.mul_unchecked(&m).mul_unchecked(&f.inverse())
    }
}

pub fn conjugated_generators(t: &TriangleData) -> ConjugatedGenerators {
    use Generator::*;
    let f = Frames::new(t);
    ConjugatedGenerators {
        p_a: f.conj(&f.side[0], P1),
        t_a: f.conj(&f.side[0], T1),
        p_b: f.conj(&f.side[1], P1),
        t_b: f.conj(&f.side[1], T1),
        p_c: f.conj(&f.side[2], P1),
        t_c: f.conj(&f.side[2], T1),
        j_a: f.conj(&f.vertex[0], J),
        i_a: f.conj(&f.vertex[0], I),
        j_b: f.conj(&f.vertex[1], J),
        i_b: f.conj(&f.vertex[1], I),
        j_c: f.conj(&f.vertex[2], J),
        i_c: f.conj(&f.vertex[2], I),
    }
}

/// Distances from the identity, divided by the conditioning of the frames.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoopResiduals {
    /// Complete translations around the loop against the complete angular excess, per base vertex.
    pub point: [f64; 3],
    /// Complete rotations about the vertices against the complete lateral excess, per base side.
    pub line: [f64; 3],
    /// The two compatibility conditions not used to build the generators.
    pub compat: f64,
}

pub fn residual_loops(t: &TriangleData) -> LoopResiduals {
    let f = Frames::new(t);
    let one = GroupElement::identity(t.labels);
    let cond = f.conditioning();
    let dev = |g: GroupElement| g.dist(&one) / cond;
    let (da, dp) = (
        -t.angle_a + t.angle_b + t.angle_c,
        -t.psi_a + t.psi_b + t.psi_c,
    );
    let (sa, sp) = (-t.a + t.b + t.c, -t.phi_a + t.phi_b + t.phi_c);
    let ta = f.translate(0, -t.a, -t.phi_a);
    let tb = f.translate(1, t.b, t.phi_b);
    let tc = f.translate(2, t.c, t.phi_c);
    let ra = f.rotate(0, -t.angle_a, -t.psi_a);
    let rb = f.rotate(1, t.angle_b, t.psi_b);
    let rc = f.rotate(2, t.angle_c, t.psi_c);
    let prod = |gs: [&GroupElement; 4]| {
        gs[0]
            .mul_unchecked(gs[1])
            .mul_unchecked(gs[2])
            .mul_unchecked(gs[3])
    };
    let point = [
        dev(prod([&tb, &ta, &tc, &f.rotate(0, da, dp)])),
        dev(prod([&tc, &tb, &ta, &f.rotate(1, da, dp)])),
        dev(prod([&ta, &tc, &tb, &f.rotate(2, da, dp)])),
    ];
    let line = [
        dev(prod([&rb, &ra, &rc, &f.translate(0, sa, sp)])),
        dev(prod([&rc, &rb, &ra, &f.translate(1, sa, sp)])),
        dev(prod([&ra, &rc, &rb, &f.translate(2, sa, sp)])),
    ];
    LoopResiduals {
        point,
        line,
        compat: compat_residual(&f, t) / cond,
    }
}

/// P_a from P_c through vertex B, and J_B from J_A through side c.
fn compat_residual(f: &Frames, t: &TriangleData) -> f64 {
    use Generator::*;
    let via_b = f.rotate(1, t.angle_b, t.psi_b).mul_unchecked(&f.side[2]);
    let via_c = f.translate(2, t.c, t.phi_c).mul_unchecked(&f.vertex[0]);
    let mut worst: f64 = 0.0;
    for g in [P1, T1] {
        worst = worst.max(f.conj(&via_b, g).matrix.dist(&f.conj(&f.side[0], g).matrix));
    }
    for g in [J, I] {
        worst = worst.max(
            f.conj(&via_c, g)
                .matrix
                .dist(&f.conj(&f.vertex[1], g).matrix),
        );
    }
    worst
}
