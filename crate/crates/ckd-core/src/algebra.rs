//! The twelve generators of the Lie algebra in its 3×3 representation,
//! the bracket table, Cartan combinations, Casimir, duality and involutions.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{CkdError, Result};
use crate::scalars::{Cd, CdScalar, SpaceLabels};

pub type Rat = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    P1,
    P2,
    Q1,
    Q2,
    J,
    M,
    B,
    I,
    T1,
    T2,
    H1,
    H2,
}

impl Generator {
    pub const ALL: [Generator; 12] = [
        Generator::P1,
        Generator::P2,
        Generator::Q1,
        Generator::Q2,
        Generator::J,
        Generator::M,
        Generator::B,
        Generator::I,
        Generator::T1,
        Generator::T2,
        Generator::H1,
        Generator::H2,
    ];

    pub fn is_cartan(self) -> bool {
        use Generator::*;
        matches!(self, B | I | T1 | T2 | H1 | H2)
    }

    pub fn name(self) -> &'static str {
        use Generator::*;
        match self {
            P1 => "P1",
            P2 => "P2",
            Q1 => "Q1",
            Q2 => "Q2",
            J => "J",
            M => "M",
            B => "B",
            I => "I",
            T1 => "T1",
            T2 => "T2",
            H1 => "H1",
            H2 => "H2",
        }
    }

    /// Diagonal of a Cartan generator, to be multiplied by i.
    pub fn cartan_diagonal(self) -> Option<[Rat; 3]> {
        use Generator::*;
        let r = |n: i64, d: i64| Rat::new(n, d);
        Some(match self {
            B => [r(0, 1), r(-1, 1), r(1, 1)],
            I => [r(-2, 3), r(1, 3), r(1, 3)],
            T1 => [r(-1, 3), r(-1, 3), r(2, 3)],
            T2 => [r(-1, 3), r(2, 3), r(-1, 3)],
            H1 => [r(-1, 1), r(1, 1), r(0, 1)],
            H2 => [r(-1, 1), r(0, 1), r(1, 1)],
            _ => return None,
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Generator::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown generator {s:?}"))
    }
}

/// 3×3 matrix with entries in ℂ_η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdMat<T> {
    pub m: [[Cd<T>; 3]; 3],
}

impl<T: Copy + Num + Neg<Output = T>> CdMat<T> {
    pub fn zero() -> Self {
        Self {
            m: [[Cd::zero(); 3]; 3],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([Cd::one(); 3])
    }

    pub fn diagonal(d: [Cd<T>; 3]) -> Self {
        let mut out = Self::zero();
        for (i, z) in d.into_iter().enumerate() {
            out.m[i][i] = z;
        }
        out
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Cd<T>) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = f(i, j);
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> Cd<T> {
        self.m[i][j]
    }

    pub fn mul(&self, o: &Self, eta: T) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(Cd::zero(), |acc, k| acc + self.m[i][k].mul(o.m[k][j], eta))
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] + o.m[i][j])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j] - o.m[i][j])
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_fn(|i, j| self.m[i][j].scale(k))
    }

    pub fn scale_cd(&self, z: Cd<T>, eta: T) -> Self {
        Self::from_fn(|i, j| z.mul(self.m[i][j], eta))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].conj())
    }

    pub fn trace(&self) -> Cd<T> {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    /// XY − YX.
    pub fn commutator(&self, o: &Self, eta: T) -> Self {
        self.mul(o, eta).sub(&o.mul(self, eta))
    }

    /// Cofactor expansion; needs no division, so zero divisors are harmless.
    pub fn det(&self, eta: T) -> Cd<T> {
        let m = &self.m;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1].mul(m[r2][c2], eta) - m[r1][c2].mul(m[r2][c1], eta)
        };
        m[0][0].mul(minor(1, 2, 1, 2), eta) - m[0][1].mul(minor(1, 2, 0, 2), eta)
            + m[0][2].mul(minor(1, 2, 0, 1), eta)
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|z| z.is_zero())
    }
}

impl CdMat<f64> {
    /// Largest |re| or |im| over all entries.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .fold(0.0, |acc, z| acc.max(z.max_abs()))
    }

    /// Entrywise distance max(|Δre|, |Δim|).
    pub fn dist(&self, o: &Self) -> f64 {
        self.sub(o).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.is_finite())
    }
}

impl CdMat<Rat> {
    pub fn to_f64(&self) -> CdMat<f64> {
        let f = |r: Rat| r.to_f64().unwrap_or(f64::NAN);
        CdMat::from_fn(|i, j| Cd::new(f(self.m[i][j].re), f(self.m[i][j].im)))
    }
}

/// The 3×3 matrix of a generator, over any coefficient field.
pub fn rep_generic<T: Copy + Num + Neg<Output = T>>(g: Generator, k1: T, k2: T) -> CdMat<T> {
    use Generator::*;
    let mut x = CdMat::<T>::zero();
    let one = T::one();
    let re = Cd::real;
    let im = |v: T| Cd::new(T::zero(), v);
    match g {
        P1 => {
            x.m[0][1] = re(-k1);
            x.m[1][0] = re(one);
        }
        P2 => {
            x.m[0][2] = re(-(k1 * k2));
            x.m[2][0] = re(one);
        }
        J => {
            x.m[1][2] = re(-k2);
            x.m[2][1] = re(one);
        }
        Q1 => {
            x.m[0][1] = im(k1);
            x.m[1][0] = im(one);
        }
        Q2 => {
            x.m[0][2] = im(k1 * k2);
            x.m[2][0] = im(one);
        }
        M => {
            x.m[1][2] = im(k2);
            x.m[2][1] = im(one);
        }
        _ => {
            let three = one + one + one;
            let d = g.cartan_diagonal().expect("Cartan generator");
            for (i, r) in d.iter().enumerate() {
                let num = (0..r.numer().abs()).fold(T::zero(), |acc, _| acc + one);
                let val = match *r.denom() {
                    1 => num,
                    _ => num / three,
                };
                x.m[i][i] = im(if *r.numer() < 0 { -val } else { val });
            }
        }
    }
    x
}

/// Exact matrix of a generator for rational labels.
pub fn rep_exact(g: Generator, k1: Rat, k2: Rat) -> CdMat<Rat> {
    rep_generic(g, k1, k2)
}

/// Rational labels when every label is an integer.
pub fn exact_labels(l: &SpaceLabels) -> Option<[Rat; 3]> {
    let conv = |x: f64| {
        if x.fract() == 0.0 && x.abs() < 1e15 {
            Some(Rat::from_integer(x as i64))
        } else {
            None
        }
    };
    Some([conv(l.eta)?, conv(l.kappa1)?, conv(l.kappa2)?])
}

/// An element of the algebra in the 3×3 representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    pub matrix: CdMat<f64>,
    pub labels: SpaceLabels,
}

impl AlgebraElement {
    pub fn rep(g: Generator, labels: SpaceLabels) -> Self {
        Self {
            matrix: rep_generic(g, labels.kappa1, labels.kappa2),
            labels,
        }
    }

    pub fn scale(&self, t: f64) -> Self {
        Self {
            matrix: self.matrix.scale(t),
            labels: self.labels,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.labels != o.labels {
            return Err(CkdError::LabelMismatch);
        }
        Ok(Self {
            matrix: self.matrix.add(&o.matrix),
            labels: self.labels,
        })
    }

    pub fn trace(&self) -> CdScalar {
        self.matrix.trace()
    }

    /// X†Λ + ΛX, which vanishes on the algebra.
    pub fn hermiticity_defect(&self) -> f64 {
        let lam = self.labels.lambda();
        let l = CdMat::diagonal(lam.map(Cd::real));
        let eta = self.labels.eta;
        let a = self.matrix.conj_transpose().mul(&l, eta);
        let b = l.mul(&self.matrix, eta);
        a.add(&b).max_abs()
    }
}

pub fn rep(g: Generator, labels: SpaceLabels) -> AlgebraElement {
    AlgebraElement::rep(g, labels)
}

pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if x.labels != y.labels {
        return Err(CkdError::LabelMismatch);
    }
    Ok(AlgebraElement {
        matrix: x.matrix.commutator(&y.matrix, x.labels.eta),
        labels: x.labels,
    })
}

/// Integer multiple of a monomial η^e κ₁^p κ₂^q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: i64,
    pub eta: u8,
    pub k1: u8,
    pub k2: u8,
}

impl Monomial {
    pub const fn new(coeff: i64, eta: u8, k1: u8, k2: u8) -> Self {
        Self { coeff, eta, k1, k2 }
    }

    pub fn eval<T: Copy + Num + Neg<Output = T>>(&self, eta: T, k1: T, k2: T) -> T {
        let pow = |x: T, n: u8| (0..n).fold(T::one(), |acc, _| acc * x);
        let mut c = T::zero();
        for _ in 0..self.coeff.unsigned_abs() {
            c = c + T::one();
        }
        if self.coeff < 0 {
            c = -c;
        }
        c * pow(eta, self.eta) * pow(k1, self.k1) * pow(k2, self.k2)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self.coeff {
            1 => {}
            -1 => s.push('-'),
            c => s.push_str(&c.to_string()),
        }
        for (sym, n) in [("η", self.eta), ("κ₁", self.k1), ("κ₂", self.k2)] {
            for _ in 0..n {
                s.push_str(sym);
            }
        }
        f.write_str(&s)
    }
}

/// One line of the commutation table: [left, right] = rhs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketRule {
    pub left: Generator,
    pub right: Generator,
    pub rhs: Option<(Monomial, Generator)>,
}

impl fmt::Display for BracketRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rhs {
            None => write!(f, "[{},{}] = 0", self.left, self.right),
            Some((m, g)) => write!(f, "[{},{}] = {}{}", self.left, self.right, m, g),
        }
    }
}

/// The full table: every unordered pair of generators, 66 rules.
pub fn commutation_table() -> Vec<BracketRule> {
    use Generator::*;
    let m = Monomial::new;
    let r = |left, right, c, e, a, b, g| BracketRule {
        left,
        right,
        rhs: Some((m(c, e, a, b), g)),
    };
    let z = |left, right| BracketRule {
        left,
        right,
        rhs: None,
    };
    let mut t = vec![
        r(P1, P2, 1, 0, 1, 0, J),
        r(P1, Q1, 2, 0, 1, 0, H1),
        r(P1, Q2, 1, 0, 1, 0, M),
        r(P1, J, -1, 0, 0, 0, P2),
        r(P1, M, -1, 0, 0, 0, Q2),
        r(P2, Q1, 1, 0, 1, 0, M),
        r(P2, Q2, 2, 0, 1, 1, H2),
        r(P2, J, 1, 0, 0, 1, P1),
        r(P2, M, -1, 0, 0, 1, Q1),
        r(Q1, Q2, 1, 1, 1, 0, J),
        r(Q1, J, -1, 0, 0, 0, Q2),
        r(Q1, M, 1, 1, 0, 0, P2),
        r(Q2, J, 1, 0, 0, 1, Q1),
        r(Q2, M, 1, 1, 0, 1, P1),
        r(J, M, 2, 0, 0, 1, B),
        // B
        r(P1, B, 1, 0, 0, 0, Q1),
        r(P2, B, -1, 0, 0, 0, Q2),
        r(Q1, B, -1, 1, 0, 0, P1),
        r(Q2, B, 1, 1, 0, 0, P2),
        r(J, B, -2, 0, 0, 0, M),
        r(M, B, 2, 1, 0, 0, J),
        // I
        r(P1, I, -1, 0, 0, 0, Q1),
        r(P2, I, -1, 0, 0, 0, Q2),
        r(Q1, I, 1, 1, 0, 0, P1),
        r(Q2, I, 1, 1, 0, 0, P2),
        z(J, I),
        z(M, I),
        // T1
        z(P1, T1),
        r(P2, T1, -1, 0, 0, 0, Q2),
        z(Q1, T1),
        r(Q2, T1, 1, 1, 0, 0, P2),
        r(J, T1, -1, 0, 0, 0, M),
        r(M, T1, 1, 1, 0, 0, J),
        // T2
        r(P1, T2, -1, 0, 0, 0, Q1),
        z(P2, T2),
        r(Q1, T2, 1, 1, 0, 0, P1),
        z(Q2, T2),
        r(J, T2, 1, 0, 0, 0, M),
        r(M, T2, -1, 1, 0, 0, J),
        // H1
        r(P1, H1, -2, 0, 0, 0, Q1),
        r(P2, H1, -1, 0, 0, 0, Q2),
        r(Q1, H1, 2, 1, 0, 0, P1),
        r(Q2, H1, 1, 1, 0, 0, P2),
        r(J, H1, 1, 0, 0, 0, M),
        r(M, H1, -1, 1, 0, 0, J),
        // H2
        r(P1, H2, -1, 0, 0, 0, Q1),
        r(P2, H2, -2, 0, 0, 0, Q2),
        r(Q1, H2, 1, 1, 0, 0, P1),
        r(Q2, H2, 2, 1, 0, 0, P2),
        r(J, H2, -1, 0, 0, 0, M),
        r(M, H2, 1, 1, 0, 0, J),
    ];
    let cartan = [B, I, T1, T2, H1, H2];
    for (n, &a) in cartan.iter().enumerate() {
        for &b in &cartan[n + 1..] {
            t.push(z(a, b));
        }
    }
    t
}

/// Result of checking one bracket rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketCheck {
    pub rule: String,
    pub pass: bool,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub labels: SpaceLabels,
    /// True when the comparisons were done in rational arithmetic.
    pub exact: bool,
    pub checks: Vec<BracketCheck>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn failures(&self) -> Vec<&BracketCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Compare a computed matrix with an expected one, exactly when possible.
enum Field {
    Exact([Rat; 3]),
    Float(SpaceLabels),
}

impl Field {
    fn of(labels: &SpaceLabels) -> Self {
        match exact_labels(labels) {
            Some(r) => Field::Exact(r),
            None => Field::Float(*labels),
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, Field::Exact(_))
    }

    /// Evaluate `f` in the field and return the deviation of `lhs − rhs`.
    fn check(
        &self,
        lhs: impl Fn(&dyn Fn(Generator) -> MatAny, &dyn Fn(&MatAny, &MatAny) -> MatAny) -> MatAny,
        rhs: impl Fn(&dyn Fn(Generator) -> MatAny, &dyn Fn(Monomial) -> ScalarAny) -> MatAny,
    ) -> (bool, f64) {
        match self {
            Field::Exact([eta, k1, k2]) => {
                let (eta, k1, k2) = (*eta, *k1, *k2);
                let gen = |g| MatAny::Exact(rep_exact(g, k1, k2));
                let br = |a: &MatAny, b: &MatAny| a.commutator_exact(b, eta);
                let mono = |m: Monomial| ScalarAny::Exact(m.eval(eta, k1, k2));
                let d = lhs(&gen, &br).sub(&rhs(&gen, &mono));
                match d {
                    MatAny::Exact(x) => {
                        let dev = x.to_f64().max_abs();
                        (x.is_zero(), dev)
                    }
                    MatAny::Float(_) => unreachable!(),
                }
            }
            Field::Float(l) => {
                let l = *l;
                let gen = |g| MatAny::Float(rep_generic(g, l.kappa1, l.kappa2));
                let br = |a: &MatAny, b: &MatAny| a.commutator_float(b, l.eta);
                let mono = |m: Monomial| ScalarAny::Float(m.eval(l.eta, l.kappa1, l.kappa2));
                let d = lhs(&gen, &br).sub(&rhs(&gen, &mono));
                let dev = match d {
                    MatAny::Float(x) => x.max_abs(),
                    MatAny::Exact(_) => unreachable!(),
                };
                let scale = 1.0_f64
                    .max(l.eta.abs())
                    .max(l.kappa1.abs())
                    .max(l.kappa2.abs());
                (dev <= 1e-12 * scale * scale * scale, dev)
            }
        }
    }
}

#[derive(Clone)]
enum MatAny {
    Exact(CdMat<Rat>),
    Float(CdMat<f64>),
}

enum ScalarAny {
    Exact(Rat),
    Float(f64),
}

impl MatAny {
    fn sub(&self, o: &Self) -> Self {
        match (self, o) {
            (MatAny::Exact(a), MatAny::Exact(b)) => MatAny::Exact(a.sub(b)),
            (MatAny::Float(a), MatAny::Float(b)) => MatAny::Float(a.sub(b)),
            _ => unreachable!(),
        }
    }
    fn scale(&self, s: &ScalarAny) -> Self {
        match (self, s) {
            (MatAny::Exact(a), ScalarAny::Exact(k)) => MatAny::Exact(a.scale(*k)),
            (MatAny::Float(a), ScalarAny::Float(k)) => MatAny::Float(a.scale(*k)),
            _ => unreachable!(),
        }
    }
    fn zero_like(&self) -> Self {
        match self {
            MatAny::Exact(_) => MatAny::Exact(CdMat::zero()),
            MatAny::Float(_) => MatAny::Float(CdMat::zero()),
        }
    }
    fn commutator_exact(&self, o: &Self, eta: Rat) -> Self {
        match (self, o) {
            (MatAny::Exact(a), MatAny::Exact(b)) => MatAny::Exact(a.commutator(b, eta)),
            _ => unreachable!(),
        }
    }
    fn commutator_float(&self, o: &Self, eta: f64) -> Self {
        match (self, o) {
            (MatAny::Float(a), MatAny::Float(b)) => MatAny::Float(a.commutator(b, eta)),
            _ => unreachable!(),
        }
    }
}

fn rule_rhs(
    rhs: Option<(Monomial, Generator)>,
    gen: &dyn Fn(Generator) -> MatAny,
    mono: &dyn Fn(Monomial) -> ScalarAny,
    map: impl Fn(Generator) -> (i64, Generator),
) -> MatAny {
    match rhs {
        None => gen(Generator::P1).zero_like(),
        Some((m, g)) => {
            let (s, h) = map(g);
            let m = Monomial {
                coeff: m.coeff * s,
                ..m
            };
            gen(h).scale(&mono(m))
        }
    }
}

/// Evaluate every rule of `table` in the representation for `labels`.
pub fn check_table(labels: &SpaceLabels, table: &[BracketRule]) -> AlgebraReport {
    let field = Field::of(labels);
    let checks = table
        .iter()
        .map(|rule| {
            let (pass, deviation) = field.check(
                |gen, br| br(&gen(rule.left), &gen(rule.right)),
                |gen, mono| rule_rhs(rule.rhs, gen, mono, |g| (1, g)),
            );
            BracketCheck {
                rule: rule.to_string(),
                pass,
                deviation,
            }
        })
        .collect();
    AlgebraReport {
        labels: *labels,
        exact: field.is_exact(),
        checks,
    }
}

pub fn check_commutation_table(labels: &SpaceLabels) -> AlgebraReport {
    check_table(labels, &commutation_table())
}

/// Express a Cartan generator as coefficients (of I, of B).
pub fn cartan_combination(g: Generator) -> Result<(Rat, Rat)> {
    use Generator::*;
    let h = |n| Rat::new(n, 2);
    match g {
        I => Ok((Rat::from_integer(1), Rat::from_integer(0))),
        B => Ok((Rat::from_integer(0), Rat::from_integer(1))),
        T1 => Ok((h(1), h(1))),
        T2 => Ok((h(1), h(-1))),
        H1 => Ok((h(3), h(-1))),
        H2 => Ok((h(3), h(1))),
        _ => Err(CkdError::NotCartan(g)),
    }
}

/// The quadratic Casimir evaluated as a 3×3 matrix.
pub fn casimir_generic<T: Copy + Num + Neg<Output = T>>(eta: T, k1: T, k2: T) -> CdMat<T> {
    use Generator::*;
    let g = |x| rep_generic(x, k1, k2);
    let sq = |x| g(x).mul(&g(x), eta);
    let block = |p, q, h, kh: T| sq(p).scale(eta).add(&sq(q)).add(&sq(h).scale(kh));
    let c2 = block(P2, Q2, H2, k1 * k2);
    let c1 = block(P1, Q1, H1, k1).scale(k2);
    let c0 = block(J, M, B, k2).scale(k1);
    c2.add(&c1).add(&c0)
}

pub fn casimir(labels: &SpaceLabels) -> AlgebraElement {
    AlgebraElement {
        matrix: casimir_generic(labels.eta, labels.kappa1, labels.kappa2),
        labels: *labels,
    }
}

/// [𝒞, rep(g)] for every generator.
pub fn check_casimir(labels: &SpaceLabels) -> AlgebraReport {
    let field = Field::of(labels);
    let checks = Generator::ALL
        .iter()
        .map(|&g| {
            let (pass, deviation) = match &field {
                Field::Exact([eta, k1, k2]) => {
                    let c = casimir_generic(*eta, *k1, *k2);
                    let d = c.commutator(&rep_exact(g, *k1, *k2), *eta);
                    (d.is_zero(), d.to_f64().max_abs())
                }
                Field::Float(l) => {
                    let c = casimir(l).matrix;
                    let d = c.commutator(&rep(g, *l).matrix, l.eta).max_abs();
                    let s = 1.0_f64
                        .max(l.eta.abs())
                        .max(l.kappa1.abs())
                        .max(l.kappa2.abs());
                    (d <= 1e-12 * s.powi(5), d)
                }
            };
            BracketCheck {
                rule: format!("[C,{g}] = 0"),
                pass,
                deviation,
            }
        })
        .collect();
    AlgebraReport {
        labels: *labels,
        exact: field.is_exact(),
        checks,
    }
}

/// Image of a generator under ordinary duality, as (sign, generator).
/// The Cartan images not tabulated directly follow by linearity.
pub fn duality_map(g: Generator) -> (i64, Generator) {
    use Generator::*;
    match g {
        P1 => (-1, J),
        Q1 => (-1, M),
        P2 => (-1, P2),
        Q2 => (-1, Q2),
        J => (-1, P1),
        M => (-1, Q1),
        H2 => (1, H2),
        T2 => (-1, T2),
        B => (1, H1),
        I => (1, T1),
        T1 => (1, I),
        H1 => (1, B),
    }
}

/// [D X, D Y] in the dual labels against D([X, Y]) for every rule.
pub fn check_duality(labels: &SpaceLabels) -> AlgebraReport {
    check_automorphism(labels, &labels.dual(), "D", duality_map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Involution {
    Pi1,
    Pi2,
    Pi02,
    Extra,
}

impl Involution {
    pub const ALL: [Involution; 4] = [
        Involution::Pi1,
        Involution::Pi2,
        Involution::Pi02,
        Involution::Extra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Involution::Pi1 => "Pi1",
            Involution::Pi2 => "Pi2",
            Involution::Pi02 => "Pi02",
            Involution::Extra => "Extra",
        }
    }
}

/// Sign picked up by a generator under an involution.
pub fn involution(which: Involution, g: Generator) -> i64 {
    use Generator::*;
    let flip = match which {
        Involution::Pi1 => matches!(g, P1 | P2 | Q1 | Q2),
        Involution::Pi2 => matches!(g, P2 | Q2 | J | M),
        Involution::Pi02 => return involution(Involution::Pi1, g) * involution(Involution::Pi2, g),
        Involution::Extra => matches!(g, Q1 | Q2 | M) || g.is_cartan(),
    };
    if flip {
        -1
    } else {
        1
    }
}

/// Generators fixed by an involution.
pub fn fixed_generators(which: Involution) -> Vec<Generator> {
    Generator::ALL
        .iter()
        .copied()
        .filter(|&g| involution(which, g) == 1)
        .collect()
}

pub fn check_involution(labels: &SpaceLabels, which: Involution) -> AlgebraReport {
    check_automorphism(labels, labels, which.name(), move |g| {
        (involution(which, g), g)
    })
}

fn check_automorphism(
    labels: &SpaceLabels,
    target: &SpaceLabels,
    name: &str,
    map: impl Fn(Generator) -> (i64, Generator) + Copy,
) -> AlgebraReport {
    let field = Field::of(labels);
    let image = Field::of(target);
    let checks = commutation_table()
        .iter()
        .map(|rule| {
            // structure constants are read in the source labels, matrices live in the target
            let (pass, deviation) = match (&field, &image) {
                (Field::Exact(src), Field::Exact(dst)) => {
                    let [eta, k1, k2] = *dst;
                    let g = |x: Generator| {
                        let (s, h) = map(x);
                        rep_exact(h, k1, k2).scale(Rat::from_integer(s))
                    };
                    let lhs = g(rule.left).commutator(&g(rule.right), eta);
                    let rhs = match rule.rhs {
                        None => CdMat::zero(),
                        Some((m, h)) => g(h).scale(m.eval(src[0], src[1], src[2])),
                    };
                    let d = lhs.sub(&rhs);
                    (d.is_zero(), d.to_f64().max_abs())
                }
                _ => {
                    let (eta, k1, k2) = (target.eta, target.kappa1, target.kappa2);
                    let g = |x: Generator| {
                        let (s, h) = map(x);
                        rep_generic(h, k1, k2).scale(s as f64)
                    };
                    let lhs = g(rule.left).commutator(&g(rule.right), eta);
                    let rhs = match rule.rhs {
                        None => CdMat::zero(),
                        Some((m, h)) => {
                            g(h).scale(m.eval(labels.eta, labels.kappa1, labels.kappa2))
                        }
                    };
                    let d = lhs.dist(&rhs);
                    (d <= 1e-12 * (1.0 + lhs.max_abs()), d)
                }
            };
            BracketCheck {
                rule: format!("{name}: {rule}"),
                pass,
                deviation,
            }
        })
        .collect();
    AlgebraReport {
        labels: *labels,
        exact: field.is_exact() && image.is_exact(),
        checks,
    }
}

/// X†Λ + ΛX = 0 and zero trace for every generator, exact for integer labels.
pub fn check_anti_hermitian(labels: &SpaceLabels) -> AlgebraReport {
    let checks = Generator::ALL
        .iter()
        .map(|&g| {
            let (pass, deviation) = match exact_labels(labels) {
                Some([eta, k1, k2]) => {
                    let x = rep_exact(g, k1, k2);
                    let l = CdMat::diagonal([Rat::from_integer(1), k1, k1 * k2].map(Cd::real));
                    let d = x.conj_transpose().mul(&l, eta).add(&l.mul(&x, eta));
                    let tr = x.trace();
                    (d.is_zero() && tr.is_zero(), d.to_f64().max_abs())
                }
                None => {
                    let x = rep(g, *labels);
                    let d = x.hermiticity_defect();
                    let tr = x.trace().max_abs();
                    (d <= 1e-12 && tr <= 1e-15, d.max(tr))
                }
            };
            BracketCheck {
                rule: format!("{g} anti-hermitian, traceless"),
                pass,
                deviation,
            }
        })
        .collect();
    AlgebraReport {
        labels: *labels,
        exact: exact_labels(labels).is_some(),
        checks,
    }
}

/// Everything the algebra module can verify for one set of labels.
pub fn full_check(labels: &SpaceLabels) -> Vec<(String, AlgebraReport)> {
    let mut out = vec![
        ("commutators".to_string(), check_commutation_table(labels)),
        ("casimir".to_string(), check_casimir(labels)),
        ("duality".to_string(), check_duality(labels)),
        ("anti_hermitian".to_string(), check_anti_hermitian(labels)),
    ];
    for w in Involution::ALL {
        out.push((
            format!("involution_{}", w.name()),
            check_involution(labels, w),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n)
    }

    #[test]
    fn examples_from_the_table() {
        let x = rep_exact(B, r(1), r(1));
        assert_eq!(x.m[0][0], Cd::zero());
        assert_eq!(x.m[1][1], Cd::new(r(0), r(-1)));
        assert_eq!(x.m[2][2], Cd::new(r(0), r(1)));
        let h1 = rep_exact(H1, r(-1), r(0));
        assert_eq!(
            h1,
            CdMat::diagonal([Cd::new(r(0), r(-1)), Cd::new(r(0), r(1)), Cd::zero()])
        );
        let p1 = rep_exact(P1, r(0), r(1));
        assert_eq!(p1.m[0][1], Cd::zero());
        assert_eq!(p1.m[1][0], Cd::one());
        assert_eq!(
            rep_exact(I, r(1), r(1)).m[0][0],
            Cd::new(r(0), Rat::new(-2, 3))
        );
    }

    #[test]
    fn brackets_from_examples() {
        for l in SpaceLabels::all_normalized() {
            let [eta, k1, k2] = exact_labels(&l).unwrap();
            let g = |x| rep_exact(x, k1, k2);
            assert_eq!(g(P1).commutator(&g(Q1), eta), g(H1).scale(r(2) * k1));
            assert!(g(J).commutator(&g(I), eta).is_zero());
            assert_eq!(g(Q1).commutator(&g(B), eta), g(P1).scale(-eta));
        }
    }

    #[test]
    fn table_covers_every_pair_once() {
        let t = commutation_table();
        assert_eq!(t.len(), 66);
        let mut seen = std::collections::HashSet::new();
        for rule in &t {
            let key = if rule.left < rule.right {
                (rule.left, rule.right)
            } else {
                (rule.right, rule.left)
            };
            assert!(seen.insert(key), "duplicate {rule}");
        }
    }

    #[test]
    fn table_holds_exactly_everywhere() {
        for l in SpaceLabels::all_normalized() {
            let rep = check_commutation_table(&l);
            assert!(rep.exact);
            assert!(rep.all_pass(), "{l}: {:?}", rep.failures());
        }
    }

    #[test]
    fn table_holds_for_generic_real_labels() {
        let rep = check_commutation_table(&SpaceLabels::of(0.7, -1.3, 2.1));
        assert!(!rep.exact);
        assert!(rep.all_pass(), "{:?}", rep.failures());
    }

    #[test]
    fn corrupted_rule_is_caught() {
        let mut t = commutation_table();
        t[0].rhs = Some((Monomial::new(2, 0, 1, 0), J));
        let rep = check_table(&SpaceLabels::of(1.0, 1.0, 1.0), &t);
        assert_eq!(rep.failures().len(), 1);
        // at κ₁ = 0 both sides vanish, so the corruption is invisible there
        let rep = check_table(&SpaceLabels::of(1.0, 0.0, 1.0), &t);
        assert!(rep.all_pass());
    }

    #[test]
    fn cartan_combinations_are_exact() {
        for g in [T1, T2, H1, H2, B, I] {
            let (ci, cb) = cartan_combination(g).unwrap();
            let lhs = rep_exact(I, r(1), r(1))
                .scale(ci)
                .add(&rep_exact(B, r(1), r(1)).scale(cb));
            assert_eq!(lhs, rep_exact(g, r(1), r(1)), "{g}");
        }
        assert!(matches!(
            cartan_combination(P1),
            Err(CkdError::NotCartan(P1))
        ));
        let d = rep_exact(T2, r(1), r(1)).sub(
            &rep_exact(I, r(1), r(1))
                .sub(&rep_exact(B, r(1), r(1)))
                .scale(Rat::new(1, 2)),
        );
        assert!(d.is_zero());
    }

    #[test]
    fn casimir_commutes_everywhere() {
        for l in SpaceLabels::all_normalized() {
            let rep = check_casimir(&l);
            assert!(rep.exact && rep.all_pass(), "{l}: {:?}", rep.failures());
        }
        assert!(check_casimir(&SpaceLabels::of(0.4, -2.0, 1.5)).all_pass());
    }

    #[test]
    fn casimir_at_flat_kappas() {
        for eta in [r(1), r(0), r(-1)] {
            let c = casimir_generic(eta, r(0), r(0));
            let p2 = rep_exact(P2, r(0), r(0));
            let q2 = rep_exact(Q2, r(0), r(0));
            let expect = p2.mul(&p2, eta).scale(eta).add(&q2.mul(&q2, eta));
            assert_eq!(c, expect);
        }
        for l in SpaceLabels::all_normalized() {
            assert_eq!(casimir(&l).trace().im, 0.0);
        }
    }

    #[test]
    fn duality_is_an_involutive_automorphism() {
        for g in Generator::ALL {
            let (s1, h) = duality_map(g);
            let (s2, back) = duality_map(h);
            assert_eq!((s1 * s2, back), (1, g));
        }
        assert_eq!(duality_map(P1), (-1, J));
        assert_eq!(duality_map(H2), (1, H2));
        assert_eq!(duality_map(T2), (-1, T2));
        for l in SpaceLabels::all_normalized() {
            let rep = check_duality(&l);
            assert!(rep.all_pass(), "{l}: {:?}", rep.failures());
        }
    }

    #[test]
    fn duality_on_cartan_matches_linearity() {
        // D(T1) = (D(I) + D(B))/2 and so on, read through the combination table
        for g in [T1, T2, H1, H2] {
            let (ci, cb) = cartan_combination(g).unwrap();
            let (si, gi) = duality_map(I);
            let (sb, gb) = duality_map(B);
            let (sg, gg) = duality_map(g);
            let lin = rep_exact(gi, r(1), r(1))
                .scale(ci * r(si))
                .add(&rep_exact(gb, r(1), r(1)).scale(cb * r(sb)));
            assert_eq!(lin, rep_exact(gg, r(1), r(1)).scale(r(sg)), "{g}");
        }
    }

    #[test]
    fn involutions() {
        assert_eq!(involution(Involution::Pi1, P1), -1);
        assert_eq!(involution(Involution::Pi2, J), -1);
        assert_eq!(involution(Involution::Extra, B), -1);
        for g in Generator::ALL {
            let p = involution(Involution::Pi1, g) * involution(Involution::Pi2, g);
            assert_eq!(p, involution(Involution::Pi02, g));
        }
        assert_eq!(
            fixed_generators(Involution::Pi1),
            vec![J, M, B, I, T1, T2, H1, H2]
        );
        assert_eq!(
            fixed_generators(Involution::Pi2),
            vec![P1, Q1, B, I, T1, T2, H1, H2]
        );
        assert_eq!(
            fixed_generators(Involution::Pi02),
            vec![P2, Q2, B, I, T1, T2, H1, H2]
        );
        for l in SpaceLabels::all_normalized() {
            for w in Involution::ALL {
                let rep = check_involution(&l, w);
                assert!(rep.all_pass(), "{l} {w:?}: {:?}", rep.failures());
            }
        }
    }

    #[test]
    fn generators_are_anti_hermitian() {
        for l in SpaceLabels::all_normalized() {
            assert!(check_anti_hermitian(&l).all_pass());
        }
        assert!(check_anti_hermitian(&SpaceLabels::of(0.3, 2.0, -0.7)).all_pass());
    }

    #[test]
    fn float_bracket_checks_labels() {
        let a = rep(P1, SpaceLabels::of(1.0, 1.0, 1.0));
        let b = rep(P2, SpaceLabels::of(1.0, 1.0, 0.0));
        assert_eq!(bracket(&a, &b), Err(CkdError::LabelMismatch));
    }
}
