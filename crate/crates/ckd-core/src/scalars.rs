//! Space labels, the Cayley-Dickson scalars ℂ_η and labeled trigonometry.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{CkdError, Result};

/// Default relative tolerance shared by the whole residual framework.
pub const DEFAULT_TOL: f64 = 1e-9;

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// The triple (η; κ₁, κ₂) selecting one of the geometries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceLabels {
    pub eta: f64,
    pub kappa1: f64,
    pub kappa2: f64,
}

impl SpaceLabels {
    pub fn new(eta: f64, kappa1: f64, kappa2: f64) -> Result<Self> {
        if eta.is_finite() && kappa1.is_finite() && kappa2.is_finite() {
            Ok(Self {
                eta,
                kappa1,
                kappa2,
            })
        } else {
            Err(CkdError::NonFiniteLabels(eta, kappa1, kappa2))
        }
    }

    /// Constructor for literals known to be finite.
    pub const fn of(eta: f64, kappa1: f64, kappa2: f64) -> Self {
        Self {
            eta,
            kappa1,
            kappa2,
        }
    }

    /// Replace every label by its sign.
    pub fn normalize(&self) -> Self {
        Self::of(sign(self.eta), sign(self.kappa1), sign(self.kappa2))
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Labels of the dual space: κ₁ and κ₂ swap.
    pub fn dual(&self) -> Self {
        Self::of(self.eta, self.kappa2, self.kappa1)
    }

    /// Diagonal of the invariant hermitian form.
    pub fn lambda(&self) -> [f64; 3] {
        [1.0, self.kappa1, self.kappa1 * self.kappa2]
    }

    /// Name of the geometry, read off the signs of the labels.
    pub fn classify(&self) -> String {
        let n = self.normalize();
        let family = match n.eta as i32 {
            1 => "Complex Hermitian",
            0 => "Parabolic Complex Hermitian",
            _ => "Split Complex Hermitian",
        };
        let kind = match (n.kappa1 as i32, n.kappa2 as i32) {
            (1, 1) => "Elliptic",
            (0, 1) => "Euclidean",
            (-1, 1) => "Hyperbolic",
            (1, 0) => "Co-Euclidean (Oscillating Newton-Hooke)",
            (0, 0) => "Galilean",
            (-1, 0) => "Co-Minkowskian (Expanding Newton-Hooke)",
            (1, -1) => "Co-Hyperbolic (Anti-de Sitter)",
            (0, -1) => "Minkowskian",
            _ => "Doubly Hyperbolic (De Sitter)",
        };
        format!("{family} {kind}")
    }

    /// The 27 normalized triples, η outermost.
    pub fn all_normalized() -> Vec<Self> {
        let v = [1.0, 0.0, -1.0];
        let mut out = Vec::with_capacity(27);
        for &eta in &v {
            for &k1 in &v {
                for &k2 in &v {
                    out.push(Self::of(eta, k1, k2));
                }
            }
        }
        out
    }
}

impl fmt::Display for SpaceLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}, {})", self.eta, self.kappa1, self.kappa2)
    }
}

/// Element of ℂ_η: `re + i·im` with i² = −η. The ring label is supplied by context.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Cd<T> {
    pub re: T,
    pub im: T,
}

pub type CdScalar = Cd<f64>;

impl<T: Copy + Num + Neg<Output = T>> Cd<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(T::zero(), T::one())
    }

    pub fn real(x: T) -> Self {
        Self::new(x, T::zero())
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn mul(self, w: Self, eta: T) -> Self {
        Self::new(
            self.re * w.re - eta * self.im * w.im,
            self.re * w.im + self.im * w.re,
        )
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    /// re² + η·im², which equals conj(z)·z.
    pub fn modulus_sq(self, eta: T) -> T {
        self.re * self.re + eta * self.im * self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: Copy + Num> Add for Cd<T> {
    type Output = Self;
    fn add(self, w: Self) -> Self {
        Self {
            re: self.re + w.re,
            im: self.im + w.im,
        }
    }
}

impl<T: Copy + Num> Sub for Cd<T> {
    type Output = Self;
    fn sub(self, w: Self) -> Self {
        Self {
            re: self.re - w.re,
            im: self.im - w.im,
        }
    }
}

impl<T: Copy + Num + Neg<Output = T>> Neg for Cd<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl CdScalar {
    /// max(|re|, |im|), the entry size used by matrix residuals.
    pub fn max_abs(self) -> f64 {
        self.re.abs().max(self.im.abs())
    }

    /// Euclidean size of the pair, independent of η.
    pub fn pair_norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// z/√modulus_sq, or `None` when the modulus is not positive.
    /// For η ≤ 0 the sign is fixed so that the real part is positive.
    pub fn unit(self, eta: f64) -> Option<Self> {
        let m = self.modulus_sq(eta);
        if !(m > 0.0) {
            return None;
        }
        let r = m.sqrt();
        let u = Self::new(self.re / r, self.im / r);
        if eta <= 0.0 && u.re < 0.0 {
            Some(-u)
        } else {
            Some(u)
        }
    }

    /// Division by an element of positive modulus.
    pub fn div(self, w: Self, eta: f64) -> Option<Self> {
        let m = w.modulus_sq(eta);
        if m == 0.0 {
            return None;
        }
        let n = self.mul(w.conj(), eta);
        Some(Self::new(n.re / m, n.im / m))
    }
}

pub fn cd_add(z: CdScalar, w: CdScalar) -> CdScalar {
    z + w
}

pub fn cd_mul(z: CdScalar, w: CdScalar, eta: f64) -> CdScalar {
    z.mul(w, eta)
}

pub fn cd_conj(z: CdScalar) -> CdScalar {
    z.conj()
}

/// Labeled cosine C_κ(x).
pub fn cosk(k: f64, x: f64) -> f64 {
    if k > 0.0 {
        (k.sqrt() * x).cos()
    } else if k < 0.0 {
        ((-k).sqrt() * x).cosh()
    } else {
        1.0
    }
}

/// Labeled sine S_κ(x).
pub fn sink(k: f64, x: f64) -> f64 {
    if k > 0.0 {
        let r = k.sqrt();
        (r * x).sin() / r
    } else if k < 0.0 {
        let r = (-k).sqrt();
        (r * x).sinh() / r
    } else {
        x
    }
}

/// Labeled tangent; errors at a zero of the cosine.
pub fn tank(k: f64, x: f64) -> Result<f64> {
    let c = cosk(k, x);
    if c == 0.0 {
        return Err(CkdError::Pole { label: k, x });
    }
    Ok(sink(k, x) / c)
}

/// Labeled versed sine (1 − C_κ(x))/κ, with the limit x²/2 at κ = 0.
pub fn versink(k: f64, x: f64) -> f64 {
    // 2·S_κ(x/2)² avoids the cancellation in 1 − C_κ(x) and covers κ = 0
    let s = sink(k, x / 2.0);
    2.0 * s * s
}

/// Joint inverse of (C_κ, S_κ) with the default tolerance.
pub fn arck(k: f64, c: f64, s: f64) -> Result<f64> {
    arck_tol(k, c, s, DEFAULT_TOL)
}

/// Joint inverse of (C_κ, S_κ). For κ > 0 the result lies in (−π/√κ, π/√κ].
pub fn arck_tol(k: f64, c: f64, s: f64, tol: f64) -> Result<f64> {
    let defect = c * c + k * s * s - 1.0;
    let scale = 1.0_f64.max(c * c).max(k.abs() * s * s);
    let bad = |defect| CkdError::InconsistentPair {
        label: k,
        c,
        s,
        defect,
    };
    if !(defect.abs() <= tol * scale) {
        return Err(bad(defect));
    }
    if k > 0.0 {
        let r = k.sqrt();
        Ok((r * s).atan2(c) / r)
    } else if c < 0.0 {
        // C_κ is positive for κ ≤ 0
        Err(bad(defect))
    } else if k < 0.0 {
        let r = (-k).sqrt();
        Ok((r * s).asinh() / r)
    } else {
        Ok(s)
    }
}

/// e^{ix} = C_η(x) + i S_η(x).
pub fn cd_exp_imag(x: f64, eta: f64) -> CdScalar {
    Cd::new(cosk(eta, x), sink(eta, x))
}

/// Inverse of [`cd_exp_imag`] with the default tolerance.
pub fn cd_arg(u: CdScalar, eta: f64) -> Result<f64> {
    cd_arg_tol(u, eta, DEFAULT_TOL)
}

/// Inverse of [`cd_exp_imag`]. Principal value in (−π/√η, π/√η] for η > 0;
/// for η ≤ 0 elements with negative real part have no real argument.
pub fn cd_arg_tol(u: CdScalar, eta: f64, tol: f64) -> Result<f64> {
    let m = u.modulus_sq(eta);
    let scale = 1.0_f64.max(u.re * u.re).max(eta.abs() * u.im * u.im);
    if !((m - 1.0).abs() <= tol * scale) {
        return Err(CkdError::NotUnimodular {
            re: u.re,
            im: u.im,
            eta,
        });
    }
    if eta > 0.0 {
        let r = eta.sqrt();
        return Ok((r * u.im).atan2(u.re) / r);
    }
    if u.re < 0.0 {
        return Err(CkdError::NoRealArgument {
            re: u.re,
            im: u.im,
            eta,
        });
    }
    if eta < 0.0 {
        let r = (-eta).sqrt();
        Ok((r * u.im).asinh() / r)
    } else {
        Ok(u.im / u.re)
    }
}

/// A canonical parameter together with the label governing its trigonometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledAngle {
    pub value: f64,
    pub label: f64,
}

impl LabeledAngle {
    pub fn new(value: f64, label: f64) -> Self {
        Self { value, label }
    }
    pub fn cos(&self) -> f64 {
        cosk(self.label, self.value)
    }
    pub fn sin(&self) -> f64 {
        sink(self.label, self.value)
    }
    pub fn tan(&self) -> Result<f64> {
        tank(self.label, self.value)
    }
    pub fn versin(&self) -> f64 {
        versink(self.label, self.value)
    }
}
