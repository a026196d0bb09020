use thiserror::Error;

use crate::algebra::Generator;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CkdError {
    #[error("labels must be finite, got ({0}, {1}, {2})")]
    NonFiniteLabels(f64, f64, f64),

    #[error("tangent pole: cosine vanishes at x = {x} (label {label})")]
    Pole { label: f64, x: f64 },

    #[error(
        "(cosine, sine) pair ({c}, {s}) is inconsistent with label {label}: defect {defect:e}"
    )]
    InconsistentPair {
        label: f64,
        c: f64,
        s: f64,
        defect: f64,
    },

    #[error("scalar ({re}, {im}) is not unimodular for eta = {eta}")]
    NotUnimodular { re: f64, im: f64, eta: f64 },

    #[error("no real argument for ({re}, {im}) with eta = {eta}")]
    NoRealArgument { re: f64, im: f64, eta: f64 },

    #[error("operands carry different space labels")]
    LabelMismatch,

    #[error("{0} is not a Cartan generator")]
    NotCartan(Generator),

    #[error("matrix exponential overflowed")]
    NonFinite,

    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("no real triangle: {0}")]
    NoRealTriangle(String),

    #[error("factorization residual {residual:e} exceeds tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("vertex pair on the cut locus (vanishing hermitian product)")]
    CutLocus,

    #[error("operation requires labels {expected}, got ({eta}; {kappa1}, {kappa2})")]
    UnsupportedLabels {
        expected: &'static str,
        eta: f64,
        kappa1: f64,
        kappa2: f64,
    },

    #[error("indeterminate: {0}")]
    Indeterminate(&'static str),

    #[error("triangle is generic, no special reduction applies")]
    NotSpecial,
}

pub type Result<T> = std::result::Result<T, CkdError>;
