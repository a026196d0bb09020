//! Continuity of the solved invariants as one label is sent to zero.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Result;
use crate::scalars::SpaceLabels;
use crate::triangle::{derived, solve_sas, TriangleData};

/// Deviations at or below this are rounding, not a trend.
pub const NOISE_FLOOR: f64 = 1e-11;

/// First order, less the bias a finite-ε order estimate picks up from the ε² term.
pub const MIN_ORDER: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parameter {
    Eta,
    Kappa1,
    Kappa2,
}

impl Parameter {
    pub const ALL: [Parameter; 3] = [Parameter::Eta, Parameter::Kappa1, Parameter::Kappa2];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::Eta => "eta",
            Parameter::Kappa1 => "kappa1",
            Parameter::Kappa2 => "kappa2",
        }
    }

    /// `base` with this label replaced by `value`.
    pub fn set(self, base: SpaceLabels, value: f64) -> SpaceLabels {
        let mut l = base;
        match self {
            Parameter::Eta => l.eta = value,
            Parameter::Kappa1 => l.kappa1 = value,
            Parameter::Kappa2 => l.kappa2 = value,
        }
        l
    }

    pub fn get(self, l: &SpaceLabels) -> f64 {
        match self {
            Parameter::Eta => l.eta,
            Parameter::Kappa1 => l.kappa1,
            Parameter::Kappa2 => l.kappa2,
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Parameter::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter {s:?}, expected eta, kappa1 or kappa2"))
    }
}

/// Side-angle-side data held fixed while the labels move; lateral phases are completed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalInput {
    pub a: f64,
    pub b: f64,
    pub angle_c: f64,
    pub psi_c: f64,
}

/// Closes into a real triangle in all 27 geometries and next to each of them.
impl Default for CanonicalInput {
    fn default() -> Self {
        Self {
            a: 0.3,
            b: 0.7,
            angle_c: 0.4,
            psi_c: 0.3,
        }
    }
}

impl CanonicalInput {
    pub fn solve(&self, labels: SpaceLabels, tol: f64) -> Result<TriangleData> {
        solve_sas(self.a, self.b, self.angle_c, self.psi_c, labels, tol)
    }
}

/// Named scalars read off a solved triangle.
pub fn extract(t: &TriangleData) -> Vec<(&'static str, f64)> {
    let d = derived(t);
    vec![
        ("c", t.c),
        ("angle_a", t.angle_a),
        ("angle_b", t.angle_b),
        ("phi_a", t.phi_a),
        ("phi_b", t.phi_b),
        ("phi_c", t.phi_c),
        ("psi_a", t.psi_a),
        ("psi_b", t.psi_b),
        ("omega", d.omega),
        ("big_omega", d.big_omega),
        ("area", d.area),
        ("coarea", d.coarea),
        ("gamma", d.gamma),
        ("big_gamma", d.big_gamma),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub name: String,
    /// Value at label zero.
    pub limit: f64,
    pub values: Vec<f64>,
    pub deviations: Vec<f64>,
    /// log₁₀ of successive deviation ratios over log₁₀ of the ε ratios; None below the noise floor.
    pub orders: Vec<Option<f64>>,
    /// Richardson extrapolation through every ε, cancelling the orders 1..n−1.
    pub extrapolated: f64,
    pub extrapolation_error: f64,
}

impl Convergence {
    fn new(name: &str, limit: f64, epsilons: &[f64], values: Vec<f64>) -> Self {
        let deviations: Vec<f64> = values.iter().map(|v| (v - limit).abs()).collect();
        let orders = (1..values.len())
            .map(|i| {
                let (d0, d1) = (deviations[i - 1], deviations[i]);
                (d0 > NOISE_FLOOR && d1 > NOISE_FLOOR)
                    .then(|| (d0 / d1).log10() / (epsilons[i - 1] / epsilons[i]).log10())
            })
            .collect();
        let extrapolated = extrapolate_to_zero(epsilons, &values);
        Self {
            name: name.to_string(),
            limit,
            values,
            deviations,
            orders,
            extrapolated,
            extrapolation_error: (extrapolated - limit).abs(),
        }
    }

    /// Slowest empirical order, ignoring pairs lost in rounding.
    pub fn min_order(&self) -> Option<f64> {
        self.orders.iter().flatten().copied().reduce(f64::min)
    }

    pub fn converges(&self, min_order: f64, max_error: f64) -> bool {
        let order_ok = self.min_order().is_none_or(|p| p >= min_order);
        let shrinking = self
            .deviations
            .windows(2)
            .all(|w| w[1] <= w[0].max(NOISE_FLOOR));
        order_ok && shrinking && self.extrapolation_error <= max_error
    }
}

/// For κ₂ > 0 the half-turn e^{πJ/√κ₂} reverses P, so (A, c, B) and (A + h, −c, B + h)
/// with h = π/√κ₂ give the same factorization. As κ₂ → 0 the solver's choice between them
/// can flip; keep the one closest to the limit.
fn nearest_branch(t: TriangleData, limit: &TriangleData) -> TriangleData {
    let k2 = t.labels.kappa2;
    if k2 <= 0.0 {
        return t;
    }
    let h = std::f64::consts::PI / k2.sqrt();
    let dist = |u: &TriangleData| {
        (u.angle_a - limit.angle_a).abs()
            + (u.angle_b - limit.angle_b).abs()
            + (u.c - limit.c).abs()
    };
    [-h, 0.0, h]
        .into_iter()
        .map(|s| {
            let mut u = t;
            if s != 0.0 {
                u.angle_a += s;
                u.angle_b += s;
                u.c = -u.c;
            }
            u
        })
        .min_by(|u, v| dist(u).total_cmp(&dist(v)))
        .unwrap_or(t)
}

/// Value at ε = 0 of the polynomial through the points (ε_i, v_i).
pub fn extrapolate_to_zero(epsilons: &[f64], values: &[f64]) -> f64 {
    (0..values.len())
        .map(|k| {
            let w: f64 = (0..epsilons.len())
                .filter(|&j| j != k)
                .map(|j| epsilons[j] / (epsilons[j] - epsilons[k]))
                .product();
            w * values[k]
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionTable {
    pub base: SpaceLabels,
    pub parameter: Parameter,
    pub epsilons: Vec<f64>,
    pub input: CanonicalInput,
    pub rows: Vec<Convergence>,
    /// ω/(2κ₁) against the flat area, or Ω/(2κ₂) against the flat coarea.
    pub phase_ratio: Option<Convergence>,
}

impl ContractionTable {
    pub fn all_converge(&self, min_order: f64, max_error: f64) -> bool {
        self.rows
            .iter()
            .chain(&self.phase_ratio)
            .all(|r| r.converges(min_order, max_error))
    }
}

/// Solve the same input at `parameter = sign·ε` for each ε and at zero, `sign` taken
/// from the base labels (positive when the base value is zero).
pub fn contract(
    base: SpaceLabels,
    parameter: Parameter,
    epsilons: &[f64],
    input: CanonicalInput,
    tol: f64,
) -> Result<ContractionTable> {
    let sign = if parameter.get(&base) < 0.0 {
        -1.0
    } else {
        1.0
    };
    let at = |e: f64| input.solve(parameter.set(base, sign * e), tol);
    let zero = at(0.0)?;
    let limit = extract(&zero);
    let solved: Vec<TriangleData> = epsilons
        .iter()
        .map(|&e| at(e).map(|t| nearest_branch(t, &zero)))
        .collect::<Result<_>>()?;
    let series: Vec<Vec<(&str, f64)>> = solved.iter().map(extract).collect();
    let rows = limit
        .iter()
        .enumerate()
        .map(|(i, (name, v0))| {
            Convergence::new(name, *v0, epsilons, series.iter().map(|s| s[i].1).collect())
        })
        .collect();
    let phase_ratio = match parameter {
        Parameter::Kappa1 => Some(Convergence::new(
            "omega_over_2kappa1",
            derived(&zero).area,
            epsilons,
            solved
                .iter()
                .map(|t| derived(t).omega / (2.0 * t.labels.kappa1))
                .collect(),
        )),
        Parameter::Kappa2 => Some(Convergence::new(
            "big_omega_over_2kappa2",
            derived(&zero).coarea,
            epsilons,
            solved
                .iter()
                .map(|t| derived(t).big_omega / (2.0 * t.labels.kappa2))
                .collect(),
        )),
        Parameter::Eta => None,
    };
    Ok(ContractionTable {
        base,
        parameter,
        epsilons: epsilons.to_vec(),
        input,
        rows,
        phase_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

    #[test]
    fn parameter_names_round_trip() {
        for p in Parameter::ALL {
            assert_eq!(p.name().parse::<Parameter>(), Ok(p));
        }
        assert!("kappa3".parse::<Parameter>().is_err());
    }

    #[test]
    fn omega_over_twice_the_curvature_tends_to_the_flat_area() {
        let t = contract(
            SpaceLabels::of(1.0, 1.0, 1.0),
            Parameter::Kappa1,
            &EPS,
            CanonicalInput::default(),
            1e-9,
        )
        .unwrap();
        let r = t.phase_ratio.as_ref().unwrap();
        assert!(r.limit.abs() > 1e-3, "{r:?}");
        assert!(r.extrapolation_error <= 1e-6, "{r:?}");
        assert!(t.all_converge(MIN_ORDER, 1e-6), "{t:#?}");
    }

    #[test]
    fn every_base_converges() {
        for base in SpaceLabels::all_normalized() {
            for p in Parameter::ALL {
                let t = contract(base, p, &EPS, CanonicalInput::default(), 1e-9).unwrap();
                for r in t.rows.iter().chain(&t.phase_ratio) {
                    assert!(r.converges(MIN_ORDER, 1e-6), "{base} {p}: {r:?}");
                }
            }
        }
    }
}
