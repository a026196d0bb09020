use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scalars::SpaceLabels;

use super::{solve, solve_sas, TriangleData};

/// Which family of configurations to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    Generic,
    /// All phases zero: the triangle lies in a real totally geodesic plane.
    PurelyReal,
    /// Included angle zero: the three vertices share a complex line.
    Collinear,
}

/// One draw of side-angle-side data; `None` when the draw does not close into a real triangle.
pub fn sample_triangle<R: Rng>(
    labels: SpaceLabels,
    mode: SampleMode,
    rng: &mut R,
    tol: f64,
) -> Option<TriangleData> {
    let a = rng.gen_range(0.2..1.2);
    let b = rng.gen_range(0.2..1.2);
    let angle_c = rng.gen_range(0.2..1.2);
    let psi_c = rng.gen_range(-0.8..0.8);
    match mode {
        SampleMode::Generic => solve_sas(a, b, angle_c, psi_c, labels, tol).ok(),
        SampleMode::PurelyReal => solve(a, 0.0, b, 0.0, angle_c, 0.0, labels, tol).ok(),
        SampleMode::Collinear => solve_sas(a, b, 0.0, psi_c, labels, tol).ok(),
    }
}

/// Up to `n` triangles from a seeded stream, rejecting draws that fail to factor.
pub fn sample_corpus(
    labels: SpaceLabels,
    n: usize,
    seed: u64,
    mode: SampleMode,
    tol: f64,
) -> Vec<TriangleData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..50 * n {
        if out.len() == n {
            break;
        }
        if let Some(t) = sample_triangle(labels, mode, &mut rng, tol) {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_corpus_is_reproducible() {
        let l = SpaceLabels::of(1.0, -1.0, 1.0);
        let a = sample_corpus(l, 5, 42, SampleMode::Generic, 1e-9);
        let b = sample_corpus(l, 5, 42, SampleMode::Generic, 1e-9);
        assert_eq!(a.len(), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn modes_fill_everywhere() {
        for labels in SpaceLabels::all_normalized() {
            for mode in [
                SampleMode::Generic,
                SampleMode::PurelyReal,
                SampleMode::Collinear,
            ] {
                let c = sample_corpus(labels, 4, 1, mode, 1e-9);
                assert_eq!(c.len(), 4, "{labels} {mode:?}");
            }
        }
    }
}
