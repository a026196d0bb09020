//! Benchmarks for ckd-core; see `benches/`.

use ckd_core::triangle::{sample_corpus, SampleMode};
use ckd_core::{SpaceLabels, TriangleData};

/// A small fixed corpus shared by the benches.
pub fn fixture(labels: SpaceLabels, n: usize) -> Vec<TriangleData> {
    sample_corpus(labels, n, 7, SampleMode::Generic, 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_full_in_every_geometry() {
        for l in SpaceLabels::all_normalized() {
            assert_eq!(fixture(l, 8).len(), 8, "{l}");
        }
    }
}
