//! Invariants of solved triangles over random geometries and inputs.

use proptest::prelude::*;

use ckd_core::laws::{
    basis_residuals, evaluate, evaluate_triangle, jacobian_rank, LawInput, LAW_TOL,
};
use ckd_core::scalars::sink;
use ckd_core::triangle::{derived, dual_triangle, existence_check, solve, solve_sas};
use ckd_core::{SpaceLabels, TriangleData, TriangleRecord};

fn solved() -> impl Strategy<Value = TriangleData> {
    (
        0usize..27,
        0.2f64..1.2,
        0.2f64..1.2,
        0.2f64..1.2,
        -0.8f64..0.8,
    )
        .prop_filter_map("no real triangle", |(i, a, b, cc, psi)| {
            let l = SpaceLabels::all_normalized()[i];
            solve_sas(a, b, cc, psi, l, 1e-9).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_applicable_law_holds(t in solved()) {
        let r = evaluate_triangle(&t, LAW_TOL);
        prop_assert!(r.all_pass(), "{}: {:?}", t.labels, r.failures());
    }

    #[test]
    fn the_dual_triangle_satisfies_the_dual_suite(t in solved()) {
        let d = dual_triangle(&t);
        prop_assert_eq!(d.labels, t.labels.dual());
        let r = evaluate_triangle(&d, LAW_TOL);
        prop_assert!(r.all_pass(), "{}: {:?}", d.labels, r.failures());
        prop_assert_eq!(dual_triangle(&d), t);
    }

    #[test]
    fn existence_inequalities(t in solved()) {
        let d = derived(&t);
        let l = t.labels;
        if l.kappa2 != 0.0 {
            prop_assert!(d.gamma / l.kappa2 >= -1e-12, "{}: {}", l, d.gamma);
        }
        if l.kappa1 != 0.0 {
            prop_assert!(d.big_gamma / l.kappa1 >= -1e-12, "{}: {}", l, d.big_gamma);
        }
        prop_assert!(existence_check(&t).all_pass());
        prop_assert!(existence_check(&dual_triangle(&t)).all_pass());
    }

    #[test]
    fn completed_phases_reproduce_the_triangle(t in solved()) {
        let again = solve(t.a, t.phi_a, t.b, t.phi_b, t.angle_c, t.psi_c, t.labels, 1e-9).unwrap();
        let scale = t.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (x, y) in t.values().iter().zip(again.values()) {
            prop_assert!((x - y).abs() <= 1e-9 * scale, "{:?} vs {:?}", t, again);
        }
    }

    #[test]
    fn record_round_trip(t in solved()) {
        let r = TriangleRecord::new(&t);
        let text = serde_json::to_string(&r).unwrap();
        let back: TriangleRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, r);
        prop_assert_eq!(back.triangle().values(), t.values());
        prop_assert!(evaluate(&LawInput::from_record(&back), LAW_TOL).all_pass());
    }

    #[test]
    fn ten_independent_equations(t in solved()) {
        let l = t.labels;
        let generic = [t.a, t.b, t.c].iter().all(|&x| sink(l.kappa1, x).abs() >= 1e-2)
            && [t.angle_a, t.angle_b, t.angle_c].iter().all(|&x| sink(l.kappa2, x).abs() >= 1e-2);
        prop_assume!(generic);
        let q = LawInput::from_triangle(&t).tuple();
        let scale = q.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for v in basis_residuals(&l, &q) {
            prop_assert!(v.abs() <= 1e-9 * scale * scale, "{}: {}", l, v);
        }
        prop_assert_eq!(jacobian_rank(&l, &q, 1e-6).rank, 10);
    }

    #[test]
    fn scaled_labels_normalize_to_the_same_geometry(
        i in 0usize..27,
        s in prop::array::uniform3(0.1f64..10.0),
    ) {
        let l = SpaceLabels::all_normalized()[i];
        let raw = SpaceLabels::of(l.eta * s[0], l.kappa1 * s[1], l.kappa2 * s[2]);
        prop_assert_eq!(raw.normalize(), l);
        prop_assert_eq!(raw.dual().dual(), raw);
    }
}
