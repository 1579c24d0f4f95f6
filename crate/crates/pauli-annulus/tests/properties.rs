//! Randomized property tests for the algebraic invariants.

use proptest::prelude::*;

use pauli_annulus::{
    alpha_k, f_eval, flux_at_scale, solve_scalar_potential, AnnulusGeometry, GaugeData,
    PrefactorLaw, RadialField,
};

fn law_strategy() -> impl Strategy<Value = PrefactorLaw> {
    (
        0.2f64..2.0,
        0.1f64..1.5,
        0.1f64..1.5,
        0.3f64..0.9,
        1.1f64..2.5,
    )
        .prop_map(|(curvature, dn_inner, dn_outer, q_inner, q_outer)| PrefactorLaw {
            curvature,
            r_min: 1.5,
            dn_inner,
            dn_outer,
            q_inner,
            q_outer,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The potential is linear in the field: scaling B scales phi.
    #[test]
    fn potential_linear_in_field(scale in 0.1f64..10.0) {
        let geom = AnnulusGeometry::new(1.0, 2.0).unwrap();
        let f1 = RadialField::constant(geom, 1.0).unwrap();
        let fs = RadialField::constant(geom, scale).unwrap();
        let p1 = solve_scalar_potential(geom, &f1, 256).unwrap();
        let ps = solve_scalar_potential(geom, &fs, 256).unwrap();
        let a = p1.phi_at(1.37).unwrap() * scale;
        let b = ps.phi_at(1.37).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-3));
        prop_assert!((p1.features().r_min - ps.features().r_min).abs() < 1e-9);
    }

    /// gamma_frac lies in [0,1) and is 1-periodic in c0/h.
    #[test]
    fn gamma_frac_unit_interval_and_periodic(c0 in -50.0f64..50.0, h in 0.01f64..1.0, k in -20i64..20) {
        let g1 = GaugeData { circ_int_a: 0.0, c0, p: 0 };
        let g2 = GaugeData { circ_int_a: 0.0, c0: c0 + k as f64 * h, p: 0 };
        let f1 = flux_at_scale(&g1, h).unwrap().gamma_frac;
        let f2 = flux_at_scale(&g2, h).unwrap().gamma_frac;
        prop_assert!((0.0..1.0).contains(&f1));
        let d = (f1 - f2).abs();
        prop_assert!(d < 1e-9 || (1.0 - d) < 1e-9, "gamma mismatch {f1} vs {f2}");
    }

    /// alpha_k is the k-th order statistic: monotone in k and dominated by
    /// every integer evaluation of f.
    #[test]
    fn alpha_k_is_order_statistic(law in law_strategy(), gamma in 0.0f64..1.0) {
        let a: Vec<f64> = (1..=4)
            .map(|k| alpha_k(&law, gamma, k).unwrap().value)
            .collect();
        for w in a.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        prop_assert!(a[0] <= f_eval(&law, -gamma));
        prop_assert!(a[0] <= f_eval(&law, 1.0 - gamma));
        prop_assert!(a[0] >= law.floor());
    }

    /// f is strictly convex on the integer lattice.
    #[test]
    fn f_is_midpoint_convex(law in law_strategy(), x in -30.0f64..30.0) {
        let mid = 2.0 * f_eval(&law, x);
        prop_assert!(f_eval(&law, x - 0.5) + f_eval(&law, x + 0.5) >= mid * (1.0 - 1e-12));
    }
}
