mod common;

use common::*;
use proptest::prelude::*;
use vicontract::geometry::{inner, projection_gap, ConvexSet, Vector};
use vicontract::linalg::Matrix;
use vicontract::operators::{certify_by_sampling, CocoercivityCertificate, OperatorModel};
use vicontract::solvers::{contraction_factor, optimal_step, step_bound};

fn coords(n: usize, scale: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-scale..scale, n)
}

fn set_and_points() -> impl Strategy<Value = (ConvexSet, Vector, Vector)> {
    (1usize..=6, 0usize..6, any::<u64>()).prop_flat_map(|(n, kind, seed)| {
        (coords(n, 8.0), coords(n, 8.0)).prop_map(move |(x, y)| {
            let set = random_sets(n, seed).swap_remove(kind);
            (set, v(&x), v(&y))
        })
    })
}

/// Symmetric part `M + M^T` dominated by `2 * diag`, so it is positive definite.
fn monotone_matrix() -> impl Strategy<Value = Matrix> {
    (2usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |entries| {
            let mut rows: Vec<Vec<f64>> = entries.chunks(n).map(|c| c.to_vec()).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = n as f64 + 0.5 + row[i].abs();
            }
            Matrix::from_rows(&rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn projection_invariants((set, x, y) in set_and_points()) {
        let px = set.project(&x).unwrap();
        let py = set.project(&y).unwrap();
        prop_assert!(set.contains(&px, 1e-9).unwrap());
        prop_assert!(set.project(&px).unwrap().distance(&px).unwrap() <= 1e-10);
        prop_assert!(px.distance(&py).unwrap() <= x.distance(&y).unwrap() + 1e-10);
        // firm nonexpansiveness: ||Px - Py||² <= <Px - Py, x - y>
        let d = px.sub(&py).unwrap();
        prop_assert!(d.norm_squared() <= inner(&d, &x.sub(&y).unwrap()).unwrap() + 1e-9);
        prop_assert!(projection_gap(&set, &x, &px, 200, 1).unwrap() >= -1e-9);
    }

    #[test]
    fn points_inside_are_fixed((set, x, _y) in set_and_points()) {
        let inside = set.project(&x).unwrap();
        let again = set.project(&inside).unwrap();
        prop_assert!(again.distance(&inside).unwrap() <= 1e-10);
    }

    #[test]
    fn affine_operators_are_affine(
        m in monotone_matrix(),
        seed in any::<u64>(),
        w in 0.0f64..1.0,
    ) {
        let n = m.order();
        let mut rng = vicontract::geometry::stream_rng(seed, 0);
        let shift = gaussian(&mut rng, n, 3.0);
        let x = gaussian(&mut rng, n, 3.0);
        let y = gaussian(&mut rng, n, 3.0);
        let op = OperatorModel::affine(m, shift).unwrap();
        let combined = op.evaluate(&x.lerp(w, &y).unwrap()).unwrap();
        let separate = op.evaluate(&x).unwrap().lerp(w, &op.evaluate(&y).unwrap()).unwrap();
        let scale = 1.0 + combined.norm();
        prop_assert!(combined.distance(&separate).unwrap() <= 1e-12 * scale);
    }

    #[test]
    fn certificate_collapses_to_effective_modulus(
        mu in 0.1f64..10.0,
        frac in 0.01f64..1.0,
        gamma in 0.0f64..5.0,
    ) {
        let modulus = frac * mu;
        let relaxed = CocoercivityCertificate::new(gamma, modulus + gamma * mu * mu, mu).unwrap();
        let collapsed = relaxed.collapsed().unwrap();
        prop_assert_eq!(collapsed.gamma(), 0.0);
        prop_assert_eq!(collapsed.r(), relaxed.effective_modulus());
        prop_assert_eq!(step_bound(&relaxed).unwrap(), step_bound(&collapsed).unwrap());
        prop_assert_eq!(optimal_step(&relaxed).unwrap(), optimal_step(&collapsed).unwrap());
        let b = step_bound(&relaxed).unwrap();
        for k in 1..10 {
            let s = b * k as f64 / 10.0;
            let q = contraction_factor(&relaxed, s).unwrap();
            prop_assert_eq!(q, contraction_factor(&collapsed, s).unwrap());
            prop_assert!((0.0..1.0).contains(&q));
        }
    }

    #[test]
    fn relaxed_certificates_imply_strong_monotonicity(
        m in monotone_matrix(),
        gamma in 0.0f64..0.5,
    ) {
        // raise γ and r together so the effective modulus is unchanged
        let n = m.order();
        let op = OperatorModel::affine(m, Vector::zeros(n)).unwrap();
        let base = op.affine_certificate().unwrap();
        let mu = base.mu();
        let modulus = base.r();
        let relaxed = CocoercivityCertificate::new(gamma, modulus + gamma * mu * mu, mu).unwrap();
        let domain = ConvexSet::whole_space(n).unwrap();
        let report = certify_by_sampling(&op, &relaxed.collapsed().unwrap(), &domain, 500, 3, 5.0).unwrap();
        prop_assert!(report.is_consistent());
        prop_assert_eq!(report.strong_monotonicity_violations, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn analytic_certificates_are_tight(m in monotone_matrix(), seed in 0u64..1000) {
        let n = m.order();
        let op = OperatorModel::affine(m, Vector::zeros(n)).unwrap();
        let cert = op.affine_certificate().unwrap();
        let domain = ConvexSet::ball(Vector::zeros(n), 3.0).unwrap();

        let report = certify_by_sampling(&op, &cert, &domain, 100_000, seed, 5.0).unwrap();
        prop_assert!(report.is_consistent(), "{:?}", report);

        let inflated = CocoercivityCertificate::new(0.0, 1.1 * cert.r(), cert.mu()).unwrap();
        let report = certify_by_sampling(&op, &inflated, &domain, 1_000, seed, 5.0).unwrap();
        prop_assert!(report.cocoercivity_violations > 0);

        let deflated = CocoercivityCertificate::new(0.0, cert.r(), 0.9 * cert.mu()).unwrap();
        let report = certify_by_sampling(&op, &deflated, &domain, 1_000, seed, 5.0).unwrap();
        prop_assert!(report.lipschitz_violations > 0);
    }

    #[test]
    fn simplex_projection_matches_grid_search(
        n in 1usize..=3,
        steps in 200usize..1500,
        x in coords(3, 2.0),
    ) {
        let delta = 1e-3;
        let scale = steps as f64 * delta;
        let x = v(&x[..n]);
        let set = ConvexSet::simplex(n, scale).unwrap();
        let p = set.project(&x).unwrap();

        let mut best = (f64::INFINITY, Vector::zeros(n));
        let mut consider = |g: Vec<f64>| {
            let g = v(&g);
            let d = g.distance(&x).unwrap();
            if d < best.0 {
                best = (d, g);
            }
        };
        match n {
            1 => consider(vec![scale]),
            2 => (0..=steps).for_each(|i| consider(vec![i as f64 * delta, (steps - i) as f64 * delta])),
            _ => {
                for i in 0..=steps {
                    for j in 0..=steps - i {
                        let k = steps - i - j;
                        consider(vec![i as f64 * delta, j as f64 * delta, k as f64 * delta]);
                    }
                }
            }
        }
        prop_assert!(best.1.distance(&p).unwrap() <= 2e-3, "grid {} vs {}", best.1, p);
        prop_assert!(p.distance(&x).unwrap() <= best.0 + 1e-12);
    }
}
