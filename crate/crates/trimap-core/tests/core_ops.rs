mod common;

use common::*;
use trimap_core::{
    compose, iterate_orbit, system_period, ConvergenceRule, CoreError, DomainBox, OrbitStatus,
    Point, TriangularMap, TriangularOperator,
};

#[test]
fn identity_map_returns_its_input() {
    let id = TriangularMap::identity(DomainBox::unit(3));
    let x = Point::new(vec![0.2, 0.5, 0.9]);
    assert_eq!(id.evaluate(&x).unwrap(), x);
}

#[test]
fn leslie_gower_map_matches_hand_arithmetic() {
    // x' = 2*1*1/(1+1*1) = 1, y' = 2*1*1/(1+1*1+0.5*1) = 0.8
    let f0 = leslie_gower_map(2.0, 2.0, 0.5, 1.0, 1.0);
    let out = f0.evaluate(&Point::new(vec![1.0, 1.0])).unwrap();
    assert!((out[0] - 1.0).abs() < 1e-15);
    assert!((out[1] - 0.8).abs() < 1e-15);
}

#[test]
fn ricker_fixes_its_common_fixed_points() {
    let mu = 0.37;
    for (r, s) in [(0.5, 1.9), (1.3, 0.2), (2.0, 2.0)] {
        let f = ricker_map(r, s, mu);
        for p in [
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0 - mu],
        ] {
            let p = Point::new(p);
            let out = f.evaluate(&p).unwrap();
            assert!(out.max_norm_dist(&p) < 1e-15, "not fixed: {p:?} -> {out:?}");
        }
    }
}

#[test]
fn evaluate_rejects_dimension_mismatch() {
    let id = TriangularMap::identity(DomainBox::unit(3));
    let err = id.evaluate(&Point::new(vec![0.1, 0.2])).unwrap_err();
    assert_eq!(err, CoreError::DimensionMismatch { expected: 3, got: 2 });
}

#[test]
fn evaluate_reports_nonfinite_coordinate() {
    let sys = ricker_system([2.0, 2.0, 2.0], [2.0, 2.0], 0.5);
    // exp overflows for hugely negative x-argument inputs
    let err = sys
        .map(0)
        .evaluate(&Point::new(vec![-1e308, 0.5]))
        .unwrap_err();
    assert_eq!(err, CoreError::NonFinite { coordinate: 1 });
}

#[test]
fn window_of_length_one_is_the_map_itself() {
    let sys = ricker_system([0.7, 1.1, 1.9], [0.4, 1.5], 0.25);
    for phase in 0..6 {
        let op = compose(&sys, phase, 1).unwrap();
        for s in 0..20 {
            let x = Point::new(vec![0.05 + 0.07 * s as f64, 0.02 + 0.09 * s as f64]);
            let via_op = op.evaluate(&x).unwrap();
            let direct = sys.map(phase).evaluate(&x).unwrap();
            assert_eq!(via_op, direct);
        }
    }
}

#[test]
fn leslie_gower_window_two_equals_two_explicit_calls() {
    let sys = leslie_gower_system(2.0, 2.0, 0.5, (1.0, 2.0), (1.0, 2.0));
    let phi2 = compose(&sys, 0, 2).unwrap();
    for i in 0..100 {
        let x = Point::new(vec![0.03 * (i + 1) as f64, 0.04 * (i + 1) as f64]);
        let folded = phi2.evaluate(&x).unwrap();
        let explicit = sys
            .map(1)
            .evaluate(&sys.map(0).evaluate(&x).unwrap())
            .unwrap();
        assert_eq!(folded, explicit);
    }
}

#[test]
fn ricker_window_six_splits_as_two_threes() {
    let sys = ricker_system([0.9, 1.4, 0.6], [1.2, 0.8], 0.3);
    let whole = compose(&sys, 0, 6).unwrap();
    let first = compose(&sys, 0, 3).unwrap();
    let second = compose(&sys, 3, 3).unwrap();
    for i in 0..50 {
        let x = Point::new(vec![0.1 + 0.03 * i as f64, 0.05 + 0.025 * i as f64]);
        let folded = whole.evaluate(&x).unwrap();
        let split = second.evaluate(&first.evaluate(&x).unwrap()).unwrap();
        assert_eq!(folded, split);
    }
}

#[test]
fn compose_validates_phase_and_length() {
    let sys = identity_system(2);
    assert!(matches!(
        compose(&sys, 1, 1),
        Err(CoreError::InvalidPhase { .. })
    ));
    assert!(matches!(compose(&sys, 0, 0), Err(CoreError::EmptyWindow)));
}

#[test]
fn orbit_from_common_fixed_point_converges_at_step_zero() {
    let mu = 0.5;
    let sys = ricker_system([1.5, 1.5, 1.5], [1.5, 1.5], mu);
    let c_star = Point::new(vec![1.0, 1.0 - mu]);
    let orbit = iterate_orbit(&sys, &c_star, 0, 1000, ConvergenceRule::default()).unwrap();
    assert_eq!(*orbit.status(), OrbitStatus::Converged { step: 0 });
    for state in orbit.trajectory() {
        assert!(state.max_norm_dist(&c_star) < 1e-14);
    }
}

#[test]
fn orbit_from_origin_is_constant() {
    let origin = Point::new(vec![0.0, 0.0]);
    for sys in [
        leslie_gower_system(2.0, 2.0, 0.5, (1.0, 2.0), (1.0, 2.0)),
        ricker_system([1.0, 1.0, 1.0], [1.0, 1.0], 0.2),
    ] {
        let orbit = iterate_orbit(&sys, &origin, 0, 100, ConvergenceRule::default()).unwrap();
        assert_eq!(*orbit.status(), OrbitStatus::Converged { step: 0 });
        assert_eq!(*orbit.last(), origin);
    }
}

#[test]
fn leslie_gower_even_tail_reaches_the_interior_fixed_point_of_phi2() {
    // Closed forms evaluated by hand from the model's cycle expressions:
    // x̄_0 = K0 K1 (μ+1)/(K0 μ + K1) = 1.5 and Ȳ_0 = 0.75.
    let sys = leslie_gower_system(2.0, 2.0, 0.5, (1.0, 2.0), (1.0, 2.0));
    let c0 = Point::new(vec![1.5, 0.75]);
    let phi2 = compose(&sys, 0, 2).unwrap();
    assert!(phi2.evaluate(&c0).unwrap().max_norm_dist(&c0) < 1e-14);

    let orbit = iterate_orbit(
        &sys,
        &Point::new(vec![0.7, 0.4]),
        0,
        10_000,
        ConvergenceRule { tol: 1e-12 },
    )
    .unwrap();
    assert!(orbit.converged());
    let traj = orbit.trajectory();
    let even_last = &traj[traj.len() - 1 - (traj.len() - 1) % 2];
    assert!(even_last.max_norm_dist(&c0) < 1e-10);
}

#[test]
fn orbit_reports_escape_through_finite_bound() {
    // A doubling map leaves [0, 1] from any interior start.
    let doubling = TriangularMap::new(
        vec![trimap_core::CoordinateMap::new(1, |x: &[f64]| 2.0 * x[0])],
        DomainBox::unit(1),
    )
    .unwrap();
    let sys = trimap_core::TriangularSystem::autonomous(doubling);
    let orbit = iterate_orbit(
        &sys,
        &Point::new(vec![0.3]),
        0,
        100,
        ConvergenceRule::default(),
    )
    .unwrap();
    assert!(matches!(
        orbit.status(),
        OrbitStatus::Escaped { step: 2, coordinate: 1 }
    ));
    assert!(orbit.last()[0] > 1.0);
}

#[test]
fn orbit_truncates_on_numerical_failure() {
    let blowup = TriangularMap::new(
        vec![trimap_core::CoordinateMap::new(1, |x: &[f64]| {
            (x[0] * 1e3).exp()
        })],
        DomainBox::nonnegative(1),
    )
    .unwrap();
    let sys = trimap_core::TriangularSystem::autonomous(blowup);
    let orbit = iterate_orbit(
        &sys,
        &Point::new(vec![1.0]),
        0,
        10,
        ConvergenceRule::default(),
    )
    .unwrap();
    assert!(matches!(
        orbit.status(),
        OrbitStatus::NumericalFailure { .. }
    ));
    assert!(orbit.trajectory().iter().all(|p| p.is_finite()));
}

#[test]
fn system_period_examples() {
    assert_eq!(system_period(&[1, 1, 1]).unwrap(), 1);
    assert_eq!(system_period(&[3, 2]).unwrap(), 6);
    assert_eq!(system_period(&[2, 2]).unwrap(), 2);
    assert_eq!(system_period(&[]).unwrap_err(), CoreError::EmptyPeriods);
    assert_eq!(system_period(&[2, 0]).unwrap_err(), CoreError::ZeroPeriod);
}

#[test]
fn equal_capacity_leslie_gower_declared_2_periodic_warns() {
    let sys = trimap_core::TriangularSystem::new(
        vec![
            leslie_gower_map(2.0, 2.0, 0.5, 1.0, 1.0),
            leslie_gower_map(2.0, 2.0, 0.5, 1.0, 1.0),
        ],
        vec![2, 2],
    )
    .unwrap();
    assert_eq!(sys.warnings().len(), 2, "both coordinates repeat with d=1");
}

#[test]
fn genuinely_periodic_system_carries_no_warnings() {
    let sys = leslie_gower_system(2.0, 2.0, 0.5, (1.0, 2.0), (1.0, 2.0));
    assert!(sys.warnings().is_empty());
    let sys = ricker_system([0.9, 1.4, 0.6], [1.2, 0.8], 0.3);
    assert!(sys.warnings().is_empty());
}

#[test]
fn analytic_partials_agree_with_central_differences() {
    let maps = [
        leslie_gower_map(2.3, 1.7, 0.42, 1.3, 2.6),
        ricker_map(1.8, 0.9, 0.55),
    ];
    for map in &maps {
        for i in 0..40 {
            let x = [0.11 + 0.09 * i as f64, 0.07 + 0.06 * i as f64];
            for j0 in 0..2 {
                let c = map.coordinate(j0);
                for m in 1..=j0 + 1 {
                    let analytic = c.partial(m, &x[..=j0]).unwrap();
                    let h = 1e-6 * x[m - 1].abs().max(1.0);
                    let mut hi = x;
                    let mut lo = x;
                    hi[m - 1] += h;
                    lo[m - 1] -= h;
                    let fd = (c.evaluate(&hi[..=j0]) - c.evaluate(&lo[..=j0])) / (2.0 * h);
                    let scale = analytic.abs().max(1.0);
                    assert!(
                        (analytic - fd).abs() / scale < 1e-6,
                        "partial {m} of coord {j0}: analytic {analytic} vs fd {fd}"
                    );
                }
            }
        }
    }
}
