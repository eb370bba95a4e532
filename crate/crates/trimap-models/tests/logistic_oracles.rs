//! Logistic-model closed forms against independent in-test arithmetic.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trimap_core::{compose, Point, SystemWarning, TriangularOperator};
use trimap_dynamics::{
    classify_spectrum, find_fixed_points, map_jacobian, CascadeOptions, StabilityVerdict,
    DEFAULT_CENTER_TOL,
};
use trimap_models::{
    delta2, individual_fixed_points, individual_regions, logistic_composition_fixed_points,
    logistic_spectra_and_regions, logistic_system, reality_polynomial, x_star, LogisticParams,
};

/// All real roots of the composed-first-coordinate fixed-point cubic
///   μ0²μ1 x³ − 2μ0²μ1 x² + μ0μ1(1+μ0) x + 1 − μ0μ1 = 0,
/// by dense bisection. Independent of every library code path.
fn cubic_real_roots(mu0: f64, mu1: f64) -> Vec<f64> {
    let a = mu0 * mu0 * mu1;
    let b = -2.0 * a;
    let c = mu0 * mu1 * (1.0 + mu0);
    let d = 1.0 - mu0 * mu1;
    let f = |x: f64| ((a * x + b) * x + c) * x + d;
    let (lo, hi, cells) = (-5.0, 6.0, 44_000);
    let mut roots = Vec::new();
    let step = (hi - lo) / cells as f64;
    for i in 0..cells {
        let (mut xa, mut xb) = (lo + step * i as f64, lo + step * (i + 1) as f64);
        let (mut fa, fb) = (f(xa), f(xb));
        if fa == 0.0 {
            roots.push(xa);
            continue;
        }
        if fa.signum() != fb.signum() {
            for _ in 0..200 {
                let mid = 0.5 * (xa + xb);
                let fm = f(mid);
                if fm == 0.0 || (xb - xa) < 1e-14 {
                    break;
                }
                if fm.signum() == fa.signum() {
                    xa = mid;
                    fa = fm;
                } else {
                    xb = mid;
                }
            }
            roots.push(0.5 * (xa + xb));
        }
    }
    roots
}

#[test]
fn x_star_is_one_half_for_mu_two() {
    let x = x_star(2.0, 2.0).unwrap();
    assert!((x - 0.5).abs() < 1e-12, "x* = {x}");
}

#[test]
fn reality_polynomial_at_unit_parameters_is_sixteen() {
    assert_eq!(reality_polynomial(1.0, 1.0), 16.0);
}

#[test]
fn autonomous_slice_recovers_the_individual_fixed_point() {
    for mu in [1.2, 1.7, 2.0, 2.5, 2.9, 3.0] {
        let x = x_star(mu, mu).expect("real in the subcritical range");
        assert!(
            (x - (mu - 1.0) / mu).abs() < 1e-9,
            "mu = {mu}: x* = {x} vs {}",
            (mu - 1.0) / mu
        );
    }
}

#[test]
fn x_star_matches_the_cubic_oracle_wherever_it_is_real() {
    let mut checked = 0;
    for i in 0..20 {
        for j in 0..20 {
            let mu0 = 0.2 + 0.19 * i as f64;
            let mu1 = 0.2 + 0.19 * j as f64;
            if delta2(mu0, mu1) <= 0.0 {
                continue;
            }
            let roots = cubic_real_roots(mu0, mu1);
            assert_eq!(
                roots.len(),
                1,
                "positive discriminant must mean a unique real root (mu0={mu0}, mu1={mu1}): {roots:?}"
            );
            let x = x_star(mu0, mu1).expect("real by flag");
            assert!(
                (x - roots[0]).abs() < 1e-9 * (1.0 + roots[0].abs()),
                "mu0={mu0} mu1={mu1}: formula {x} vs cubic {}",
                roots[0]
            );
            checked += 1;
        }
    }
    assert!(checked > 150, "reality region unexpectedly small: {checked}");
}

#[test]
fn x_star_survives_the_degenerate_cardano_line() {
    // at μ0 = 3 with μ1 > 3 the leading cube root is exactly 0/0 in the
    // displayed expression; the product-identity evaluation must still
    // return the cubic's unique real root
    for mu1 in [3.2, 3.5, 3.9] {
        let x = x_star(3.0, mu1).expect("Δ2 = 19683 μ1⁴(μ1−3)² > 0 here");
        let roots = cubic_real_roots(3.0, mu1);
        assert_eq!(roots.len(), 1);
        assert!(
            (x - roots[0]).abs() < 1e-9,
            "mu1={mu1}: {x} vs {}",
            roots[0]
        );
    }
}

#[test]
fn x_star_is_absent_exactly_when_delta2_is_negative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen_absent = 0;
    for _ in 0..500 {
        let mu0 = rng.random_range(0.1..4.0);
        let mu1 = rng.random_range(0.1..4.0);
        let d2 = delta2(mu0, mu1);
        let x = x_star(mu0, mu1);
        assert_eq!(x.is_some(), d2 >= 0.0);
        if x.is_none() {
            seen_absent += 1;
        }
        // sign agreement with the displayed factored form
        assert_eq!(d2 >= 0.0, reality_polynomial(mu0, mu1) >= 0.0);
    }
    assert!(seen_absent > 0, "never sampled past the reality boundary");
}

#[test]
fn composed_first_coordinate_fixes_x_star() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let p = LogisticParams::new(
            [rng.random_range(0.3..3.8), rng.random_range(0.3..3.8)],
            [rng.random_range(0.3..3.8), rng.random_range(0.3..3.8)],
        )
        .unwrap();
        let Some(x) = x_star(p.mu[0], p.mu[1]) else {
            continue;
        };
        let sys = logistic_system(&p);
        let op = compose(&sys, 0, 2).unwrap();
        let image = op.evaluate(&Point::new(vec![x, 0.0])).unwrap();
        assert!(
            (image[0] - x).abs() < 1e-10,
            "residual {:e} at {p:?}",
            (image[0] - x).abs()
        );
    }
}

#[test]
fn individual_fixed_point_for_mu_two_is_half() {
    let p = LogisticParams::new([2.0, 2.0], [0.5, 0.5]).unwrap();
    let fp = individual_fixed_points(&p, 0);
    assert_eq!(fp.e1.coords(), &[0.5, 0.0]);
}

#[test]
fn individual_e2_formula_agrees_with_the_solved_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut compared = 0;
    for _ in 0..300 {
        let p = LogisticParams::new(
            [rng.random_range(1.1..3.5), rng.random_range(1.1..3.5)],
            [rng.random_range(0.5..4.0), rng.random_range(0.5..4.0)],
        )
        .unwrap();
        for i in 0..2 {
            let fp = individual_fixed_points(&p, i);
            if let Some(delta) = fp.e2_discrepancy {
                assert!(
                    delta < 1e-9 * (1.0 + fp.e2_formula[1].abs()),
                    "formula and solved y disagree by {delta:e} at {p:?}"
                );
                compared += 1;
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn unit_growth_rate_sits_on_the_e0_boundary_and_is_non_hyperbolic() {
    let p = LogisticParams::new([1.0, 2.0], [0.5, 0.5]).unwrap();
    let regions = individual_regions(&p, 0);
    assert!(regions.e0, "mu = 1 satisfies mu <= 1 with equality");
    let sys = logistic_system(&p);
    let j = map_jacobian(sys.map(0), &Point::new(vec![0.0, 0.0])).unwrap();
    let spec = classify_spectrum(&j, DEFAULT_CENTER_TOL);
    assert_eq!(spec.verdict(), StabilityVerdict::NonHyperbolic);
}

#[test]
fn table2_e0_row_matches_the_spectrum() {
    let p = LogisticParams::new([0.5, 1.5], [0.5, 0.5]).unwrap();
    let report = logistic_spectra_and_regions(&p);
    assert_eq!(report.e0_spectrum.eigenvalues(), &[0.75, 0.0]);
    assert!(report.e0_stable);
    assert_eq!(report.e0_spectrum.verdict(), StabilityVerdict::Sink);
}

#[test]
fn unit_square_is_invariant_for_admissible_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let p = LogisticParams::new([3.9, 2.7], [3.6, 1.9]).unwrap();
    assert!(p.self_mapping());
    let sys = logistic_system(&p);
    for _ in 0..1000 {
        let mut x = Point::new(vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)]);
        for n in 0..50 {
            x = sys.map(n).evaluate(&x).unwrap();
            assert!(
                x[0] >= 0.0 && x[0] <= 1.0 && x[1] >= 0.0 && x[1] <= 1.0,
                "escaped at {x:?}"
            );
        }
    }
}

#[test]
fn equal_parameters_collapse_with_a_warning() {
    let p = LogisticParams::new([2.0, 2.0], [0.5, 0.5]).unwrap();
    let sys = logistic_system(&p);
    assert_eq!(sys.period(), 1);
    assert!(sys
        .warnings()
        .iter()
        .any(|w| matches!(w, SystemWarning::PeriodCollapsed { .. })));
}

/// The Figure-2 consistency check at test scale: composition-level region
/// predicates against spectral verdicts at the numerically located fixed
/// points, 20x20 grid with ν_0 = ν_1 = 0.5.
#[test]
fn table2_predicates_agree_with_located_spectra_on_the_figure_grid() {
    let opts = CascadeOptions::default();
    let mut cells = 0;
    let mut agreements = 0;
    for i in 0..20 {
        for j in 0..20 {
            let mu0 = 4.0 * (i as f64 + 0.5) / 20.0;
            let mu1 = 4.0 * (j as f64 + 0.5) / 20.0;
            let p = LogisticParams::new([mu0, mu1], [0.5, 0.5]).unwrap();
            let report = logistic_spectra_and_regions(&p);
            let sys = logistic_system(&p);
            let op = compose(&sys, 0, 2).unwrap();
            let scan = find_fixed_points(&op, &trimap_core::DomainBox::unit(2), &opts).unwrap();

            let mut cell_ok = true;
            for rec in &scan.records {
                let pt = rec.anchor();
                let is_sink = rec.spectrum.verdict() == StabilityVerdict::Sink;
                let predicted = if pt.max_norm_dist(&Point::new(vec![0.0, 0.0])) < 1e-6 {
                    Some(report.e0_stable)
                } else if pt[1].abs() < 1e-6 {
                    report.e1_stable
                } else {
                    report.e2_stable
                };
                if let Some(predicted) = predicted {
                    if predicted != is_sink {
                        cell_ok = false;
                    }
                }
            }
            cells += 1;
            if cell_ok {
                agreements += 1;
            }
        }
    }
    assert!(
        agreements as f64 >= 0.99 * cells as f64,
        "{agreements}/{cells} cells agree"
    );
}

#[test]
fn closed_form_spectra_match_the_fd_jacobian_at_located_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut compared = 0;
    for _ in 0..200 {
        let p = LogisticParams::new(
            [rng.random_range(0.3..3.9), rng.random_range(0.3..3.9)],
            [rng.random_range(0.3..3.9), rng.random_range(0.3..3.9)],
        )
        .unwrap();
        let sys = logistic_system(&p);
        let op = compose(&sys, 0, 2).unwrap();

        // E_0 spectrum {μ0μ1, 0} against the chain rule at the origin
        let j = trimap_dynamics::jacobian(&op, &Point::new(vec![0.0, 0.0])).unwrap();
        assert!((j.get(0, 0) - p.mu[0] * p.mu[1]).abs() < 1e-9 * (1.0 + p.mu[0] * p.mu[1]));
        assert!(j.get(1, 1).abs() < 1e-12);

        // E_1 spectrum via the corrected λ formulas
        if let Some(x) = x_star(p.mu[0], p.mu[1]) {
            if !(0.0..=1.0).contains(&x) {
                continue;
            }
            let j = trimap_dynamics::jacobian(&op, &Point::new(vec![x, 0.0])).unwrap();
            let lx = trimap_models::lambda_x(&p, x);
            let ly = trimap_models::lambda_y_e1(&p, x);
            assert!(
                (j.get(0, 0) - lx).abs() < 1e-8 * (1.0 + lx.abs()),
                "λ_x formula {lx} vs jacobian {} at {p:?}",
                j.get(0, 0)
            );
            assert!(
                (j.get(1, 1) - ly).abs() < 1e-8 * (1.0 + ly.abs()),
                "λ_y formula {ly} vs jacobian {} at {p:?}",
                j.get(1, 1)
            );
            compared += 1;
        }
    }
    assert!(compared > 100);
}

#[test]
fn delta2_sign_equals_reality_polynomial_sign_on_a_raster() {
    for i in 0..50 {
        for j in 0..50 {
            let mu0 = 4.0 * (i as f64 + 0.5) / 50.0;
            let mu1 = 4.0 * (j as f64 + 0.5) / 50.0;
            assert_eq!(
                delta2(mu0, mu1) >= 0.0,
                reality_polynomial(mu0, mu1) >= 0.0
            );
        }
    }
}

#[test]
fn interior_fixed_point_is_numeric_provenance_and_verified() {
    // pick parameters where E_2 exists: need |λ_y(E_1)| > 1, i.e. strong ν
    let p = LogisticParams::new([2.5, 2.2], [3.9, 3.8]).unwrap();
    let fp = logistic_composition_fixed_points(&p);
    let Some(e2) = &fp.e2 else {
        panic!("interior point expected for strong vertical growth");
    };
    assert_eq!(fp.e2_provenance, trimap_models::Provenance::Numeric);
    let sys = logistic_system(&p);
    let op = compose(&sys, 0, 2).unwrap();
    let image = op.evaluate(e2).unwrap();
    assert!(image.max_norm_dist(e2) < 1e-10);
    assert!(e2[1] > 0.01, "interior, not the axis root");
}
