#![allow(dead_code)]

//! Inline model builders for dynamics tests, independent of the bundled
//! models crate. Analytic partials are deliberately omitted for some maps
//! so the finite-difference path gets exercised.

use std::sync::Arc;

use trimap_core::{CoordFn, CoordinateMap, DomainBox, TriangularMap, TriangularSystem};

pub fn leslie_gower_system(
    mu: f64,
    alpha: f64,
    beta: f64,
    k: (f64, f64),
    l: (f64, f64),
) -> TriangularSystem {
    let map = |kn: f64, ln: f64| {
        let f1 = CoordinateMap::new(1, move |x: &[f64]| {
            mu * kn * x[0] / (kn + (mu - 1.0) * x[0])
        })
        .with_partials(vec![Arc::new(move |x: &[f64]| {
            let d = kn + (mu - 1.0) * x[0];
            mu * kn * kn / (d * d)
        }) as CoordFn])
        .unwrap();
        let f2 = CoordinateMap::new(2, move |x: &[f64]| {
            alpha * ln * x[1] / (ln + (alpha - 1.0) * x[1] + beta * x[0])
        })
        .with_partials(vec![
            Arc::new(move |x: &[f64]| {
                let d = ln + (alpha - 1.0) * x[1] + beta * x[0];
                -alpha * ln * x[1] * beta / (d * d)
            }) as CoordFn,
            Arc::new(move |x: &[f64]| {
                let d = ln + (alpha - 1.0) * x[1] + beta * x[0];
                alpha * ln * (ln + beta * x[0]) / (d * d)
            }) as CoordFn,
        ])
        .unwrap();
        TriangularMap::new(vec![f1, f2], DomainBox::nonnegative(2)).unwrap()
    };
    TriangularSystem::new(vec![map(k.0, l.0), map(k.1, l.1)], vec![2, 2]).unwrap()
}

/// 2-periodic triangular logistic system on [0,1]^2 (no analytic partials:
/// exercises the finite-difference Jacobian path).
pub fn logistic_system(mu: (f64, f64), nu: (f64, f64)) -> TriangularSystem {
    let map = |m: f64, v: f64| {
        let f1 = CoordinateMap::new(1, move |x: &[f64]| m * x[0] * (1.0 - x[0]));
        let f2 = CoordinateMap::new(2, move |x: &[f64]| v * x[1] * (1.0 - x[1]) * x[0]);
        TriangularMap::new(vec![f1, f2], DomainBox::unit(2)).unwrap()
    };
    TriangularSystem::new(vec![map(mu.0, nu.0), map(mu.1, nu.1)], vec![2, 2]).unwrap()
}

/// The 1D logistic map lifted to a k=1 autonomous system on [0,1].
pub fn logistic_1d(mu: f64) -> TriangularSystem {
    let f1 = CoordinateMap::new(1, move |x: &[f64]| mu * x[0] * (1.0 - x[0]));
    TriangularSystem::autonomous(
        TriangularMap::new(vec![f1], DomainBox::unit(1)).unwrap(),
    )
}

pub fn ricker_system(r: [f64; 3], s: [f64; 2], mu: f64) -> TriangularSystem {
    let map = |rn: f64, sn: f64| {
        let f1 = CoordinateMap::new(1, move |x: &[f64]| x[0] * (rn * (1.0 - x[0])).exp());
        let f2 = CoordinateMap::new(2, move |x: &[f64]| {
            x[1] * (sn * (1.0 - x[1] - mu * x[0])).exp()
        });
        TriangularMap::new(vec![f1, f2], DomainBox::nonnegative(2)).unwrap()
    };
    let maps = (0..6).map(|n| map(r[n % 3], s[n % 2])).collect();
    TriangularSystem::new(maps, vec![3, 2]).unwrap()
}

pub fn identity_system(k: usize) -> TriangularSystem {
    TriangularSystem::autonomous(TriangularMap::identity(
        DomainBox::new(vec![(-1.0, 1.0); k]).unwrap(),
    ))
}

/// The two prime-period-2 points of the 1D logistic map, from the closed
/// form `(μ+1 ± sqrt((μ+1)(μ-3))) / (2μ)`.
pub fn logistic_two_cycle(mu: f64) -> Option<(f64, f64)> {
    let disc = (mu + 1.0) * (mu - 3.0);
    if disc <= 0.0 {
        return None;
    }
    let s = disc.sqrt();
    Some(((mu + 1.0 - s) / (2.0 * mu), (mu + 1.0 + s) / (2.0 * mu)))
}
