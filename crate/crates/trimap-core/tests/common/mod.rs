#![allow(dead_code)]

//! Hand-rolled model builders for core tests. Deliberately independent of
//! the workspace `trimap-models` crate so these tests exercise the core
//! surface with their own arithmetic.

use std::sync::Arc;

use trimap_core::{CoordFn, CoordinateMap, DomainBox, TriangularMap, TriangularSystem};

/// One Leslie-Gower competition map
/// `(x, y) -> (μKx/(K+(μ-1)x), αLy/(L+(α-1)y+βx))` with analytic partials.
pub fn leslie_gower_map(mu: f64, alpha: f64, beta: f64, k: f64, l: f64) -> TriangularMap {
    let f1 = CoordinateMap::new(1, move |x: &[f64]| mu * k * x[0] / (k + (mu - 1.0) * x[0]))
        .with_partials(vec![Arc::new(move |x: &[f64]| {
            let d = k + (mu - 1.0) * x[0];
            mu * k * k / (d * d)
        }) as CoordFn])
        .unwrap();
    let f2 = CoordinateMap::new(2, move |x: &[f64]| {
        alpha * l * x[1] / (l + (alpha - 1.0) * x[1] + beta * x[0])
    })
    .with_partials(vec![
        Arc::new(move |x: &[f64]| {
            let d = l + (alpha - 1.0) * x[1] + beta * x[0];
            -alpha * l * x[1] * beta / (d * d)
        }) as CoordFn,
        Arc::new(move |x: &[f64]| {
            let d = l + (alpha - 1.0) * x[1] + beta * x[0];
            alpha * l * (l + beta * x[0]) / (d * d)
        }) as CoordFn,
    ])
    .unwrap();
    TriangularMap::new(vec![f1, f2], DomainBox::nonnegative(2)).unwrap()
}

/// The paper's 2-periodic Leslie-Gower system with carrying capacities
/// `(K_0, K_1)` and `(L_0, L_1)`.
pub fn leslie_gower_system(
    mu: f64,
    alpha: f64,
    beta: f64,
    k: (f64, f64),
    l: (f64, f64),
) -> TriangularSystem {
    TriangularSystem::new(
        vec![
            leslie_gower_map(mu, alpha, beta, k.0, l.0),
            leslie_gower_map(mu, alpha, beta, k.1, l.1),
        ],
        vec![2, 2],
    )
    .unwrap()
}

/// One Ricker-type map `(x, y) -> (x e^{r(1-x)}, y e^{s(1-y-μx)})`.
pub fn ricker_map(r: f64, s: f64, mu: f64) -> TriangularMap {
    let f1 = CoordinateMap::new(1, move |x: &[f64]| x[0] * (r * (1.0 - x[0])).exp())
        .with_partials(vec![Arc::new(move |x: &[f64]| {
            (r * (1.0 - x[0])).exp() * (1.0 - r * x[0])
        }) as CoordFn])
        .unwrap();
    let f2 = CoordinateMap::new(2, move |x: &[f64]| {
        x[1] * (s * (1.0 - x[1] - mu * x[0])).exp()
    })
    .with_partials(vec![
        Arc::new(move |x: &[f64]| {
            -s * mu * x[1] * (s * (1.0 - x[1] - mu * x[0])).exp()
        }) as CoordFn,
        Arc::new(move |x: &[f64]| {
            (s * (1.0 - x[1] - mu * x[0])).exp() * (1.0 - s * x[1])
        }) as CoordFn,
    ])
    .unwrap();
    TriangularMap::new(vec![f1, f2], DomainBox::nonnegative(2)).unwrap()
}

/// The paper's 6-periodic Ricker system: r has period 3, s has period 2.
pub fn ricker_system(r: [f64; 3], s: [f64; 2], mu: f64) -> TriangularSystem {
    let maps = (0..6).map(|n| ricker_map(r[n % 3], s[n % 2], mu)).collect();
    TriangularSystem::new(maps, vec![3, 2]).unwrap()
}

/// Identity system of dimension `k` on `[-1, 1]^k`.
pub fn identity_system(k: usize) -> TriangularSystem {
    let domain = DomainBox::new(vec![(-1.0, 1.0); k]).unwrap();
    TriangularSystem::autonomous(TriangularMap::identity(domain))
}
