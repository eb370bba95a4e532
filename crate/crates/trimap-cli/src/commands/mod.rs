pub mod analyze;
pub mod region_scan;
pub mod simulate;
pub mod verify_global;

use trimap_core::Point;
use trimap_dynamics::{Scenario, StabilityVerdict};

use crate::config::ModelSpec;

pub fn verdict_str(v: StabilityVerdict) -> &'static str {
    match v {
        StabilityVerdict::Sink => "sink",
        StabilityVerdict::Source => "source",
        StabilityVerdict::Saddle => "saddle",
        StabilityVerdict::NonHyperbolic => "non-hyperbolic",
    }
}

pub fn scenario_str(s: Scenario) -> String {
    match s {
        Scenario::CommonFixedPoint => "common-fixed-point".into(),
        Scenario::Cycle { m } => format!("cycle(m={m})"),
        Scenario::GeometricCycle => "geometric-cycle".into(),
        Scenario::SuperPeriod => "super-period".into(),
        Scenario::Irregular => "irregular".into(),
    }
}

/// Closed-form reference points of the bundled models, used for the
/// closed-form-vs-numeric delta column. Empty for custom models.
pub fn reference_points(model: &ModelSpec) -> Vec<Point> {
    match model {
        ModelSpec::LeslieGower(p) => {
            let c = trimap_models::leslie_gower_cycles(p);
            let mut pts = vec![c.origin];
            pts.extend(c.exclusion_x);
            pts.extend(c.exclusion_y);
            if c.coexistence_admissible {
                pts.extend(c.coexistence);
            }
            pts
        }
        ModelSpec::Logistic(p) => {
            let fp = trimap_models::logistic_composition_fixed_points(p);
            let mut pts = vec![fp.e0];
            if let Some(e1) = fp.e1 {
                pts.push(e1);
            }
            if let Some(e2) = fp.e2 {
                pts.push(e2);
            }
            pts
        }
        ModelSpec::Ricker(p) => {
            let k = p.dimension();
            let axis = |j: usize| {
                let mut c = vec![0.0; k];
                c[j] = 1.0;
                Point::new(c)
            };
            let mut pts = vec![Point::new(vec![0.0; k])];
            for j in 0..k {
                pts.push(axis(j));
            }
            pts.push(trimap_models::c_star(p));
            pts
        }
        ModelSpec::Custom(_) => Vec::new(),
    }
}

/// Minimum max-norm distance of `point` to the reference set, if any.
pub fn closed_form_delta(refs: &[Point], point: &Point) -> Option<f64> {
    refs.iter()
        .map(|r| r.max_norm_dist(point))
        .min_by(|a, b| a.partial_cmp(b).expect("finite distances"))
}
