//! Omega-limit set estimation by orbit-tail clustering.

use serde::Serialize;
use trimap_core::{Orbit, OrbitStatus, Point};

#[derive(Clone, Debug, Serialize)]
pub struct OmegaCluster {
    /// Componentwise mean of the cluster members.
    pub representative: Point,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaEstimate {
    /// Clusters in order of first appearance along the tail.
    pub clusters: Vec<OmegaCluster>,
    /// More clusters than the system period: the tail has not settled onto
    /// a cycle of period <= p (chaotic or unconverged).
    pub fragmented: bool,
}

/// Cluster the orbit tail by single-linkage with max-norm radius
/// `cluster_tol`. A converged orbit is clustered from its settling step
/// onward (everything before is transient); an unconverged one over its
/// last 20% of iterates, at least 10p points. An orbit converging to a
/// geometric p-cycle yields p clusters.
pub fn omega_limit_estimate(orbit: &Orbit, cluster_tol: f64) -> OmegaEstimate {
    let traj = orbit.trajectory();
    let p = orbit.system_period();
    let tail_start = match orbit.status() {
        OrbitStatus::Converged { step } => *step,
        _ => traj.len().saturating_sub((traj.len() / 5).max(p * 10).max(1)),
    };
    let tail = &traj[tail_start..];

    let mut members: Vec<Vec<&Point>> = Vec::new();
    for pt in tail {
        match members
            .iter_mut()
            .find(|c| c.iter().any(|m| m.max_norm_dist(pt) <= cluster_tol))
        {
            Some(cluster) => cluster.push(pt),
            None => members.push(vec![pt]),
        }
    }

    let k = traj[0].dim();
    let clusters = members
        .iter()
        .map(|c| {
            let mut mean = vec![0.0; k];
            for pt in c {
                for (acc, &v) in mean.iter_mut().zip(pt.coords()) {
                    *acc += v;
                }
            }
            for acc in &mut mean {
                *acc /= c.len() as f64;
            }
            OmegaCluster {
                representative: Point::new(mean),
                count: c.len(),
            }
        })
        .collect::<Vec<_>>();

    OmegaEstimate {
        fragmented: clusters.len() > p,
        clusters,
    }
}
