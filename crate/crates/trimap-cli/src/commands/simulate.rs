//! `simulate`: iterate one orbit and report its trajectory and omega-limit
//! estimate.

use std::io::Write;

use serde::Serialize;
use trimap_core::{iterate_orbit, ConvergenceRule, OrbitStatus, Point};
use trimap_dynamics::{omega_limit_estimate, OmegaEstimate};

use crate::config::{OutputFormat, RunConfig, SCHEMA_VERSION};
use crate::output::{fmt_f64, write_json, CsvWriter};
use crate::CliError;

#[derive(Serialize)]
struct OrbitDoc<'a> {
    model: &'static str,
    system_period: usize,
    start_phase: usize,
    status: &'a OrbitStatus,
    trajectory: &'a [Point],
    summary: SummaryDoc<'a>,
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    converged: bool,
    converged_step: Option<usize>,
    omega: &'a OmegaEstimate,
}

pub fn run(cfg: &RunConfig, sink: &mut dyn Write) -> Result<(), CliError> {
    let orbit_cfg = cfg.orbit.as_ref().ok_or_else(|| {
        CliError::BadRequest("simulate needs an [orbit] section in the config".into())
    })?;
    let system = cfg.model.build_system()?;
    let phase = orbit_cfg.phase.unwrap_or(0);
    let steps = orbit_cfg.steps.unwrap_or(1000);
    let rule = ConvergenceRule {
        tol: orbit_cfg.tol.unwrap_or(1e-10),
    };
    let orbit = iterate_orbit(
        &system,
        &Point::new(orbit_cfg.start.clone()),
        phase,
        steps,
        rule,
    )?;
    let omega = omega_limit_estimate(&orbit, orbit_cfg.cluster_tol.unwrap_or(1e-6));

    let converged_step = match orbit.status() {
        OrbitStatus::Converged { step } => Some(*step),
        _ => None,
    };

    match cfg.format {
        OutputFormat::Json => {
            let doc = OrbitDoc {
                model: cfg.model.name(),
                system_period: orbit.system_period(),
                start_phase: orbit.start_phase(),
                status: orbit.status(),
                trajectory: orbit.trajectory(),
                summary: SummaryDoc {
                    converged: orbit.converged(),
                    converged_step,
                    omega: &omega,
                },
            };
            write_json(sink, "orbit_trace", SCHEMA_VERSION, &doc)?;
        }
        OutputFormat::Csv => {
            let k = system.dimension();
            let mut w = CsvWriter::new(sink, "orbit_trace", SCHEMA_VERSION)?;
            let cols: Vec<String> = ["step", "phase"]
                .into_iter()
                .map(String::from)
                .chain((1..=k).map(|j| format!("x{j}")))
                .collect();
            w.header(&cols.iter().map(String::as_str).collect::<Vec<_>>())?;
            for (n, state) in orbit.trajectory().iter().enumerate() {
                let mut fields = vec![
                    n.to_string(),
                    ((orbit.start_phase() + n) % system.period()).to_string(),
                ];
                fields.extend(state.coords().iter().map(|&v| fmt_f64(v)));
                w.row(&fields)?;
            }
            let status = match orbit.status() {
                OrbitStatus::Converged { .. } => "converged",
                OrbitStatus::MaxSteps => "max-steps",
                OrbitStatus::Escaped { .. } => "escaped",
                OrbitStatus::NumericalFailure { .. } => "numerical-failure",
            };
            w.trailer(&[
                ("status", status.to_string()),
                (
                    "converged_step",
                    converged_step.map_or_else(|| "-".into(), |s| s.to_string()),
                ),
                ("clusters", omega.clusters.len().to_string()),
                ("fragmented", omega.fragmented.to_string()),
            ])?;
            for (i, cluster) in omega.clusters.iter().enumerate() {
                let mut pairs = vec![
                    ("cluster", i.to_string()),
                    ("count", cluster.count.to_string()),
                ];
                let coords: Vec<String> = cluster
                    .representative
                    .coords()
                    .iter()
                    .map(|&v| fmt_f64(v))
                    .collect();
                pairs.push(("point", coords.join(";")));
                w.trailer(&pairs)?;
            }
            w.finish()?;
        }
    }
    Ok(())
}
