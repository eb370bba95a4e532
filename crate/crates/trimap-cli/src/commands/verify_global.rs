//! `verify-global`: the combined global-dynamics criterion. Locates the
//! fixed points of the full-period composition, tests for prime-period-2
//! orbits, and iterates a sample grid; globally convergent dynamics means
//! no witnesses and every in-domain sample assigned.

use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use trimap_core::{compose, Point};
use trimap_dynamics::{
    grid_samples, period2_absence_test, verify_global_convergence_at, ConvergenceReport,
    ConvergenceSettings, CycleRecord, Period2Report, SampleOutcome,
};

use crate::config::{OutputFormat, RunConfig, SCHEMA_VERSION};
use crate::output::{fmt_f64, write_json, CsvWriter};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// No period-2 witnesses and every in-domain sample converged to a
    /// target: the global-convergence criterion holds at this grid scale.
    CriterionSatisfied,
    /// Genuine prime-period-2 orbits exist.
    CriterionViolated,
    /// No witnesses, but some samples failed to settle onto a target.
    Inconclusive,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    model: &'static str,
    phase: usize,
    verdict: Verdict,
    period2: &'a Period2Report,
    targets: &'a [CycleRecord],
    convergence: &'a ConvergenceReport,
}

pub fn evaluate(
    cfg: &RunConfig,
) -> Result<(Verdict, Period2Report, Vec<CycleRecord>, ConvergenceReport), CliError> {
    let system = cfg.model.build_system()?;
    let op = compose(&system, cfg.phase, system.period())?;
    let scan = trimap_dynamics::find_fixed_points(&op, &cfg.search_box, &cfg.cascade)?;
    let known: Vec<Point> = scan.records.iter().map(|r| r.anchor().clone()).collect();
    let period2 = period2_absence_test(&op, &known, &cfg.search_box, &cfg.cascade)?;

    let mut samples = grid_samples(&cfg.sample_box, &cfg.sample_grid)?;
    if cfg.jitter > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let cell: Vec<f64> = (0..cfg.sample_box.dim())
            .map(|d| {
                let (lo, hi) = cfg.sample_box.interval(d);
                (hi - lo) / (cfg.sample_grid[d].max(2) - 1) as f64
            })
            .collect();
        samples = samples
            .into_iter()
            .map(|p| {
                let coords = p
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(d, &v)| {
                        let (lo, hi) = cfg.sample_box.interval(d);
                        let amp = 0.5 * cfg.jitter * cell[d];
                        (v + rng.random_range(-amp..=amp)).clamp(lo, hi)
                    })
                    .collect();
                Point::new(coords)
            })
            .collect();
    }

    let settings = ConvergenceSettings::new(cfg.verify_max_iters, cfg.verify_tol);
    let report =
        verify_global_convergence_at(&system, &scan.records, &samples, cfg.phase, &settings)?;

    let verdict = if !period2.absent {
        Verdict::CriterionViolated
    } else if report.converged_fraction == 1.0 && report.in_domain_samples > 0 {
        Verdict::CriterionSatisfied
    } else {
        Verdict::Inconclusive
    };
    Ok((verdict, period2, scan.records, report))
}

fn outcome_fields(outcome: &SampleOutcome) -> (&'static str, String, String) {
    match outcome {
        SampleOutcome::Assigned { target, iterations } => {
            ("assigned", target.to_string(), iterations.to_string())
        }
        SampleOutcome::ConvergedUnassigned { iterations, .. } => {
            ("converged-unassigned", String::new(), iterations.to_string())
        }
        SampleOutcome::NotConverged { .. } => ("not-converged", String::new(), String::new()),
        SampleOutcome::Escaped { step } => ("escaped", String::new(), step.to_string()),
        SampleOutcome::Failed { step } => ("failed", String::new(), step.to_string()),
        SampleOutcome::OutsideDomain => ("outside-domain", String::new(), String::new()),
    }
}

pub fn run(cfg: &RunConfig, sink: &mut dyn Write) -> Result<Verdict, CliError> {
    let (verdict, period2, targets, report) = evaluate(cfg)?;

    match cfg.format {
        OutputFormat::Json => {
            let doc = VerifyDoc {
                model: cfg.model.name(),
                phase: cfg.phase,
                verdict,
                period2: &period2,
                targets: &targets,
                convergence: &report,
            };
            write_json(sink, "convergence_report", SCHEMA_VERSION, &doc)?;
        }
        OutputFormat::Csv => {
            let k = cfg.sample_box.dim();
            let mut w = CsvWriter::new(sink, "convergence_report", SCHEMA_VERSION)?;
            let verdict_name = match verdict {
                Verdict::CriterionSatisfied => "criterion-satisfied",
                Verdict::CriterionViolated => "criterion-violated",
                Verdict::Inconclusive => "inconclusive",
            };
            w.trailer(&[
                ("verdict", verdict_name.to_string()),
                ("fraction", fmt_f64(report.converged_fraction)),
                ("in_domain", report.in_domain_samples.to_string()),
                ("targets", targets.len().to_string()),
                ("period2_witnesses", period2.witnesses.len().to_string()),
                ("unlisted_fixed_points", period2.unlisted_fixed_points.len().to_string()),
                ("grid_density", period2.grid_density.to_string()),
                ("tol", fmt_f64(report.tol)),
                ("assign_tol", fmt_f64(report.assign_tol)),
                ("max_iters", report.max_iters.to_string()),
            ])?;
            for (i, witness) in period2.witnesses.iter().enumerate() {
                let coords: Vec<String> =
                    witness.coords().iter().map(|&v| fmt_f64(v)).collect();
                w.trailer(&[("witness", i.to_string()), ("point", coords.join(";"))])?;
            }
            let mut cols: Vec<String> = vec!["sample".into()];
            cols.extend((1..=k).map(|j| format!("x{j}")));
            cols.extend(["outcome", "target", "iterations"].map(String::from));
            w.header(&cols.iter().map(String::as_str).collect::<Vec<_>>())?;
            for (i, (sample, outcome)) in report.outcomes.iter().enumerate() {
                let (name, target, iters) = outcome_fields(outcome);
                let mut fields = vec![i.to_string()];
                fields.extend(sample.coords().iter().map(|&v| fmt_f64(v)));
                fields.push(name.to_string());
                fields.push(target);
                fields.push(iters);
                w.row(&fields)?;
            }
            w.finish()?;
        }
    }
    Ok(verdict)
}
