//! `analyze`: locate the fixed points of the full-period composition, label
//! each cycle, and report spectra with a closed-form delta for the bundled
//! models.

use std::io::Write;

use serde::Serialize;
use trimap_core::compose;
use trimap_dynamics::{find_fixed_points, CycleRecord, FixedPointScan};

use crate::commands::{closed_form_delta, reference_points, scenario_str, verdict_str};
use crate::config::{OutputFormat, RunConfig, SCHEMA_VERSION};
use crate::output::{fmt_f64, write_json, CsvWriter};
use crate::CliError;

#[derive(Serialize)]
struct AnalyzeDoc<'a> {
    model: &'static str,
    phase: usize,
    window: usize,
    degenerate: bool,
    grid_density: usize,
    records: Vec<RecordDoc<'a>>,
}

#[derive(Serialize)]
struct RecordDoc<'a> {
    #[serde(flatten)]
    record: &'a CycleRecord,
    closed_form_delta: Option<f64>,
}

pub fn scan(cfg: &RunConfig) -> Result<(FixedPointScan, usize), CliError> {
    let system = cfg.model.build_system()?;
    let window = system.period();
    let op = compose(&system, cfg.phase, window)?;
    let scan = find_fixed_points(&op, &cfg.search_box, &cfg.cascade)?;
    Ok((scan, window))
}

pub fn run(cfg: &RunConfig, sink: &mut dyn Write) -> Result<(), CliError> {
    let (scan, window) = scan(cfg)?;
    let refs = reference_points(&cfg.model);

    match cfg.format {
        OutputFormat::Json => {
            let doc = AnalyzeDoc {
                model: cfg.model.name(),
                phase: cfg.phase,
                window,
                degenerate: scan.degenerate,
                grid_density: scan.grid_density,
                records: scan
                    .records
                    .iter()
                    .map(|record| RecordDoc {
                        record,
                        closed_form_delta: closed_form_delta(&refs, record.anchor()),
                    })
                    .collect(),
            };
            write_json(sink, "cycle_report", SCHEMA_VERSION, &doc)?;
        }
        OutputFormat::Csv => {
            let k = scan
                .records
                .first()
                .map_or(0, |r| r.anchor().dim());
            let mut w = CsvWriter::new(sink, "cycle_report", SCHEMA_VERSION)?;
            let mut cols: Vec<String> = [
                "record",
                "point_index",
                "phase",
                "window",
                "period",
                "scenario",
                "verdict",
                "residual",
            ]
            .into_iter()
            .map(String::from)
            .collect();
            cols.extend((1..=k).map(|j| format!("eig{j}")));
            cols.extend((1..=k).map(|j| format!("x{j}")));
            cols.push("cf_delta".into());
            w.header(&cols.iter().map(String::as_str).collect::<Vec<_>>())?;

            for (ri, record) in scan.records.iter().enumerate() {
                let delta = closed_form_delta(&refs, record.anchor());
                for (pi, point) in record.points.iter().enumerate() {
                    let mut fields = vec![
                        ri.to_string(),
                        pi.to_string(),
                        record.phase.to_string(),
                        record.window.to_string(),
                        record.period.to_string(),
                        scenario_str(record.scenario),
                        verdict_str(record.spectrum.verdict()).to_string(),
                        fmt_f64(record.residuals[pi]),
                    ];
                    fields.extend(record.spectrum.eigenvalues().iter().map(|&v| fmt_f64(v)));
                    fields.extend(point.coords().iter().map(|&v| fmt_f64(v)));
                    fields.push(delta.map(fmt_f64).unwrap_or_default());
                    w.row(&fields)?;
                }
            }
            w.trailer(&[
                ("records", scan.records.len().to_string()),
                ("degenerate", scan.degenerate.to_string()),
                ("grid_density", scan.grid_density.to_string()),
            ])?;
            w.finish()?;
        }
    }
    Ok(())
}
