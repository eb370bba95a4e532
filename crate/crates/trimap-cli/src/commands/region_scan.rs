//! `region-scan`: raster a 2D parameter rectangle and record per-cell
//! stability/reality predicates — the data behind the model's parameter-
//! space figures. Rows stream as they are computed.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use trimap_core::compose;
use trimap_dynamics::period2_absence_test;
use trimap_models::{
    coexistence_margin, leslie_gower_spectra, logistic_spectra_and_regions, ricker_stability,
    LeslieGowerParams, LogisticParams, RickerParams,
};

use crate::commands::verdict_str;
use crate::config::{ModelSpec, OutputFormat, RunConfig, ScanSection, SCHEMA_VERSION};
use crate::output::{fmt_f64, CsvWriter};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
struct Cell {
    i: usize,
    j: usize,
    axis_values: [f64; 2],
    status: CellStatus,
    predicates: Vec<(String, Option<bool>)>,
    verdicts: Vec<(String, Option<&'static str>)>,
    period2_witnesses: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
enum CellStatus {
    Ok,
    Failed(String),
}

/// Predicate/verdict column names per model, fixed so the CSV header is
/// deterministic even when early cells fail.
fn columns(model: &ModelSpec) -> (Vec<&'static str>, Vec<&'static str>) {
    match model {
        ModelSpec::LeslieGower(_) => (
            vec!["coexistence"],
            vec!["origin", "exclusion_x", "exclusion_y", "coexistence_point"],
        ),
        ModelSpec::Logistic(_) => (
            vec!["reality", "e0_stable", "e1_stable", "e2_stable"],
            vec!["e0", "e1", "e2"],
        ),
        ModelSpec::Ricker(_) => (vec!["stability_condition"], vec!["c_star"]),
        ModelSpec::Custom(_) => (vec![], vec![]),
    }
}

fn set_axis(model: &ModelSpec, axis: &str, value: f64) -> Result<ModelSpec, String> {
    match model {
        ModelSpec::LeslieGower(p) => {
            let mut q = *p;
            match axis {
                "mu" => q.mu = value,
                "alpha" => q.alpha = value,
                "beta" => q.beta = value,
                "k0" => q.k[0] = value,
                "k1" => q.k[1] = value,
                "l0" => q.l[0] = value,
                "l1" => q.l[1] = value,
                _ => return Err(format!("unknown leslie-gower axis `{axis}`")),
            }
            LeslieGowerParams::new(q.mu, q.alpha, q.beta, q.k, q.l)
                .map(ModelSpec::LeslieGower)
                .map_err(|e| e.to_string())
        }
        ModelSpec::Logistic(p) => {
            let mut q = *p;
            match axis {
                "mu0" => q.mu[0] = value,
                "mu1" => q.mu[1] = value,
                "nu0" => q.nu[0] = value,
                "nu1" => q.nu[1] = value,
                _ => return Err(format!("unknown logistic axis `{axis}`")),
            }
            LogisticParams::new(q.mu, q.nu)
                .map(ModelSpec::Logistic)
                .map_err(|e| e.to_string())
        }
        ModelSpec::Ricker(p) => {
            let planar = p.dimension() == 2 && p.coordinate_periods() == vec![3, 2];
            if !planar {
                return Err("region scans support the planar ricker model only".into());
            }
            let mut r = [p.rate(0, 0), p.rate(0, 1), p.rate(0, 2)];
            let mut s = [p.rate(1, 0), p.rate(1, 1)];
            let mut mu = p.interactions()[0];
            match axis {
                "r0" => r[0] = value,
                "r1" => r[1] = value,
                "r2" => r[2] = value,
                "s0" => s[0] = value,
                "s1" => s[1] = value,
                "mu" => mu = value,
                _ => return Err(format!("unknown ricker axis `{axis}`")),
            }
            RickerParams::planar(r, s, mu)
                .map(ModelSpec::Ricker)
                .map_err(|e| e.to_string())
        }
        ModelSpec::Custom(_) => Err("region scans need a named parameter space".into()),
    }
}

fn evaluate_cell(model: &ModelSpec, scan: &ScanSection, cfg: &RunConfig) -> Cell {
    let mut predicates: Vec<(String, Option<bool>)> = Vec::new();
    let mut verdicts: Vec<(String, Option<&'static str>)> = Vec::new();

    match model {
        ModelSpec::LeslieGower(p) => {
            let spectra = leslie_gower_spectra(p);
            predicates.push(("coexistence".into(), Some(coexistence_margin(p) > 0.0)));
            verdicts.push(("origin".into(), Some(verdict_str(spectra.origin.verdict()))));
            verdicts.push((
                "exclusion_x".into(),
                Some(verdict_str(spectra.exclusion_x.verdict())),
            ));
            verdicts.push((
                "exclusion_y".into(),
                Some(verdict_str(spectra.exclusion_y.verdict())),
            ));
            verdicts.push((
                "coexistence_point".into(),
                Some(verdict_str(spectra.coexistence.verdict())),
            ));
        }
        ModelSpec::Logistic(p) => {
            let report = logistic_spectra_and_regions(p);
            predicates.push(("reality".into(), Some(report.fixed_points.x_star_real)));
            predicates.push(("e0_stable".into(), Some(report.e0_stable)));
            predicates.push(("e1_stable".into(), report.e1_stable));
            predicates.push(("e2_stable".into(), report.e2_stable));
            verdicts.push(("e0".into(), Some(verdict_str(report.e0_spectrum.verdict()))));
            verdicts.push((
                "e1".into(),
                report.e1_spectrum.as_ref().map(|s| verdict_str(s.verdict())),
            ));
            verdicts.push((
                "e2".into(),
                report.e2_spectrum.as_ref().map(|s| verdict_str(s.verdict())),
            ));
        }
        ModelSpec::Ricker(p) => match ricker_stability(p) {
            Ok(report) => {
                predicates.push((
                    "stability_condition".into(),
                    Some(report.condition_satisfied),
                ));
                verdicts.push(("c_star".into(), Some(verdict_str(report.spectrum.verdict()))));
            }
            Err(_) => {
                predicates.push(("stability_condition".into(), None));
                verdicts.push(("c_star".into(), None));
            }
        },
        ModelSpec::Custom(_) => {}
    }

    let period2_witnesses = if scan.period2_witnesses {
        count_period2_witnesses(model, cfg)
    } else {
        None
    };

    Cell {
        i: 0,
        j: 0,
        axis_values: [0.0, 0.0],
        status: CellStatus::Ok,
        predicates,
        verdicts,
        period2_witnesses,
    }
}

fn count_period2_witnesses(model: &ModelSpec, cfg: &RunConfig) -> Option<usize> {
    let system = model.build_system().ok()?;
    let op = compose(&system, 0, system.period()).ok()?;
    let search = model.default_box();
    let scan = trimap_dynamics::find_fixed_points(&op, &search, &cfg.cascade).ok()?;
    let known: Vec<trimap_core::Point> =
        scan.records.iter().map(|r| r.anchor().clone()).collect();
    let report = period2_absence_test(&op, &known, &search, &cfg.cascade).ok()?;
    Some(report.witnesses.len())
}

fn axis_value(range: [f64; 2], n: usize, i: usize) -> f64 {
    if n == 1 {
        0.5 * (range[0] + range[1])
    } else {
        range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64
    }
}

/// One raster row, computed cell-parallel, returned in cell order.
fn compute_row(cfg: &RunConfig, scan: &ScanSection, i: usize) -> Vec<Cell> {
    let (pred_cols, verdict_cols) = columns(&cfg.model);
    let [nx, ny] = scan.resolution;
    let v0 = axis_value(scan.ranges[0], nx, i);
    (0..ny)
        .into_par_iter()
        .map(|j| {
            let v1 = axis_value(scan.ranges[1], ny, j);
            let cell_model = set_axis(&cfg.model, &scan.axes[0], v0)
                .and_then(|m| set_axis(&m, &scan.axes[1], v1));
            let mut cell = match cell_model {
                Ok(m) => evaluate_cell(&m, scan, cfg),
                Err(message) => Cell {
                    i,
                    j,
                    axis_values: [v0, v1],
                    status: CellStatus::Failed(message),
                    predicates: pred_cols.iter().map(|c| (c.to_string(), None)).collect(),
                    verdicts: verdict_cols.iter().map(|c| (c.to_string(), None)).collect(),
                    period2_witnesses: None,
                },
            };
            cell.i = i;
            cell.j = j;
            cell.axis_values = [v0, v1];
            cell
        })
        .collect()
}

fn run_csv(cfg: &RunConfig, scan: &ScanSection, sink: &mut dyn Write) -> Result<(), CliError> {
    let (pred_cols, verdict_cols) = columns(&cfg.model);
    let [nx, ny] = scan.resolution;
    let mut w = CsvWriter::new(sink, "region_scan", SCHEMA_VERSION)?;
    let mut cols: Vec<String> = vec![
        "i".into(),
        "j".into(),
        scan.axes[0].clone(),
        scan.axes[1].clone(),
        "status".into(),
    ];
    cols.extend(pred_cols.iter().map(|s| s.to_string()));
    cols.extend(verdict_cols.iter().map(|s| s.to_string()));
    cols.push("period2_witnesses".into());
    w.header(&cols.iter().map(String::as_str).collect::<Vec<_>>())?;

    for i in 0..nx {
        for cell in compute_row(cfg, scan, i) {
            let mut fields = vec![
                cell.i.to_string(),
                cell.j.to_string(),
                fmt_f64(cell.axis_values[0]),
                fmt_f64(cell.axis_values[1]),
                match &cell.status {
                    CellStatus::Ok => "ok".to_string(),
                    CellStatus::Failed(_) => "failed".to_string(),
                },
            ];
            fields.extend(
                cell.predicates
                    .iter()
                    .map(|(_, v)| v.map(|b| b.to_string()).unwrap_or_default()),
            );
            fields.extend(
                cell.verdicts
                    .iter()
                    .map(|(_, v)| v.map(String::from).unwrap_or_default()),
            );
            fields.push(
                cell.period2_witnesses
                    .map(|n| n.to_string())
                    .unwrap_or_default(),
            );
            w.row(&fields)?;
        }
    }
    w.trailer(&[
        ("cells", (nx * ny).to_string()),
        ("resolution", format!("{nx}x{ny}")),
    ])?;
    w.finish()?;
    Ok(())
}

fn run_json(cfg: &RunConfig, scan: &ScanSection, sink: &mut dyn Write) -> Result<(), CliError> {
    let [nx, _] = scan.resolution;
    sink.write_all(
        format!(
            "{{\"kind\":\"region_scan\",\"schema_version\":{SCHEMA_VERSION},\"axes\":[\"{}\",\"{}\"],\"cells\":[\n",
            scan.axes[0], scan.axes[1]
        )
        .as_bytes(),
    )?;
    let mut first = true;
    for i in 0..nx {
        for cell in compute_row(cfg, scan, i) {
            let sep = if first { "" } else { ",\n" };
            first = false;
            let body = serde_json::to_string(&cell).map_err(std::io::Error::other)?;
            sink.write_all(sep.as_bytes())?;
            sink.write_all(body.as_bytes())?;
        }
    }
    sink.write_all(b"\n]}\n")?;
    sink.flush()?;
    Ok(())
}

pub fn run(cfg: &RunConfig, sink: &mut dyn Write) -> Result<(), CliError> {
    let scan = cfg
        .scan
        .as_ref()
        .ok_or_else(|| CliError::BadRequest("region-scan needs a [scan] section".into()))?;
    match cfg.format {
        OutputFormat::Csv => run_csv(cfg, scan, sink),
        OutputFormat::Json => run_json(cfg, scan, sink),
    }
}
