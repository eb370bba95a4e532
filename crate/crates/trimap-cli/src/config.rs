//! Run configuration: strict TOML with a tagged model block.
//!
//! Unknown keys are rejected everywhere. The `[model]` table carries a
//! `kind` tag and is re-deserialized into the matching parameter struct, so
//! strictness survives the tagging.

use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;
use trimap_core::{CoordFn, CoordinateMap, DomainBox, TriangularMap, TriangularSystem};
use trimap_models::{LeslieGowerParams, LogisticParams, RickerParams};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("config field `{field}`: {message}")]
    Invalid { field: String, message: String },

    #[error(transparent)]
    Model(#[from] trimap_models::ModelError),

    #[error(transparent)]
    Core(#[from] trimap_core::CoreError),
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    #[serde(default)]
    format: Option<OutputFormat>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    out: Option<String>,
    model: toml::Table,
    #[serde(default)]
    sample: Option<SampleSection>,
    #[serde(default)]
    solver: Option<SolverSection>,
    #[serde(default)]
    orbit: Option<OrbitSection>,
    #[serde(default)]
    verify: Option<VerifySection>,
    #[serde(default)]
    scan: Option<ScanSection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSection {
    #[serde(default)]
    pub r#box: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub grid: Option<Vec<usize>>,
    /// Uniform jitter amplitude as a fraction of the cell size, applied to
    /// interior samples under the run seed.
    #[serde(default)]
    pub jitter: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    /// Root-search box for the cascade (defaults to the model's natural
    /// closed box, axes included). Distinct from `sample.box`, which is the
    /// basin-sampling grid.
    #[serde(default)]
    pub r#box: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub grid_density: Option<usize>,
    #[serde(default)]
    pub newton_tol: Option<f64>,
    #[serde(default)]
    pub dedup_tol: Option<f64>,
    #[serde(default)]
    pub phase: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSection {
    pub start: Vec<f64>,
    #[serde(default)]
    pub phase: Option<usize>,
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub cluster_tol: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default)]
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub phase: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub axes: [String; 2],
    pub ranges: [[f64; 2]; 2],
    pub resolution: [usize; 2],
    /// Count prime-period-2 witnesses per cell (adds a cascade solve of the
    /// doubled composition to every cell).
    #[serde(default)]
    pub period2_witnesses: bool,
}

/// One monomial `c * Π x_m^{e[m]}` of a custom polynomial coordinate map.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialSpec {
    pub c: f64,
    /// Exponents over x_1..x_j; shorter lists are zero-padded.
    pub e: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialSpec {
    pub terms: Vec<MonomialSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomMapSpec {
    pub coords: Vec<PolynomialSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomModel {
    pub periods: Vec<usize>,
    pub domain: Vec<[f64; 2]>,
    pub maps: Vec<CustomMapSpec>,
}

#[derive(Clone, Debug)]
pub enum ModelSpec {
    LeslieGower(LeslieGowerParams),
    Logistic(LogisticParams),
    Ricker(RickerParams),
    Custom(CustomModel),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLeslieGower {
    mu: f64,
    alpha: f64,
    beta: f64,
    k: [f64; 2],
    l: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLogistic {
    mu: [f64; 2],
    nu: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRickerPlanar {
    r: [f64; 3],
    s: [f64; 2],
    mu: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRickerMulti {
    rates: Vec<Vec<f64>>,
    interactions: Vec<f64>,
}

impl ModelSpec {
    fn from_table(mut table: toml::Table) -> Result<Self, ConfigError> {
        let kind = table
            .remove("kind")
            .ok_or_else(|| invalid("model.kind", "missing"))?;
        let kind = kind
            .as_str()
            .ok_or_else(|| invalid("model.kind", "must be a string"))?
            .to_string();
        let rest = toml::Value::Table(table);
        match kind.as_str() {
            "leslie-gower" => {
                let raw: RawLeslieGower = rest.try_into()?;
                Ok(ModelSpec::LeslieGower(LeslieGowerParams::new(
                    raw.mu, raw.alpha, raw.beta, raw.k, raw.l,
                )?))
            }
            "logistic" => {
                let raw: RawLogistic = rest.try_into()?;
                Ok(ModelSpec::Logistic(LogisticParams::new(raw.mu, raw.nu)?))
            }
            "ricker" => {
                // planar spelling first, multi-dimensional second
                if rest.get("r").is_some() {
                    let raw: RawRickerPlanar = rest.try_into()?;
                    Ok(ModelSpec::Ricker(RickerParams::planar(raw.r, raw.s, raw.mu)?))
                } else {
                    let raw: RawRickerMulti = rest.try_into()?;
                    Ok(ModelSpec::Ricker(RickerParams::multi(
                        raw.rates,
                        raw.interactions,
                    )?))
                }
            }
            "custom" => {
                let raw: CustomModel = rest.try_into()?;
                raw.validate()?;
                Ok(ModelSpec::Custom(raw))
            }
            other => Err(invalid(
                "model.kind",
                format!("unknown model `{other}` (expected leslie-gower | logistic | ricker | custom)"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::LeslieGower(_) => "leslie-gower",
            ModelSpec::Logistic(_) => "logistic",
            ModelSpec::Ricker(_) => "ricker",
            ModelSpec::Custom(_) => "custom",
        }
    }

    pub fn build_system(&self) -> Result<TriangularSystem, ConfigError> {
        match self {
            ModelSpec::LeslieGower(p) => Ok(trimap_models::leslie_gower_system(p)),
            ModelSpec::Logistic(p) => Ok(trimap_models::logistic_system(p)),
            ModelSpec::Ricker(p) => Ok(trimap_models::ricker_system(p)),
            ModelSpec::Custom(c) => c.build(),
        }
    }

    /// Default finite sampling box from the model's boundedness estimates.
    pub fn default_box(&self) -> DomainBox {
        match self {
            ModelSpec::LeslieGower(p) => trimap_models::leslie_gower::default_sample_box(p),
            ModelSpec::Logistic(p) => trimap_models::logistic::default_sample_box(p),
            ModelSpec::Ricker(p) => trimap_models::ricker::default_sample_box(p),
            ModelSpec::Custom(c) => {
                let intervals = c
                    .domain
                    .iter()
                    .map(|&[lo, hi]| (lo, if hi.is_finite() { hi } else { lo + 1.0 }))
                    .collect();
                DomainBox::new(intervals).expect("validated against NaN")
            }
        }
    }
}

impl CustomModel {
    fn validate(&self) -> Result<(), ConfigError> {
        let k = self.periods.len();
        if k == 0 {
            return Err(invalid("model.periods", "must not be empty"));
        }
        if self.domain.len() != k {
            return Err(invalid("model.domain", format!("expected {k} intervals")));
        }
        let p = trimap_core::system_period(&self.periods)?;
        if self.maps.len() != p {
            return Err(invalid(
                "model.maps",
                format!("expected {p} maps (lcm of periods), got {}", self.maps.len()),
            ));
        }
        for (n, map) in self.maps.iter().enumerate() {
            if map.coords.len() != k {
                return Err(invalid(
                    &format!("model.maps[{n}].coords"),
                    format!("expected {k} coordinate polynomials"),
                ));
            }
            for (j0, poly) in map.coords.iter().enumerate() {
                for term in &poly.terms {
                    if term.e.len() > j0 + 1 {
                        return Err(invalid(
                            &format!("model.maps[{n}].coords[{j0}]"),
                            format!(
                                "exponent list of length {} breaks triangularity (max {})",
                                term.e.len(),
                                j0 + 1
                            ),
                        ));
                    }
                    if !term.c.is_finite() {
                        return Err(invalid(
                            &format!("model.maps[{n}].coords[{j0}]"),
                            "non-finite coefficient",
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn build(&self) -> Result<TriangularSystem, ConfigError> {
        let domain = DomainBox::new(self.domain.iter().map(|&[lo, hi]| (lo, hi)).collect())?;
        let maps = self
            .maps
            .iter()
            .map(|spec| {
                let coords = spec
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(j0, poly)| build_polynomial_coord(j0 + 1, poly))
                    .collect();
                TriangularMap::new(coords, domain.clone())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TriangularSystem::new(maps, self.periods.clone())?)
    }
}

/// Compile a polynomial spec into a coordinate map with analytic partials.
fn build_polynomial_coord(index: usize, poly: &PolynomialSpec) -> CoordinateMap {
    let terms: Vec<(f64, Vec<u32>)> = poly
        .terms
        .iter()
        .map(|t| {
            let mut e = t.e.clone();
            e.resize(index, 0);
            (t.c, e)
        })
        .collect();
    let eval_terms = terms.clone();
    let eval = move |x: &[f64]| -> f64 {
        eval_terms
            .iter()
            .map(|(c, e)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(&p, &v)| v.powi(p as i32))
                    .product::<f64>()
            })
            .sum()
    };
    let partials: Vec<CoordFn> = (0..index)
        .map(|m| {
            let terms = terms.clone();
            Arc::new(move |x: &[f64]| -> f64 {
                terms
                    .iter()
                    .map(|(c, e)| {
                        if e[m] == 0 {
                            return 0.0;
                        }
                        let mut factor = c * e[m] as f64;
                        for (i, (&p, &v)) in e.iter().zip(x).enumerate() {
                            factor *= if i == m {
                                v.powi(p as i32 - 1)
                            } else {
                                v.powi(p as i32)
                            };
                        }
                        factor
                    })
                    .sum()
            }) as CoordFn
        })
        .collect();
    CoordinateMap::new(index, eval)
        .with_partials(partials)
        .expect("arity matches index")
}

/// Fully resolved run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub format: OutputFormat,
    pub seed: u64,
    pub out: Option<String>,
    pub model: ModelSpec,
    pub search_box: DomainBox,
    pub sample_box: DomainBox,
    pub sample_grid: Vec<usize>,
    pub jitter: f64,
    pub cascade: trimap_dynamics::CascadeOptions,
    pub phase: usize,
    pub orbit: Option<OrbitSection>,
    pub verify_max_iters: usize,
    pub verify_tol: f64,
    pub scan: Option<ScanSection>,
}

pub const SCHEMA_VERSION: u32 = 1;

pub fn load(path: &std::path::Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text)?;
    resolve(raw)
}

fn resolve(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    if raw.schema_version != SCHEMA_VERSION {
        return Err(invalid(
            "schema_version",
            format!("expected {SCHEMA_VERSION}, got {}", raw.schema_version),
        ));
    }
    let model = ModelSpec::from_table(raw.model)?;
    let system = model.build_system()?;
    let k = system.dimension();

    let sample = raw.sample.unwrap_or(SampleSection {
        r#box: None,
        grid: None,
        jitter: None,
    });
    let sample_box = match sample.r#box {
        Some(intervals) => {
            if intervals.len() != k {
                return Err(invalid("sample.box", format!("expected {k} intervals")));
            }
            let b = DomainBox::new(intervals.iter().map(|&[lo, hi]| (lo, hi)).collect())?;
            if !b.is_bounded() {
                return Err(invalid("sample.box", "must be bounded"));
            }
            b
        }
        None => model.default_box(),
    };
    let sample_grid = match sample.grid {
        Some(g) => {
            if g.len() != k {
                return Err(invalid("sample.grid", format!("expected {k} densities")));
            }
            if g.iter().any(|&n| n < 2) {
                return Err(invalid("sample.grid", "densities must be at least 2"));
            }
            g
        }
        None => vec![50; k],
    };
    let jitter = sample.jitter.unwrap_or(0.0);
    if !(0.0..=1.0).contains(&jitter) {
        return Err(invalid("sample.jitter", "must lie in [0, 1]"));
    }

    let solver = raw.solver.unwrap_or(SolverSection {
        r#box: None,
        grid_density: None,
        newton_tol: None,
        dedup_tol: None,
        phase: None,
    });
    let search_box = match &solver.r#box {
        Some(intervals) => {
            if intervals.len() != k {
                return Err(invalid("solver.box", format!("expected {k} intervals")));
            }
            let b = DomainBox::new(intervals.iter().map(|&[lo, hi]| (lo, hi)).collect())?;
            if !b.is_bounded() {
                return Err(invalid("solver.box", "must be bounded"));
            }
            b
        }
        None => model.default_box(),
    };
    let mut cascade = trimap_dynamics::CascadeOptions::default();
    if let Some(d) = solver.grid_density {
        if d < 2 {
            return Err(invalid("solver.grid_density", "must be at least 2"));
        }
        cascade.grid_density = d;
    }
    if let Some(t) = solver.newton_tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(invalid("solver.newton_tol", "must be positive"));
        }
        cascade.newton_tol = t;
    }
    if let Some(t) = solver.dedup_tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(invalid("solver.dedup_tol", "must be positive"));
        }
        cascade.dedup_tol = t;
    }
    let phase = solver.phase.unwrap_or(0);
    if phase >= system.period() {
        return Err(invalid(
            "solver.phase",
            format!("phase {phase} out of range for period {}", system.period()),
        ));
    }

    if let Some(orbit) = &raw.orbit {
        if orbit.start.len() != k {
            return Err(invalid("orbit.start", format!("expected {k} coordinates")));
        }
        if let Some(t) = orbit.tol {
            if !t.is_finite() || t <= 0.0 {
                return Err(invalid("orbit.tol", "must be positive"));
            }
        }
        if let Some(t) = orbit.cluster_tol {
            if !t.is_finite() || t <= 0.0 {
                return Err(invalid("orbit.cluster_tol", "must be positive"));
            }
        }
        if let Some(p) = orbit.phase {
            if p >= system.period() {
                return Err(invalid("orbit.phase", "out of range"));
            }
        }
    }

    let verify = raw.verify.unwrap_or(VerifySection {
        max_iters: None,
        tol: None,
        phase: None,
    });
    let verify_tol = verify.tol.unwrap_or(1e-6);
    if !verify_tol.is_finite() || verify_tol <= 0.0 {
        return Err(invalid("verify.tol", "must be positive"));
    }
    let verify_max_iters = verify.max_iters.unwrap_or(10_000);
    if let Some(p) = verify.phase {
        if p >= system.period() {
            return Err(invalid("verify.phase", "out of range"));
        }
    }

    if let Some(scan) = &raw.scan {
        if scan.resolution.iter().any(|&n| n < 1) {
            return Err(invalid("scan.resolution", "must be at least 1 per axis"));
        }
        for (i, [lo, hi]) in scan.ranges.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || hi < lo {
                return Err(invalid(
                    &format!("scan.ranges[{i}]"),
                    "must be a finite interval",
                ));
            }
        }
    }

    Ok(RunConfig {
        format: raw.format.unwrap_or(OutputFormat::Csv),
        seed: raw.seed.unwrap_or(0),
        out: raw.out,
        model,
        search_box,
        sample_box,
        sample_grid,
        jitter,
        cascade,
        phase: verify.phase.unwrap_or(phase),
        orbit: raw.orbit,
        verify_max_iters,
        verify_tol,
        scan: raw.scan,
    })
}
