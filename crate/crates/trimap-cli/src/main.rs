//! trimap: analysis of p-periodic non-autonomous triangular maps.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trimap_cli::config::{self, OutputFormat, RunConfig};
use trimap_cli::{commands, CliError};

#[derive(Parser)]
#[command(name = "trimap")]
#[command(about = "Periodic triangular maps: orbits, cycles, spectra, and global dynamics")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate one orbit and estimate its omega-limit set
    Simulate(CommonArgs),
    /// Locate and classify the cycles of the full-period composition
    Analyze(CommonArgs),
    /// Raster stability/reality predicates over a 2D parameter rectangle
    RegionScan(CommonArgs),
    /// Test the period-2 criterion and sample basins of attraction
    VerifyGlobal(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// TOML run configuration
    #[arg(long)]
    config: PathBuf,

    /// Output path (defaults to the config's `out`, then stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format override
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,

    /// Seed override for sample jitter
    #[arg(long)]
    seed: Option<u64>,

    /// Grid override: sample densities (verify-global), scan resolution
    /// (region-scan), or cascade density (analyze)
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<usize>>,

    /// Iteration cap override for basin sampling
    #[arg(long)]
    max_iters: Option<usize>,

    /// Convergence tolerance override for basin sampling
    #[arg(long)]
    tol: Option<f64>,
}

fn apply_overrides(cfg: &mut RunConfig, args: &CommonArgs, command: &Command) {
    if let Some(format) = args.format {
        cfg.format = format;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &args.out {
        cfg.out = Some(out.display().to_string());
    }
    if let Some(max_iters) = args.max_iters {
        cfg.verify_max_iters = max_iters;
    }
    if let Some(tol) = args.tol {
        cfg.verify_tol = tol;
    }
    if let Some(grid) = &args.grid {
        match command {
            Command::VerifyGlobal(_) => {
                if grid.len() == cfg.sample_grid.len() {
                    cfg.sample_grid = grid.clone();
                } else if grid.len() == 1 {
                    cfg.sample_grid = vec![grid[0]; cfg.sample_grid.len()];
                }
            }
            Command::RegionScan(_) => {
                if let Some(scan) = &mut cfg.scan {
                    if grid.len() == 2 {
                        scan.resolution = [grid[0], grid[1]];
                    } else if grid.len() == 1 {
                        scan.resolution = [grid[0]; 2];
                    }
                }
            }
            _ => {
                if let Some(&d) = grid.first() {
                    cfg.cascade.grid_density = d;
                }
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let args = match &cli.command {
        Command::Simulate(a) | Command::Analyze(a) | Command::RegionScan(a)
        | Command::VerifyGlobal(a) => a,
    };
    let mut cfg = config::load(&args.config)?;
    apply_overrides(&mut cfg, args, &cli.command);
    if let Some(tol) = args.tol {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(CliError::BadRequest(format!(
                "--tol must be positive, got {tol}"
            )));
        }
    }

    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    };

    match &cli.command {
        Command::Simulate(_) => {
            commands::simulate::run(&cfg, &mut sink)?;
            Ok(0)
        }
        Command::Analyze(_) => {
            commands::analyze::run(&cfg, &mut sink)?;
            Ok(0)
        }
        Command::RegionScan(_) => {
            commands::region_scan::run(&cfg, &mut sink)?;
            Ok(0)
        }
        Command::VerifyGlobal(_) => {
            let verdict = commands::verify_global::run(&cfg, &mut sink)?;
            Ok(match verdict {
                commands::verify_global::Verdict::CriterionSatisfied => 0,
                commands::verify_global::Verdict::CriterionViolated => 4,
                commands::verify_global::Verdict::Inconclusive => 5,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
