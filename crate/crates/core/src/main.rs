//! Command-line front end: `coefficients`, `steerability`, `nonmarkov`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gausteer::config::{PartialConfig, RunConfig};
use gausteer::environment::{coefficient_trace, uniform_grid};
use gausteer::error::{Error, Result};
use gausteer::measure::{alpha_sweep, steerability_from_coefficients};
use gausteer::output;

#[derive(Parser)]
#[command(
    name = "gausteer",
    version,
    about = "Gaussian-steering backflow analysis of the quantum Brownian motion channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Damping and diffusion coefficients over the time grid
    Coefficients(CommonArgs),
    /// Steerability time trace per coupling scenario
    Steerability(CommonArgs),
    /// Non-Markovianity measure over a coupling-constant sweep
    Nonmarkov(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Bath spectral exponent: ohmic | subohmic
    #[arg(long)]
    s: Option<String>,
    /// Cutoff angular frequency
    #[arg(long = "omega-c", allow_negative_numbers = true)]
    omega_c: Option<f64>,
    /// System mode angular frequency
    #[arg(long, allow_negative_numbers = true)]
    omega0: Option<f64>,
    /// Bath temperature
    #[arg(long, allow_negative_numbers = true)]
    temperature: Option<f64>,
    /// Coupling constant (single-point commands)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Sweep lower coupling bound
    #[arg(long = "alpha-min", allow_negative_numbers = true)]
    alpha_min: Option<f64>,
    /// Sweep upper coupling bound
    #[arg(long = "alpha-max", allow_negative_numbers = true)]
    alpha_max: Option<f64>,
    /// Number of sweep points
    #[arg(long = "alpha-count")]
    alpha_count: Option<usize>,
    /// Two-mode squeezing parameter
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Coupling scenario: right | left | both | all
    #[arg(long)]
    scenario: Option<String>,
    /// Upper end of the time grid
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    /// Time grid step
    #[arg(long)]
    dt: Option<f64>,
    /// Accumulated diffusion formula: weak | exact
    #[arg(long = "delta-gamma")]
    delta_gamma: Option<String>,
    /// Use the cosh correlation decay (comparison mode)
    #[arg(long = "appendix-verbatim")]
    appendix_verbatim: bool,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value config file (flags override it)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Per-step rise threshold for backflow detection
    #[arg(long)]
    eps: Option<f64>,
}

impl CommonArgs {
    fn to_partial(&self) -> Result<PartialConfig> {
        Ok(PartialConfig {
            s: self.s.as_deref().map(str::parse).transpose()?,
            omega_c: self.omega_c,
            omega0: self.omega0,
            temperature: self.temperature,
            alpha: self.alpha,
            alpha_min: self.alpha_min,
            alpha_max: self.alpha_max,
            alpha_count: self.alpha_count,
            r: self.r,
            scenario: self.scenario.as_deref().map(str::parse).transpose()?,
            t_max: self.t_max,
            dt: self.dt,
            mode: match self.delta_gamma.as_deref() {
                None => None,
                Some("weak") => Some(gausteer::dynamics::DeltaGammaMode::WeakCoupling),
                Some("exact") => Some(gausteer::dynamics::DeltaGammaMode::Exact),
                Some(other) => {
                    return Err(Error::Config(format!(
                        "--delta-gamma must be `weak` or `exact`, got `{other}`"
                    )))
                }
            },
            appendix_verbatim: if self.appendix_verbatim { Some(true) } else { None },
            eps: self.eps,
            abs_tol: None,
            rel_tol: None,
            max_subdivisions: None,
            out: self.out.clone(),
        })
    }

    fn resolve(&self) -> Result<RunConfig> {
        let file_layer = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        file_layer.overlay(self.to_partial()?).resolve()
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn cmd_coefficients(cfg: &RunConfig) -> Result<ExitCode> {
    let grid = uniform_grid(cfg.t_max, cfg.dt)?;
    let trace = coefficient_trace(&cfg.env, cfg.probe.omega0, &grid, &cfg.quad)?;
    let csv = output::render_coefficients(cfg, &trace);
    let path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("coefficients.csv"));
    write_file(&path, &csv)?;
    println!("wrote {} rows to {}", trace.len(), path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_steerability(cfg: &RunConfig) -> Result<ExitCode> {
    if cfg.alpha_range.is_some() {
        return Err(Error::Config(
            "steerability runs at a single alpha; use --alpha, not --alpha-min/--alpha-max".into(),
        ));
    }
    let grid = uniform_grid(cfg.t_max, cfg.dt)?;
    let coeffs = coefficient_trace(&cfg.env, cfg.probe.omega0, &grid, &cfg.quad)?;
    let traces = cfg
        .scenario
        .scenarios()
        .into_iter()
        .map(|scenario| {
            steerability_from_coefficients(cfg.probe.r, &coeffs, scenario, cfg.mode, cfg.convention)
        })
        .collect::<Result<Vec<_>>>()?;
    let csv = output::render_steerability(cfg, &traces);
    let path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("steerability.csv"));
    write_file(&path, &csv)?;
    println!("wrote {} scenario trace(s) to {}", traces.len(), path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_nonmarkov(cfg: &RunConfig) -> Result<ExitCode> {
    let range = cfg.alpha_range.unwrap_or(gausteer::config::AlphaRange {
        min: 0.05,
        max: 0.3,
        count: 6,
    });
    let grid = uniform_grid(cfg.t_max, cfg.dt)?;
    let cells = alpha_sweep(
        &cfg.probe,
        &cfg.env,
        &range.values(),
        &grid,
        &cfg.quad,
        cfg.mode,
        cfg.convention,
        cfg.eps,
    )?;
    let mut cfg_echo = cfg.clone();
    cfg_echo.alpha_range = Some(range);
    let rendered = output::render_nonmarkov(&cfg_echo, &cells);
    let path = cfg.out.clone().unwrap_or_else(|| PathBuf::from("nonmarkov.csv"));
    let sidecar = path.with_extension("intervals.csv");
    write_file(&path, &rendered.table)?;
    write_file(&sidecar, &rendered.intervals)?;
    print!("{}", rendered.summary);
    println!("wrote {} and {}", path.display(), sidecar.display());
    Ok(if rendered.any_error { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Coefficients(args) => cmd_coefficients(&args.resolve()?),
        Command::Steerability(args) => cmd_steerability(&args.resolve()?),
        Command::Nonmarkov(args) => cmd_nonmarkov(&args.resolve()?),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
