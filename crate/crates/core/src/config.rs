//! Run configuration: defaults, flat key=value config files, and the
//! flags-over-file-over-defaults precedence used by the CLI.

use std::path::PathBuf;
use std::str::FromStr;

use crate::dynamics::{CorrelationConvention, CouplingScenario, DeltaGammaMode};
use crate::environment::{EnvironmentSpec, Ohmicity};
use crate::error::{Error, Result};
use crate::gaussian::ProbeSpec;
use crate::quad::QuadratureConfig;

/// Which scenarios a command should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioSelection {
    One(CouplingScenario),
    All,
}

impl ScenarioSelection {
    pub fn scenarios(self) -> Vec<CouplingScenario> {
        match self {
            ScenarioSelection::One(s) => vec![s],
            ScenarioSelection::All => CouplingScenario::ALL.to_vec(),
        }
    }
}

impl FromStr for ScenarioSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(ScenarioSelection::One(CouplingScenario::SteeringModeOnly)),
            "left" => Ok(ScenarioSelection::One(CouplingScenario::SteeredModeOnly)),
            "both" => Ok(ScenarioSelection::One(CouplingScenario::BothModes)),
            "all" => Ok(ScenarioSelection::All),
            other => Err(Error::Config(format!(
                "scenario must be one of right|left|both|all, got `{other}`"
            ))),
        }
    }
}

fn parse_delta_gamma(s: &str) -> Result<DeltaGammaMode> {
    match s {
        "weak" => Ok(DeltaGammaMode::WeakCoupling),
        "exact" => Ok(DeltaGammaMode::Exact),
        other => Err(Error::Config(format!(
            "delta_gamma must be `weak` or `exact`, got `{other}`"
        ))),
    }
}

/// Coupling-constant range for sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AlphaRange {
    pub fn validate(&self) -> Result<()> {
        if !(self.min >= 0.0) || !self.max.is_finite() {
            return Err(Error::Config(format!(
                "alpha range must be finite and nonnegative, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.min == self.max {
            if self.count < 1 {
                return Err(Error::Config("alpha_count must be >= 1".into()));
            }
            return Ok(());
        }
        if self.min > self.max {
            return Err(Error::Config(format!(
                "alpha_min must be <= alpha_max, got {} > {}",
                self.min, self.max
            )));
        }
        if self.count < 2 {
            return Err(Error::Config(format!(
                "alpha_count must be >= 2 for a range, got {}",
                self.count
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.min == self.max || self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + i as f64 * step).collect()
    }
}

/// Fully resolved configuration for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub env: EnvironmentSpec,
    pub probe: ProbeSpec,
    pub scenario: ScenarioSelection,
    pub alpha_range: Option<AlphaRange>,
    pub t_max: f64,
    pub dt: f64,
    pub mode: DeltaGammaMode,
    pub convention: CorrelationConvention,
    pub eps: f64,
    pub quad: QuadratureConfig,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.env.validate()?;
        self.probe.validate()?;
        self.quad.validate()?;
        if let Some(r) = &self.alpha_range {
            r.validate()?;
        }
        if !(self.t_max > 0.0) || !(self.dt > 0.0) {
            return Err(Error::Config(format!(
                "t_max and dt must be positive, got t_max = {}, dt = {}",
                self.t_max, self.dt
            )));
        }
        if !(self.eps >= 0.0) {
            return Err(Error::Config(format!("eps must be >= 0, got {}", self.eps)));
        }
        Ok(())
    }
}

/// Unresolved configuration layer; `None` means "not set at this layer".
#[derive(Debug, Clone, Default)]
pub struct PartialConfig {
    pub s: Option<Ohmicity>,
    pub omega_c: Option<f64>,
    pub omega0: Option<f64>,
    pub temperature: Option<f64>,
    pub alpha: Option<f64>,
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub alpha_count: Option<usize>,
    pub r: Option<f64>,
    pub scenario: Option<ScenarioSelection>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub mode: Option<DeltaGammaMode>,
    pub appendix_verbatim: Option<bool>,
    pub eps: Option<f64>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub out: Option<PathBuf>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for config key `{key}`")))
}

impl PartialConfig {
    /// Parses a flat `key=value` config file; `#` starts a comment. Unknown
    /// keys are hard errors.
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut cfg = PartialConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "{}:{}: expected key=value, got `{line}`",
                    path.display(),
                    lineno + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "s" => cfg.s = Some(value.parse()?),
                "omega_c" => cfg.omega_c = Some(parse_value(key, value)?),
                "omega0" => cfg.omega0 = Some(parse_value(key, value)?),
                "temperature" => cfg.temperature = Some(parse_value(key, value)?),
                "alpha" => cfg.alpha = Some(parse_value(key, value)?),
                "alpha_min" => cfg.alpha_min = Some(parse_value(key, value)?),
                "alpha_max" => cfg.alpha_max = Some(parse_value(key, value)?),
                "alpha_count" => cfg.alpha_count = Some(parse_value(key, value)?),
                "r" => cfg.r = Some(parse_value(key, value)?),
                "scenario" => cfg.scenario = Some(value.parse()?),
                "t_max" => cfg.t_max = Some(parse_value(key, value)?),
                "dt" => cfg.dt = Some(parse_value(key, value)?),
                "delta_gamma" => cfg.mode = Some(parse_delta_gamma(value)?),
                "appendix_verbatim" => cfg.appendix_verbatim = Some(parse_value(key, value)?),
                "eps" => cfg.eps = Some(parse_value(key, value)?),
                "abs_tol" => cfg.abs_tol = Some(parse_value(key, value)?),
                "rel_tol" => cfg.rel_tol = Some(parse_value(key, value)?),
                "max_subdivisions" => cfg.max_subdivisions = Some(parse_value(key, value)?),
                "out" => cfg.out = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!(
                        "{}:{}: unknown config key `{other}`",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    /// Returns `self` with every field set in `over` replaced by it.
    pub fn overlay(mut self, over: PartialConfig) -> PartialConfig {
        macro_rules! take {
            ($($f:ident),*) => { $( if over.$f.is_some() { self.$f = over.$f; } )* };
        }
        take!(
            s, omega_c, omega0, temperature, alpha, alpha_min, alpha_max, alpha_count, r,
            scenario, t_max, dt, mode, appendix_verbatim, eps, abs_tol, rel_tol,
            max_subdivisions, out
        );
        self
    }

    /// Fills the remaining fields with defaults and validates.
    ///
    /// Defaults: Ohmic bath with omega_c = 1, T = 1.5, alpha = 0.2; probe
    /// omega0 = 7, r = 2; all scenarios; grid step 1e-3 up to t_max = 5
    /// (Ohmic) or 8 (sub-Ohmic, whose backflow oscillations persist longer);
    /// weak-coupling accumulated diffusion; rise threshold 1e-9.
    pub fn resolve(self) -> Result<RunConfig> {
        let s = self.s.unwrap_or(Ohmicity::Ohmic);
        let alpha_range = match (self.alpha_min, self.alpha_max, self.alpha_count) {
            (None, None, None) => None,
            (Some(min), Some(max), count) => Some(AlphaRange { min, max, count: count.unwrap_or(6) }),
            _ => {
                return Err(Error::Config(
                    "alpha_min and alpha_max must be given together".into(),
                ))
            }
        };
        let defaults = QuadratureConfig::default();
        let cfg = RunConfig {
            env: EnvironmentSpec {
                s,
                omega_c: self.omega_c.unwrap_or(1.0),
                temperature: self.temperature.unwrap_or(1.5),
                alpha: self.alpha.unwrap_or(0.2),
            },
            probe: ProbeSpec {
                omega0: self.omega0.unwrap_or(7.0),
                r: self.r.unwrap_or(2.0),
            },
            scenario: self.scenario.unwrap_or(ScenarioSelection::All),
            alpha_range,
            t_max: self.t_max.unwrap_or(match s {
                Ohmicity::Ohmic => 5.0,
                Ohmicity::SubOhmic => 8.0,
            }),
            dt: self.dt.unwrap_or(1e-3),
            mode: self.mode.unwrap_or_default(),
            convention: if self.appendix_verbatim.unwrap_or(false) {
                CorrelationConvention::CoshCorrelation
            } else {
                CorrelationConvention::SinhCorrelation
            },
            eps: self.eps.unwrap_or(crate::measure::DEFAULT_EPS),
            quad: QuadratureConfig {
                abs_tol: self.abs_tol.unwrap_or(defaults.abs_tol),
                rel_tol: self.rel_tol.unwrap_or(defaults.rel_tol),
                max_subdivisions: self.max_subdivisions.unwrap_or(defaults.max_subdivisions),
                ..defaults
            },
            out: self.out,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_are_the_reference_parameters() {
        let cfg = PartialConfig::default().resolve().unwrap();
        assert_eq!(cfg.env.s, Ohmicity::Ohmic);
        assert_eq!(cfg.env.omega_c, 1.0);
        assert_eq!(cfg.env.temperature, 1.5);
        assert_eq!(cfg.probe.omega0, 7.0);
        assert_eq!(cfg.probe.r, 2.0);
        assert_eq!(cfg.t_max, 5.0);
        assert_eq!(cfg.dt, 1e-3);
        assert_eq!(cfg.mode, DeltaGammaMode::WeakCoupling);
    }

    #[test]
    fn subohmic_extends_default_grid() {
        let cfg = PartialConfig { s: Some(Ohmicity::SubOhmic), ..Default::default() }
            .resolve()
            .unwrap();
        assert_eq!(cfg.t_max, 8.0);
    }

    #[test]
    fn file_values_override_defaults_and_flags_override_file() {
        let dir = std::env::temp_dir().join(format!("gausteer-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# comment\ntemperature = 100\nr = 3  # trailing comment").unwrap();
        drop(f);

        let file = PartialConfig::from_file(&path).unwrap();
        let flags = PartialConfig { temperature: Some(1.5), ..Default::default() };
        let cfg = file.overlay(flags).resolve().unwrap();
        assert_eq!(cfg.env.temperature, 1.5);
        assert_eq!(cfg.probe.r, 3.0);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn unknown_key_is_a_hard_error() {
        let dir = std::env::temp_dir().join(format!("gausteer-cfg-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        std::fs::write(&path, "tempreature = 1.5\n").unwrap();
        let err = PartialConfig::from_file(&path).unwrap_err();
        assert!(err.to_string().contains("unknown config key"), "{err}");
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn negative_temperature_names_the_field() {
        let cfg = PartialConfig { temperature: Some(-1.0), ..Default::default() }.resolve();
        let err = cfg.unwrap_err().to_string();
        assert!(err.contains("temperature"), "{err}");
    }

    #[test]
    fn alpha_range_rules() {
        assert!(AlphaRange { min: 0.0, max: 0.0, count: 1 }.validate().is_ok());
        assert!(AlphaRange { min: 0.1, max: 0.3, count: 1 }.validate().is_err());
        assert!(AlphaRange { min: 0.3, max: 0.1, count: 5 }.validate().is_err());
        let vals = AlphaRange { min: 0.1, max: 0.3, count: 3 }.values();
        assert_eq!(vals.len(), 3);
        assert!((vals[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn scenario_parsing() {
        assert_eq!(
            "right".parse::<ScenarioSelection>().unwrap(),
            ScenarioSelection::One(CouplingScenario::SteeringModeOnly)
        );
        assert_eq!("all".parse::<ScenarioSelection>().unwrap(), ScenarioSelection::All);
        assert!("sideways".parse::<ScenarioSelection>().is_err());
    }
}
