//! CSV rendering for the CLI.
//!
//! Every file starts with a `#`-prefixed comment header echoing the full
//! effective configuration and the tool version. Floats are written with
//! Rust's shortest round-trip formatting, so identical configurations yield
//! byte-identical files.

use std::fmt::Write as _;

use crate::config::{RunConfig, ScenarioSelection};
use crate::dynamics::{CorrelationConvention, DeltaGammaMode};
use crate::environment::CoefficientTrace;
use crate::measure::{SteerabilityTrace, SweepCell};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn scenario_name(sel: ScenarioSelection) -> &'static str {
    match sel {
        ScenarioSelection::All => "all",
        ScenarioSelection::One(s) => s.label(),
    }
}

fn mode_name(mode: DeltaGammaMode) -> &'static str {
    match mode {
        DeltaGammaMode::WeakCoupling => "weak",
        DeltaGammaMode::Exact => "exact",
    }
}

/// Comment header echoing the effective configuration.
pub fn config_header(cfg: &RunConfig, subcommand: &str) -> String {
    let mut h = String::new();
    let _ = writeln!(h, "# gausteer v{VERSION}");
    let _ = writeln!(h, "# subcommand = {subcommand}");
    let _ = writeln!(h, "# s = {}", cfg.env.s);
    let _ = writeln!(h, "# omega_c = {}", cfg.env.omega_c);
    let _ = writeln!(h, "# omega0 = {}", cfg.probe.omega0);
    let _ = writeln!(h, "# temperature = {}", cfg.env.temperature);
    let _ = writeln!(h, "# alpha = {}", cfg.env.alpha);
    if let Some(r) = &cfg.alpha_range {
        let _ = writeln!(h, "# alpha_min = {}", r.min);
        let _ = writeln!(h, "# alpha_max = {}", r.max);
        let _ = writeln!(h, "# alpha_count = {}", r.count);
    }
    let _ = writeln!(h, "# r = {}", cfg.probe.r);
    let _ = writeln!(h, "# scenario = {}", scenario_name(cfg.scenario));
    let _ = writeln!(h, "# t_max = {}", cfg.t_max);
    let _ = writeln!(h, "# dt = {}", cfg.dt);
    let _ = writeln!(h, "# delta_gamma = {}", mode_name(cfg.mode));
    let _ = writeln!(
        h,
        "# appendix_verbatim = {}",
        cfg.convention == CorrelationConvention::CoshCorrelation
    );
    let _ = writeln!(h, "# eps = {}", cfg.eps);
    h
}

/// `t,gamma,delta,big_gamma,delta_gamma,method_gamma,method_delta` rows.
pub fn render_coefficients(cfg: &RunConfig, trace: &CoefficientTrace) -> String {
    let mut out = config_header(cfg, "coefficients");
    out.push_str("t,gamma,delta,big_gamma,delta_gamma,method_gamma,method_delta\n");
    let dg = match cfg.mode {
        DeltaGammaMode::WeakCoupling => &trace.delta_gamma_weak,
        DeltaGammaMode::Exact => &trace.delta_gamma_exact,
    };
    for i in 0..trace.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            trace.times[i],
            trace.gamma[i],
            trace.delta[i],
            trace.big_gamma[i],
            dg[i],
            trace.method_gamma,
            trace.method_delta
        );
    }
    out
}

/// `t,a,b,c,S,scenario` rows, long format: requested scenarios stacked.
pub fn render_steerability(cfg: &RunConfig, traces: &[SteerabilityTrace]) -> String {
    let mut out = config_header(cfg, "steerability");
    out.push_str("t,a,b,c,S,scenario\n");
    for trace in traces {
        for i in 0..trace.times.len() {
            let cm = &trace.abc[i];
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                trace.times[i],
                cm.a,
                cm.b,
                cm.c,
                trace.s_values[i],
                trace.scenario.label()
            );
        }
    }
    out
}

/// Rendered sweep output: the measure table, the intervals sidecar, a
/// human-readable summary, and whether any cell failed.
pub struct NonmarkovOutput {
    pub table: String,
    pub intervals: String,
    pub summary: String,
    pub any_error: bool,
}

/// `alpha,N_right,N_left,N_both,error` plus the
/// `alpha,scenario,t_start,t_end,rise` sidecar.
///
/// Cells are expected alpha-major in the fixed right/left/both order, as
/// produced by `alpha_sweep`.
pub fn render_nonmarkov(cfg: &RunConfig, cells: &[SweepCell]) -> NonmarkovOutput {
    let mut table = config_header(cfg, "nonmarkov");
    table.push_str("alpha,N_right,N_left,N_both,error\n");
    let mut intervals = config_header(cfg, "nonmarkov-intervals");
    intervals.push_str("alpha,scenario,t_start,t_end,rise\n");
    let mut any_error = false;
    // (max N, alpha at max) per scenario column
    let mut best: [(f64, f64); 3] = [(f64::NEG_INFINITY, f64::NAN); 3];

    for row in cells.chunks(3) {
        let alpha = row[0].alpha;
        let mut values = [String::new(), String::new(), String::new()];
        let mut errors = Vec::new();
        for (k, cell) in row.iter().enumerate() {
            match &cell.outcome {
                Ok(res) => {
                    values[k] = format!("{}", res.measure);
                    if res.measure > best[k].0 {
                        best[k] = (res.measure, alpha);
                    }
                    for iv in &res.intervals {
                        let _ = writeln!(
                            intervals,
                            "{},{},{},{},{}",
                            alpha,
                            cell.scenario.label(),
                            iv.t_start,
                            iv.t_end,
                            iv.rise
                        );
                    }
                }
                Err(e) => {
                    any_error = true;
                    errors.push(format!("{}: {}", cell.scenario.label(), e));
                }
            }
        }
        let _ = writeln!(
            table,
            "{},{},{},{},{}",
            alpha,
            values[0],
            values[1],
            values[2],
            errors.join("; ")
        );
    }

    let mut summary = String::new();
    for (k, label) in ["N_right", "N_left", "N_both"].iter().enumerate() {
        if best[k].0.is_finite() {
            let _ = writeln!(summary, "{label}: max {} at alpha = {}", best[k].0, best[k].1);
        }
    }
    if any_error {
        summary.push_str("some sweep cells failed; see the error column\n");
    }
    NonmarkovOutput { table, intervals, summary, any_error }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PartialConfig;

    #[test]
    fn header_echoes_defaults() {
        let cfg = PartialConfig::default().resolve().unwrap();
        let h = config_header(&cfg, "coefficients");
        assert!(h.lines().all(|l| l.starts_with('#')));
        assert!(h.contains("# omega_c = 1\n"));
        assert!(h.contains("# temperature = 1.5\n"));
        assert!(h.contains("# s = ohmic\n"));
        assert!(h.contains(&format!("# gausteer v{VERSION}")));
    }

    #[test]
    fn float_formatting_round_trips() {
        let x = 0.1 + 0.2;
        let s = format!("{x}");
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
