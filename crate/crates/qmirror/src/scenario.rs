//! Scenario configuration and execution: build a compound mode from
//! laboratory inputs, classify it, and run parameter sweeps.
//!
//! Configs are versioned JSON (`schema: 1`); complex numbers are
//! `[re, im]` pairs. Everything downstream is deterministic: the same
//! config yields byte-identical JSON and CSV output.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::entangle::{
    build_fully_reflecting, build_semitransparent, schmidt_closed, CompoundMode, NormalForm,
};
use crate::error::{Error, Result};
use crate::observables::{classify, thermal_spread, RegimeReport};
use crate::units::ConstantsTable;
use crate::wavepacket::GaussianPacket;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MirrorKind {
    Semitransparent,
    FullyReflecting,
}

/// Mirror mass, either in laboratory grams or directly in sec^-1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MassSpec {
    Grams(f64),
    Natural(f64),
}

/// How the mirror momentum spread is fixed. Exactly one variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DpSpec {
    /// Explicit spread in sec^-1.
    Explicit(f64),
    /// Thermal spread sqrt(2 M T) at the given temperature.
    Thermal { t_kelvin: f64 },
    /// Minimum-uncertainty packet of the given initial position spread
    /// (sec): dp = 1 / (2 dx0).
    MinimumUncertainty { dx0: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// One of "kappa", "dp", "temperature".
    pub parameter: SweepParameter,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub log_scale: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Kappa,
    Dp,
    Temperature,
}

fn default_geometry() -> f64 {
    2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub schema: u32,
    pub mirror_kind: MirrorKind,
    /// Complex amplitudes as [re, im].
    pub c1: [f64; 2],
    pub c2: [f64; 2],
    pub wavelength_cm: f64,
    pub mirror_mass: MassSpec,
    pub dp_spec: DpSpec,
    /// Recoil geometry factor multiplying k (2 at normal incidence).
    #[serde(default = "default_geometry")]
    pub geometry: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        if self.schema != 1 {
            return Err(Error::config(format!(
                "unsupported schema version {}",
                self.schema
            )));
        }
        let norm = self.c1[0] * self.c1[0]
            + self.c1[1] * self.c1[1]
            + self.c2[0] * self.c2[0]
            + self.c2[1] * self.c2[1];
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::config(format!(
                "|c1|^2 + |c2|^2 = {norm}, must be 1 within 1e-9"
            )));
        }
        if !(self.wavelength_cm.is_finite() && self.wavelength_cm > 0.0) {
            return Err(Error::config("wavelength_cm must be positive"));
        }
        if !(self.geometry >= 1.0 && self.geometry <= 2.0) {
            return Err(Error::config("geometry factor must lie in [1, 2]"));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.points < 2 || sweep.points > 1_000_000 {
                return Err(Error::config("sweep points must lie in [2, 1000000]"));
            }
            if !(sweep.min > 0.0 && sweep.max > sweep.min) {
                return Err(Error::config("sweep range must satisfy 0 < min < max"));
            }
        }
        Ok(())
    }

    fn amplitudes(&self) -> (Complex64, Complex64) {
        // Renormalize the (already validated) amplitudes to machine precision
        // so CompoundMode's tighter 1e-12 check always passes.
        let c1 = Complex64::new(self.c1[0], self.c1[1]);
        let c2 = Complex64::new(self.c2[0], self.c2[1]);
        let norm = (c1.norm_sqr() + c2.norm_sqr()).sqrt();
        (c1 / norm, c2 / norm)
    }
}

/// Scenario quantities resolved into natural units.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedScenario {
    pub k: f64,
    pub mass: f64,
    pub dp: f64,
}

/// Convert the laboratory-unit config fields into natural units.
pub fn resolve(config: &ScenarioConfig, constants: &ConstantsTable) -> Result<ResolvedScenario> {
    let k = constants.wavelength_to_wavenumber(config.wavelength_cm)?.value;
    let mass = match config.mirror_mass {
        MassSpec::Grams(g) => constants.grams_to_inverse_seconds(g)?.value,
        MassSpec::Natural(m) => {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::config("natural mirror mass must be positive"));
            }
            m
        }
    };
    let dp = match config.dp_spec {
        DpSpec::Explicit(dp) => {
            if !(dp.is_finite() && dp > 0.0) {
                return Err(Error::config("explicit dp must be positive"));
            }
            dp
        }
        DpSpec::Thermal { t_kelvin } => {
            let t = constants.kelvin_to_inverse_seconds(t_kelvin)?.value;
            let dp = thermal_spread(mass, t);
            if dp <= 0.0 {
                return Err(Error::config("thermal dp vanishes at T = 0"));
            }
            dp
        }
        DpSpec::MinimumUncertainty { dx0 } => {
            if !(dx0.is_finite() && dx0 > 0.0) {
                return Err(Error::config("dx0 must be positive"));
            }
            0.5 / dx0
        }
    };
    Ok(ResolvedScenario { k, mass, dp })
}

/// Assemble the outgoing compound mode for a resolved scenario. The
/// incident mirror packet is minimum-uncertainty, at rest, centered at
/// the origin.
pub fn build_mode(config: &ScenarioConfig, resolved: &ResolvedScenario) -> Result<CompoundMode> {
    let (c1, c2) = config.amplitudes();
    let phi_in = GaussianPacket::minimum_uncertainty(0.0, resolved.dp, 0.0, resolved.mass)?;
    match config.mirror_kind {
        MirrorKind::Semitransparent => {
            build_semitransparent(c1, c2, &phi_in, resolved.k, config.geometry)
        }
        MirrorKind::FullyReflecting => {
            build_fully_reflecting(c1, c2, &phi_in, resolved.k, config.geometry)
        }
    }
}

/// Report plus normal-form dump for a single scenario.
pub struct ScenarioOutput {
    pub resolved: ResolvedScenario,
    pub report: RegimeReport,
    pub normal_form: NormalForm,
}

impl ScenarioOutput {
    pub fn to_json(&self) -> Value {
        json!({
            "resolved": {
                "k": self.resolved.k,
                "mass": self.resolved.mass,
                "dp": self.resolved.dp,
            },
            "report": serde_json::to_value(self.report).expect("report serializes"),
            "normal_form": self.normal_form.to_json(),
        })
    }
}

pub fn run_scenario(config: &ScenarioConfig, constants: &ConstantsTable) -> Result<ScenarioOutput> {
    let resolved = resolve(config, constants)?;
    let mode = build_mode(config, &resolved)?;
    let report = classify(&mode, resolved.k)?;
    let normal_form = schmidt_closed(&mode)?;
    Ok(ScenarioOutput { resolved, report, normal_form })
}

/// Evaluate the sweep and return one report per point, in sweep order.
pub fn run_sweep(
    config: &ScenarioConfig,
    constants: &ConstantsTable,
) -> Result<Vec<RegimeReport>> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::config("config has no sweep block"))?;
    let base = resolve(config, constants)?;
    let mut reports = Vec::with_capacity(sweep.points);
    for i in 0..sweep.points {
        let fraction = i as f64 / (sweep.points as f64 - 1.0);
        let value = if sweep.log_scale {
            sweep.min * (sweep.max / sweep.min).powf(fraction)
        } else {
            sweep.min + (sweep.max - sweep.min) * fraction
        };
        let dp = match sweep.parameter {
            SweepParameter::Kappa => value * base.k,
            SweepParameter::Dp => value,
            SweepParameter::Temperature => {
                let t = constants.kelvin_to_inverse_seconds(value)?.value;
                thermal_spread(base.mass, t)
            }
        };
        let resolved = ResolvedScenario { dp, ..base };
        let mode = build_mode(config, &resolved)?;
        reports.push(classify(&mode, resolved.k)?);
    }
    Ok(reports)
}

/// Sweep results as a CSV document with the fixed RegimeReport header.
pub fn sweep_csv(config: &ScenarioConfig, constants: &ConstantsTable) -> Result<String> {
    let reports = run_sweep(config, constants)?;
    let mut out = String::from(RegimeReport::CSV_HEADER);
    out.push('\n');
    for report in reports {
        out.push_str(&report.csv_row());
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::CaseLabel;

    fn actual_mirror_json() -> String {
        r#"{
            "schema": 1,
            "mirror_kind": "semitransparent",
            "c1": [0.7071067811865476, 0.0],
            "c2": [0.7071067811865476, 0.0],
            "wavelength_cm": 5e-5,
            "mirror_mass": {"natural": 2.5e31},
            "dp_spec": {"thermal": {"t_kelvin": 300.0}}
        }"#
        .to_string()
    }

    #[test]
    fn actual_mirror_is_case_i() {
        let config = ScenarioConfig::from_json(&actual_mirror_json()).unwrap();
        let out = run_scenario(&config, &ConstantsTable::default()).unwrap();
        assert_eq!(out.report.case_label, CaseLabel::CaseINoBreakdown);
        assert!(out.report.visibility >= 1.0 - 1e-6);
        assert!(out.report.kappa > 1e6);
    }

    #[test]
    fn dirac_limit_is_case_ii() {
        let config = ScenarioConfig::from_json(
            r#"{
                "schema": 1,
                "mirror_kind": "fully_reflecting",
                "c1": [0.7071067811865476, 0.0],
                "c2": [0.7071067811865476, 0.0],
                "wavelength_cm": 5e-5,
                "mirror_mass": {"natural": 2.5e31},
                "dp_spec": {"explicit": 3.7673031346177066e12}
            }"#,
        )
        .unwrap();
        let out = run_scenario(&config, &ConstantsTable::default()).unwrap();
        assert_eq!(out.report.case_label, CaseLabel::CaseIIBreakdown);
        assert!(out.report.visibility <= 1e-3);
    }

    #[test]
    fn malformed_json_is_config_error() {
        match ScenarioConfig::from_json("{ not json") {
            Err(Error::Config(_)) => {}
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn bad_normalization_rejected() {
        let text = actual_mirror_json().replace("0.7071067811865476, 0.0],\n            \"c2", "0.9, 0.0],\n            \"c2");
        assert!(ScenarioConfig::from_json(&text).is_err());
    }

    #[test]
    fn schema_version_checked() {
        let text = actual_mirror_json().replace("\"schema\": 1", "\"schema\": 2");
        assert!(ScenarioConfig::from_json(&text).is_err());
    }

    #[test]
    fn kappa_sweep_monotone_visibility() {
        let mut config = ScenarioConfig::from_json(&actual_mirror_json()).unwrap();
        config.sweep = Some(SweepSpec {
            parameter: SweepParameter::Kappa,
            min: 1e-2,
            max: 1e2,
            points: 101,
            log_scale: true,
        });
        let reports = run_sweep(&config, &ConstantsTable::default()).unwrap();
        assert_eq!(reports.len(), 101);
        assert!(reports[0].visibility <= 1e-8);
        assert!(reports[100].visibility >= 0.99);
        for pair in reports.windows(2) {
            // Strict once we're out of the subnormal-underflow floor.
            if pair[0].visibility > 1e-300 {
                assert!(pair[1].visibility > pair[0].visibility);
            } else {
                assert!(pair[1].visibility >= pair[0].visibility);
            }
        }
    }

    #[test]
    fn two_point_sweep_row_count() {
        let mut config = ScenarioConfig::from_json(&actual_mirror_json()).unwrap();
        config.sweep = Some(SweepSpec {
            parameter: SweepParameter::Dp,
            min: 1e12,
            max: 1e13,
            points: 2,
            log_scale: false,
        });
        let csv = sweep_csv(&config, &ConstantsTable::default()).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], RegimeReport::CSV_HEADER);
    }

    #[test]
    fn temperature_sweep_visibility_rises_with_temperature() {
        // Hotter mirror -> larger thermal dp -> larger kappa -> case I.
        let mut config = ScenarioConfig::from_json(&actual_mirror_json()).unwrap();
        // Tiny mirror so the thermal kappa actually crosses the transition.
        config.mirror_mass = MassSpec::Natural(1e18);
        config.sweep = Some(SweepSpec {
            parameter: SweepParameter::Temperature,
            min: 1e-3,
            max: 1e6,
            points: 25,
            log_scale: true,
        });
        let reports = run_sweep(&config, &ConstantsTable::default()).unwrap();
        for pair in reports.windows(2) {
            assert!(pair[1].visibility >= pair[0].visibility);
        }
        assert!(reports[0].visibility <= 1e-8);
        assert!(reports.last().unwrap().visibility >= 0.99);
    }

    #[test]
    fn deterministic_output() {
        let config = ScenarioConfig::from_json(&actual_mirror_json()).unwrap();
        let constants = ConstantsTable::default();
        let a = run_scenario(&config, &constants).unwrap().to_json().to_string();
        let b = run_scenario(&config, &constants).unwrap().to_json().to_string();
        assert_eq!(a, b);
    }
}
