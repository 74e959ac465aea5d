//! Natural-unit (hbar = c = 1) conversions between laboratory units and
//! inverse seconds.
//!
//! In this system mass, temperature, momentum, and energy are all measured
//! in sec^-1 and lengths in sec. Only the handful of conversions the
//! mirror-mass and thermal estimates need are provided; this is not a
//! general unit library.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// What a natural-unit value measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    Mass,
    Temperature,
    Momentum,
    Energy,
    /// Measured in sec, not sec^-1.
    Length,
    Wavenumber,
}

/// A value in the hbar = c = 1 unit system (sec^-1, or sec for `Length`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaturalQuantity {
    pub value: f64,
    pub kind: Kind,
}

impl NaturalQuantity {
    pub fn new(value: f64, kind: Kind) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain("natural quantity must be finite"));
        }
        let positive_only = matches!(kind, Kind::Mass | Kind::Temperature | Kind::Wavenumber);
        if positive_only && value <= 0.0 {
            return Err(Error::domain(format!(
                "{kind:?} must be positive, got {value}"
            )));
        }
        Ok(NaturalQuantity { value, kind })
    }
}

/// CODATA values of the constants entering the conversions, in SI units.
///
/// Immutable after construction; overridable from a JSON file for testing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsTable {
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Boltzmann constant (J/K).
    pub kb: f64,
}

impl Default for ConstantsTable {
    fn default() -> Self {
        ConstantsTable {
            hbar: 1.054_571_817e-34,
            c: 2.997_924_58e8,
            kb: 1.380_649e-23,
        }
    }
}

impl ConstantsTable {
    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let table: ConstantsTable = serde_json::from_str(&text)?;
        if !(table.hbar > 0.0 && table.c > 0.0 && table.kb > 0.0) {
            return Err(Error::config("constants must all be positive"));
        }
        Ok(table)
    }

    /// Mass in grams to sec^-1: m c^2 / hbar.
    pub fn grams_to_inverse_seconds(&self, mass_g: f64) -> Result<NaturalQuantity> {
        if !(mass_g.is_finite() && mass_g > 0.0) {
            return Err(Error::domain(format!(
                "mass must be positive and finite, got {mass_g} g"
            )));
        }
        let kg = mass_g * 1e-3;
        NaturalQuantity::new(kg * self.c * self.c / self.hbar, Kind::Mass)
    }

    pub fn inverse_seconds_to_grams(&self, mass: NaturalQuantity) -> Result<f64> {
        if mass.kind != Kind::Mass {
            return Err(Error::domain("expected a Mass quantity"));
        }
        Ok(mass.value * self.hbar / (self.c * self.c) * 1e3)
    }

    /// Temperature in kelvin to sec^-1: T kB / hbar.
    pub fn kelvin_to_inverse_seconds(&self, t_kelvin: f64) -> Result<NaturalQuantity> {
        if !(t_kelvin.is_finite() && t_kelvin >= 0.0) {
            return Err(Error::domain(format!(
                "temperature must be non-negative, got {t_kelvin} K"
            )));
        }
        let value = t_kelvin * self.kb / self.hbar;
        if t_kelvin == 0.0 {
            // Kind::Temperature is positive-only; carry exact zero explicitly.
            return Ok(NaturalQuantity {
                value: 0.0,
                kind: Kind::Temperature,
            });
        }
        NaturalQuantity::new(value, Kind::Temperature)
    }

    pub fn inverse_seconds_to_kelvin(&self, t: NaturalQuantity) -> Result<f64> {
        if t.kind != Kind::Temperature {
            return Err(Error::domain("expected a Temperature quantity"));
        }
        Ok(t.value * self.hbar / self.kb)
    }

    /// Wavelength in centimeters to angular wavenumber k = 2 pi c / lambda
    /// in sec^-1.
    ///
    /// Note: a quoted k = 3e15 sec^-1 for lambda = 5e-5 cm corresponds to
    /// c/lambda = 6e14 without the 2 pi; this function returns the angular
    /// value 2 pi c / lambda ~ 3.8e15, so comparisons against such quotes
    /// need factor-of-2pi slack.
    pub fn wavelength_to_wavenumber(&self, lambda_cm: f64) -> Result<NaturalQuantity> {
        if !(lambda_cm.is_finite() && lambda_cm > 0.0) {
            return Err(Error::domain(format!(
                "wavelength must be positive, got {lambda_cm} cm"
            )));
        }
        let lambda_m = lambda_cm * 1e-2;
        NaturalQuantity::new(2.0 * std::f64::consts::PI * self.c / lambda_m, Kind::Wavenumber)
    }

    pub fn wavenumber_to_wavelength(&self, k: NaturalQuantity) -> Result<f64> {
        if k.kind != Kind::Wavenumber {
            return Err(Error::domain("expected a Wavenumber quantity"));
        }
        Ok(2.0 * std::f64::consts::PI * self.c / k.value * 1e2)
    }
}
