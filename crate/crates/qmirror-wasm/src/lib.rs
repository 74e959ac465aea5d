//! wasm-bindgen surface for the browser demo. Every exported function
//! takes plain numbers and returns a JSON string, so the page needs no
//! generated glue types. Errors come back as a thrown JS string.
//!
//! The `*_impl` functions hold all the logic and are plain Rust so they
//! run under `cargo test` on the host; the `#[wasm_bindgen]` wrappers
//! only translate errors into `JsValue` (which can exist only on wasm).

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use qmirror::entangle::{build_semitransparent, schmidt_closed, CompoundMode};
use qmirror::kinematics::{recoil_exact, RecoilInput};
use qmirror::observables::{classify, visibility};
use qmirror::wavepacket::GaussianPacket;

/// Compound mode with weight w1 on the first photon arm and mirror
/// overlap r e^(i beta), realized by a unit-spread minimum-uncertainty
/// packet under the matching momentum shift.
fn engineered_mode(w1: f64, r: f64, beta: f64) -> qmirror::Result<CompoundMode> {
    if !(w1 > 0.0 && w1 < 1.0) {
        return Err(qmirror::Error::domain("w1 must lie in (0, 1)"));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(qmirror::Error::domain("r must lie in (0, 1)"));
    }
    let delta = (-8.0 * r.ln()).sqrt();
    let phi = GaussianPacket::minimum_uncertainty(0.0, 1.0, beta / delta, 1e9)?;
    let c1 = Complex64::new(w1.sqrt(), 0.0);
    let c2 = Complex64::new((1.0 - w1).sqrt(), 0.0);
    build_semitransparent(c1, c2, &phi, delta / 2.0, 2.0)
}

fn visibility_sweep_impl(kappa_min: f64, kappa_max: f64, points: usize) -> qmirror::Result<String> {
    if !(kappa_min > 0.0 && kappa_max > kappa_min) {
        return Err(qmirror::Error::config("need 0 < kappa_min < kappa_max"));
    }
    if !(2..=100_000).contains(&points) {
        return Err(qmirror::Error::config("points must lie in [2, 100000]"));
    }
    let k = 1.0;
    let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let fraction = i as f64 / (points as f64 - 1.0);
        let kappa = kappa_min * (kappa_max / kappa_min).powf(fraction);
        let phi = GaussianPacket::minimum_uncertainty(0.0, kappa * k, 0.0, 1e9)?;
        let mode = build_semitransparent(half, half, &phi, k, 2.0)?;
        let report = classify(&mode, k)?;
        rows.push(serde_json::json!({
            "kappa": report.kappa,
            "visibility": report.visibility,
            "purity": report.purity_ph,
            "case": report.case_label.as_str(),
        }));
    }
    Ok(serde_json::Value::Array(rows).to_string())
}

fn schmidt_report_impl(w1: f64, r: f64, beta: f64) -> qmirror::Result<String> {
    let mode = engineered_mode(w1, r, beta)?;
    let nf = schmidt_closed(&mode)?;
    let mut value = nf.to_json();
    value["visibility"] = serde_json::json!(visibility(&mode));
    Ok(value.to_string())
}

fn recoil_report_impl(k: f64, p: f64, mass: f64) -> qmirror::Result<String> {
    let input = RecoilInput::new(k, p, mass)?;
    let outcome = recoil_exact(&input)?;
    Ok(serde_json::to_string(&outcome)?)
}

fn throw(e: qmirror::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Visibility, purity, and regime across log-spaced kappa = dp/k values
/// for an equal-arm interferometer; returns a JSON array of rows.
#[wasm_bindgen]
pub fn visibility_sweep(kappa_min: f64, kappa_max: f64, points: usize) -> Result<String, JsValue> {
    visibility_sweep_impl(kappa_min, kappa_max, points).map_err(throw)
}

/// Normal-form (Schmidt) decomposition of the engineered (w1, r, beta)
/// mode, plus its visibility; returns a JSON object.
#[wasm_bindgen]
pub fn schmidt_report(w1: f64, r: f64, beta: f64) -> Result<String, JsValue> {
    schmidt_report_impl(w1, r, beta).map_err(throw)
}

/// Exact photon-mirror recoil kinematics; returns the RecoilOutcome JSON.
#[wasm_bindgen]
pub fn recoil_report(k: f64, p: f64, mass: f64) -> Result<String, JsValue> {
    recoil_report_impl(k, p, mass).map_err(throw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_rows_and_regimes() {
        let rows: serde_json::Value =
            serde_json::from_str(&visibility_sweep_impl(1e-2, 1e2, 41).unwrap()).unwrap();
        let rows = rows.as_array().unwrap();
        assert_eq!(rows.len(), 41);
        assert_eq!(rows[0]["case"], "CaseII");
        assert_eq!(rows[40]["case"], "CaseI");
        assert!(rows[40]["visibility"].as_f64().unwrap() > 0.99);
    }

    #[test]
    fn schmidt_fixture() {
        let value: serde_json::Value =
            serde_json::from_str(&schmidt_report_impl(0.5, 0.6, 0.0).unwrap()).unwrap();
        assert!((value["wbar1"].as_f64().unwrap() - 0.8).abs() < 1e-10);
        assert!((value["visibility"].as_f64().unwrap() - 0.6).abs() < 1e-10);
    }

    #[test]
    fn recoil_basic() {
        let value: serde_json::Value =
            serde_json::from_str(&recoil_report_impl(3.77e15, 0.0, 8.5e47).unwrap()).unwrap();
        assert!(value["k_prime"].as_f64().unwrap() < 0.0);
        assert!(value["nonrelativistic"].as_bool().unwrap());
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(visibility_sweep_impl(1.0, 0.5, 10).is_err());
        assert!(schmidt_report_impl(0.0, 0.5, 0.0).is_err());
        assert!(recoil_report_impl(-1.0, 0.0, 1e40).is_err());
    }
}
