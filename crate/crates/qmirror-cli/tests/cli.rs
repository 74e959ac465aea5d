//! Subcommand-level integration tests for the `qmirror` binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qmirror"))
}

fn config_path(name: &str) -> String {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn stdout_json(output: std::process::Output) -> serde_json::Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).unwrap()
}

#[test]
fn recoil_reports_flipped_photon() {
    let out = bin()
        .args(["recoil", "--k", "3.77e15", "--p", "1e15", "--mass", "8.5e47"])
        .output()
        .unwrap();
    let json = stdout_json(out);
    let k_prime = json["k_prime"].as_f64().unwrap();
    assert!(k_prime < 0.0 && (k_prime + 3.77e15).abs() < 1e11);
    assert!(json["nonrelativistic"].as_bool().unwrap());
    assert!(json["rejected_branch_defect"].as_f64().unwrap().abs() > 1e40);
}

#[test]
fn recoil_relativistic_approx_exits_2() {
    let out = bin()
        .args(["recoil", "--k", "1e30", "--p", "0", "--mass", "1e30", "--approx"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("domain"));
}

#[test]
fn overlap_magnitude_and_phase() {
    let out = bin()
        .args(["overlap", "--dp", "2.0", "--delta-p", "4.0", "--x0", "0.25"])
        .output()
        .unwrap();
    let json = stdout_json(out);
    // |<phi|phi shifted>| = exp(-delta^2 / 8 dp^2), phase delta * x0.
    let expected_mag = (-16.0f64 / 32.0).exp();
    assert!((json["magnitude"].as_f64().unwrap() - expected_mag).abs() < 1e-12);
    assert!((json["phase"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn schmidt_outputs_normal_form_and_reduced_operators() {
    let out = bin()
        .args(["schmidt", &config_path("dirac_limit.json")])
        .output()
        .unwrap();
    let json = stdout_json(out);
    let w1 = json["normal_form"]["wbar1"].as_f64().unwrap();
    let w2 = json["normal_form"]["wbar2"].as_f64().unwrap();
    assert!((w1 + w2 - 1.0).abs() < 1e-12);
    // dp = 1e-3 k: near-orthogonal mirror states, maximal entanglement.
    assert!((w1 - 0.5).abs() < 1e-6);
    assert!(json["reduced_mirror"].is_object());
    assert!(json["reduced_photon"].is_object());
}

#[test]
fn classify_reports_regimes() {
    let out = bin()
        .args(["classify", &config_path("paper_actual_mirror.json")])
        .output()
        .unwrap();
    let json = stdout_json(out);
    assert_eq!(json["report"]["case_label"], "CaseI");
    assert!(json["report"]["kappa"].as_f64().unwrap() > 1e6);
    assert!(json["report"]["visibility"].as_f64().unwrap() > 1.0 - 1e-6);

    let out = bin()
        .args(["classify", &config_path("dirac_limit.json")])
        .output()
        .unwrap();
    let json = stdout_json(out);
    assert_eq!(json["report"]["case_label"], "CaseII");
    assert!(json["report"]["visibility"].as_f64().unwrap() <= 1e-3);
}

#[test]
fn sweep_without_sweep_block_exits_1() {
    let out = bin()
        .args(["sweep", &config_path("dirac_limit.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn sweep_plot_pipeline() {
    let dir = std::env::temp_dir().join(format!("qmirror-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("sweep.csv");
    let svg_path = dir.join("sweep.svg");

    let out = bin()
        .args([
            "sweep",
            &config_path("paper_actual_mirror.json"),
            "--out",
            csv_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("kappa,r,visibility,purity,case,fuzziness\n"));
    assert_eq!(csv.lines().count(), 102);

    let out = bin()
        .args([
            "plot",
            csv_path.to_str().unwrap(),
            "--out",
            svg_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 1);

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn plot_rejects_wrong_header() {
    let dir = std::env::temp_dir().join(format!("qmirror-cli-hdr-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.csv");
    std::fs::write(&bad, "a,b\n1,2\n").unwrap();
    let out = bin().args(["plot", bad.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr)
        .contains("kappa,r,visibility,purity,case,fuzziness"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn units_conversions() {
    let out = bin()
        .args(["units", "--mass-g", "1.0", "--kelvin", "300", "--wavelength-cm", "5e-5"])
        .output()
        .unwrap();
    let json = stdout_json(out);
    let mass = json["mass_inverse_seconds"].as_f64().unwrap();
    assert!((mass / 8.522e47 - 1.0).abs() < 1e-3);
    let temp = json["temperature_inverse_seconds"].as_f64().unwrap();
    assert!((temp / 3.93e13 - 1.0).abs() < 1e-3);
    let k = json["wavenumber_inverse_seconds"].as_f64().unwrap();
    assert!((k / 3.767e15 - 1.0).abs() < 1e-3);
}

#[test]
fn units_without_request_exits_1() {
    let out = bin().arg("units").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn seed_flag_is_accepted_and_ignored() {
    let with = bin()
        .args(["--seed", "7", "classify", &config_path("dirac_limit.json")])
        .output()
        .unwrap();
    let without = bin()
        .args(["classify", &config_path("dirac_limit.json")])
        .output()
        .unwrap();
    assert!(with.status.success());
    assert_eq!(with.stdout, without.stdout);
}

#[test]
fn unknown_flag_exits_1() {
    let out = bin().args(["classify", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("sweep"));
}
