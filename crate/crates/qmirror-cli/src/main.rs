//! `qmirror`: command-line front end for the photon / movable-mirror
//! simulation library.
//!
//! One verb per library capability: `recoil`, `overlap`, `schmidt`,
//! `classify`, `sweep`, `units`, `plot`. All output is deterministic;
//! exit codes are 0 (success), 1 (bad arguments or config), 2 (physics
//! precondition violated).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qmirror::entangle::{reduced_mirror, reduced_photon};
use qmirror::kinematics::{recoil_approx, recoil_exact, rejected_branch_check, RecoilInput};
use qmirror::observables::{breakdown_temperature, min_mirror_mass};
use qmirror::observables::{DEFAULT_ATOM_MASS_G, DEFAULT_ATOM_SIZE_CM};
use qmirror::plot::emit_plot;
use qmirror::scenario::{build_mode, resolve, run_scenario, sweep_csv, ScenarioConfig};
use qmirror::units::{ConstantsTable, Kind, NaturalQuantity};
use qmirror::wavepacket::{overlap_gaussian_pair, GaussianPacket};
use qmirror::Error;

#[derive(Parser)]
#[command(name = "qmirror", version, about = "Photon / movable-mirror simulation")]
struct Cli {
    /// Reserved for future stochastic features; all current computation
    /// is deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Physical constants table (JSON with hbar, c, kb); CODATA defaults.
    #[arg(long, global = true)]
    constants: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Elastic photon-mirror recoil kinematics.
    Recoil(RecoilArgs),
    /// Overlap of a Gaussian mirror packet with a momentum-shifted copy.
    Overlap(OverlapArgs),
    /// Normal-form (Schmidt) decomposition for a scenario config.
    Schmidt(ConfigArg),
    /// Regime report (kappa, case, visibility, ...) for a scenario config.
    Classify(ConfigArg),
    /// Evaluate the sweep block of a config; emits CSV.
    Sweep(SweepArgs),
    /// Convert laboratory units to natural units (hbar = c = 1) and back.
    Units(UnitsArgs),
    /// Render a sweep CSV as an SVG visibility-vs-kappa curve.
    Plot(PlotArgs),
}

#[derive(Args)]
struct RecoilArgs {
    /// Incident photon momentum k > 0 (sec^-1).
    #[arg(long)]
    k: f64,
    /// Initial mirror momentum p (sec^-1).
    #[arg(long)]
    p: f64,
    /// Mirror mass M > 0 (sec^-1).
    #[arg(long)]
    mass: f64,
    /// Use the first-order k' = -k approximation instead of the exact root.
    #[arg(long)]
    approx: bool,
}

#[derive(Args)]
struct OverlapArgs {
    /// Packet momentum spread (sec^-1).
    #[arg(long)]
    dp: f64,
    /// Momentum shift between the two copies (sec^-1).
    #[arg(long)]
    delta_p: f64,
    /// Packet center position (sec).
    #[arg(long, default_value_t = 0.0)]
    x0: f64,
    /// Position spread (sec); defaults to the minimum-uncertainty value.
    #[arg(long)]
    dx0: Option<f64>,
}

#[derive(Args)]
struct ConfigArg {
    /// Scenario config (JSON, schema 1).
    config: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Scenario config (JSON, schema 1) with a sweep block.
    config: PathBuf,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct UnitsArgs {
    /// Mass in grams -> sec^-1.
    #[arg(long)]
    mass_g: Option<f64>,
    /// Mass in sec^-1 -> grams.
    #[arg(long)]
    mass_natural: Option<f64>,
    /// Temperature in kelvin -> sec^-1.
    #[arg(long)]
    kelvin: Option<f64>,
    /// Temperature in sec^-1 -> kelvin.
    #[arg(long)]
    temperature_natural: Option<f64>,
    /// Wavelength in cm -> wavenumber k = 2 pi c / lambda (sec^-1).
    #[arg(long)]
    wavelength_cm: Option<f64>,
    /// Wavenumber in sec^-1 -> wavelength (cm).
    #[arg(long)]
    wavenumber: Option<f64>,
    /// With --breakdown-k: mirror mass (sec^-1) for the breakdown
    /// temperature k^2 / M, reported in sec^-1 and kelvin.
    #[arg(long, requires = "breakdown_k")]
    breakdown_mass: Option<f64>,
    /// Photon momentum (sec^-1) for the breakdown temperature.
    #[arg(long, requires = "breakdown_mass")]
    breakdown_k: Option<f64>,
    /// Wavelength (cm) for the minimum rigid-mirror mass estimate,
    /// reported in sec^-1 and grams.
    #[arg(long)]
    min_mass_wavelength_cm: Option<f64>,
}

#[derive(Args)]
struct PlotArgs {
    /// Sweep CSV (header kappa,r,visibility,purity,case,fuzziness).
    csv: PathBuf,
    /// Write the SVG here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Usage problems are config errors (exit 1); help/version are
            // successful terminations.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qmirror: {err}");
            let code = match err {
                Error::Domain(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

/// Write to stdout, treating a closed pipe (e.g. `qmirror ... | head`) as
/// success rather than an error.
fn emit(text: &str) -> qmirror::Result<()> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn run(cli: Cli) -> qmirror::Result<()> {
    let constants = match &cli.constants {
        Some(path) => ConstantsTable::from_json_file(path)?,
        None => ConstantsTable::default(),
    };
    match cli.command {
        Command::Recoil(args) => {
            let input = RecoilInput::new(args.k, args.p, args.mass)?;
            let outcome = if args.approx {
                recoil_approx(&input)?
            } else {
                recoil_exact(&input)?
            };
            let mut value = serde_json::to_value(outcome)?;
            value["rejected_branch_defect"] = json!(rejected_branch_check(&input)?);
            emit(&format!("{}\n", serde_json::to_string_pretty(&value)?))?;
        }
        Command::Overlap(args) => {
            let dx0 = args.dx0.unwrap_or(0.5 / args.dp);
            let packet = GaussianPacket::new(0.0, args.dp, args.x0, dx0, 1.0)?;
            let shifted = packet.momentum_shift(args.delta_p);
            let z = overlap_gaussian_pair(&packet, &shifted);
            emit(&format!("{}\n", serde_json::to_string_pretty(&json!({ "re": z.re, "im": z.im, "magnitude": z.norm(), "phase": z.arg(), }))?))?;
        }
        Command::Schmidt(args) => {
            let config = ScenarioConfig::from_file(&args.config)?;
            let resolved = resolve(&config, &constants)?;
            let mode = build_mode(&config, &resolved)?;
            let output = run_scenario(&config, &constants)?;
            emit(&format!("{}\n", serde_json::to_string_pretty(&json!({ "resolved": { "k": resolved.k, "mass": resolved.mass, "dp": resolved.dp, }, "normal_form": output.normal_form.to_json(), "reduced_mirror": reduced_mirror(&mode).to_json(), "reduced_photon": reduced_photon(&mode).to_json(), }))?))?;
        }
        Command::Classify(args) => {
            let config = ScenarioConfig::from_file(&args.config)?;
            let output = run_scenario(&config, &constants)?;
            emit(&format!("{}\n", serde_json::to_string_pretty(&output.to_json())?))?;
        }
        Command::Sweep(args) => {
            let config = ScenarioConfig::from_file(&args.config)?;
            let csv = sweep_csv(&config, &constants)?;
            match args.out {
                Some(path) => std::fs::write(path, csv)?,
                None => emit(&csv)?,
            }
        }
        Command::Units(args) => {
            emit(&format!("{}\n", serde_json::to_string_pretty(&units_report(&args, &constants)?)?))?;
        }
        Command::Plot(args) => {
            let csv = std::fs::read_to_string(&args.csv)?;
            let svg = emit_plot(&csv)?;
            match args.out {
                Some(path) => std::fs::write(path, svg)?,
                None => emit(&svg)?,
            }
        }
    }
    Ok(())
}

fn units_report(
    args: &UnitsArgs,
    constants: &ConstantsTable,
) -> qmirror::Result<serde_json::Value> {
    let mut out = serde_json::Map::new();
    if let Some(g) = args.mass_g {
        out.insert(
            "mass_inverse_seconds".into(),
            json!(constants.grams_to_inverse_seconds(g)?.value),
        );
    }
    if let Some(m) = args.mass_natural {
        let q = NaturalQuantity::new(m, Kind::Mass)?;
        out.insert("mass_grams".into(), json!(constants.inverse_seconds_to_grams(q)?));
    }
    if let Some(t) = args.kelvin {
        out.insert(
            "temperature_inverse_seconds".into(),
            json!(constants.kelvin_to_inverse_seconds(t)?.value),
        );
    }
    if let Some(t) = args.temperature_natural {
        let q = NaturalQuantity::new(t, Kind::Temperature)?;
        out.insert(
            "temperature_kelvin".into(),
            json!(constants.inverse_seconds_to_kelvin(q)?),
        );
    }
    if let Some(lambda) = args.wavelength_cm {
        out.insert(
            "wavenumber_inverse_seconds".into(),
            json!(constants.wavelength_to_wavenumber(lambda)?.value),
        );
    }
    if let Some(k) = args.wavenumber {
        let q = NaturalQuantity::new(k, Kind::Momentum)?;
        out.insert(
            "wavelength_cm".into(),
            json!(constants.wavenumber_to_wavelength(q)?),
        );
    }
    if let (Some(mass), Some(k)) = (args.breakdown_mass, args.breakdown_k) {
        let t = breakdown_temperature(mass, k);
        let q = NaturalQuantity::new(t, Kind::Temperature)?;
        out.insert(
            "breakdown_temperature".into(),
            json!({
                "inverse_seconds": t,
                "kelvin": constants.inverse_seconds_to_kelvin(q)?,
            }),
        );
    }
    if let Some(lambda) = args.min_mass_wavelength_cm {
        let mass = min_mirror_mass(lambda, DEFAULT_ATOM_SIZE_CM, DEFAULT_ATOM_MASS_G, constants)?;
        out.insert(
            "min_mirror_mass".into(),
            json!({
                "inverse_seconds": mass.value,
                "grams": constants.inverse_seconds_to_grams(mass)?,
            }),
        );
    }
    if out.is_empty() {
        return Err(Error::config("no conversion requested; see qmirror units --help"));
    }
    Ok(serde_json::Value::Object(out))
}
