//! Physical diagnostics: fringe visibility, purity, distance to the
//! ideal-mirror state, and the kappa = dp/k regime classifier together
//! with the fuzziness and thermal estimates.
//!
//! Regime thresholds: the asymptotic conditions kappa >> 1 / kappa << 1
//! are read as a symmetric decade, kappa >= 10 for case I and
//! kappa <= 0.1 for case II. The fuzziness thresholds are the
//! minimum-uncertainty images of the same decade (dx0 = 1/(2 kappa k)),
//! i.e. Fuzzy when dx0 >= 5/k and Regular when dx0 <= 1/(20 k), so that
//! for minimum-uncertainty packets case II implies Fuzzy exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::entangle::{ideal_reference, reduced_photon, CompoundMode, ModeStateOperator};
use crate::error::{Error, Result};
use crate::units::{ConstantsTable, Kind, NaturalQuantity};

/// kappa boundary below which case II (interference breakdown) is declared.
pub const KAPPA_CASE_II: f64 = 0.1;
/// kappa boundary above which case I (no breakdown) is declared.
pub const KAPPA_CASE_I: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "CaseI")]
    CaseINoBreakdown,
    #[serde(rename = "CaseII")]
    CaseIIBreakdown,
    Intermediate,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::CaseINoBreakdown => "CaseI",
            CaseLabel::CaseIIBreakdown => "CaseII",
            CaseLabel::Intermediate => "Intermediate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fuzziness {
    Regular,
    Fuzzy,
    Intermediate,
}

impl Fuzziness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Fuzziness::Regular => "Regular",
            Fuzziness::Fuzzy => "Fuzzy",
            Fuzziness::Intermediate => "Intermediate",
        }
    }
}

/// Full regime diagnosis of a compound mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub kappa: f64,
    pub overlap_r: f64,
    pub case_label: CaseLabel,
    pub fuzziness: Fuzziness,
    pub visibility: f64,
    pub purity_ph: f64,
}

impl RegimeReport {
    /// One CSV row in the fixed column order
    /// `kappa,r,visibility,purity,case,fuzziness`.
    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
            self.kappa,
            self.overlap_r,
            self.visibility,
            self.purity_ph,
            self.case_label.as_str(),
            self.fuzziness.as_str()
        )
    }

    pub const CSV_HEADER: &'static str = "kappa,r,visibility,purity,case,fuzziness";
}

/// Two-beam fringe contrast V = 2 |c1| |c2| r, the interferometric
/// visibility carried by the reduced photon operator's off-diagonal.
///
/// Equals (I_max - I_min) / (I_max + I_min) of the fringe scan
/// I(theta) = w1 + w2 + 2 Re[c1 c2* (phi2, phi1) e^(i theta)].
pub fn visibility(mode: &CompoundMode) -> f64 {
    2.0 * mode.c1.norm() * mode.c2.norm() * mode.mirror_overlap().r
}

/// Purity Tr(rho^2); lies in [1/2, 1] for 2x2 unit-trace PSD operators.
pub fn purity(op: &ModeStateOperator) -> f64 {
    let m = &op.matrix;
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            sum += m[i][j] * m[j][i];
        }
    }
    sum.re
}

/// Trace distance (1/2) Tr |rho_ph - rho_ph_ideal| via the eigenvalues of
/// the Hermitian 2x2 difference.
pub fn distance_to_ideal(mode: &CompoundMode) -> f64 {
    let rho = reduced_photon(mode);
    let ideal = ideal_reference(mode);
    let mut diff = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            diff[i][j] = rho.matrix[i][j] - ideal.matrix[i][j];
        }
    }
    let a = diff[0][0].re;
    let d = diff[1][1].re;
    let off = diff[0][1].norm();
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + off * off).sqrt();
    0.5 * ((mid + rad).abs() + (mid - rad).abs())
}

/// kappa = dp / k.
pub fn kappa(dp: f64, k: f64) -> Result<f64> {
    if !(dp.is_finite() && dp > 0.0 && k.is_finite() && k > 0.0) {
        return Err(Error::domain("kappa requires dp > 0 and k > 0"));
    }
    Ok(dp / k)
}

/// Thermal momentum spread sqrt(2 M T), reading the order-of-magnitude
/// relation (Delta_T p)^2 / 2M ~ T as an equality. Both arguments in
/// sec^-1.
pub fn thermal_spread(mass: f64, temperature: f64) -> f64 {
    debug_assert!(mass > 0.0 && temperature >= 0.0);
    (2.0 * mass * temperature).sqrt()
}

/// Temperature threshold k^2 / M (sec^-1) below which interference
/// breakdown would require cooling the mirror.
pub fn breakdown_temperature(mass: f64, k: f64) -> f64 {
    debug_assert!(mass > 0.0 && k > 0.0);
    k * k / mass
}

/// Minimum mass of a mirror large enough to reflect wavelength `lambda_cm`:
/// (lambda / atom_size)^2 atoms of mass `atom_mass_g`, in sec^-1.
pub fn min_mirror_mass(
    lambda_cm: f64,
    atom_size_cm: f64,
    atom_mass_g: f64,
    constants: &ConstantsTable,
) -> Result<NaturalQuantity> {
    if !(lambda_cm > 0.0 && atom_size_cm > 0.0 && atom_mass_g > 0.0) {
        return Err(Error::domain("min_mirror_mass inputs must be positive"));
    }
    let atoms = (lambda_cm / atom_size_cm).powi(2);
    let atom_mass = constants.grams_to_inverse_seconds(atom_mass_g)?;
    NaturalQuantity::new(atoms * atom_mass.value, Kind::Mass)
}

/// Atomic defaults entering the mirror-mass estimate.
pub const DEFAULT_ATOM_SIZE_CM: f64 = 1e-8;
pub const DEFAULT_ATOM_MASS_G: f64 = 1e-24;

/// Populate a full regime report for a mode at photon momentum k.
///
/// kappa is taken from the incident packet's momentum spread (phi1) and
/// fuzziness from its initial position spread.
pub fn classify(mode: &CompoundMode, k: f64) -> Result<RegimeReport> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::domain("classify requires k > 0"));
    }
    let kp = kappa(mode.phi1.dp, k)?;
    let case_label = if kp >= KAPPA_CASE_I {
        CaseLabel::CaseINoBreakdown
    } else if kp <= KAPPA_CASE_II {
        CaseLabel::CaseIIBreakdown
    } else {
        CaseLabel::Intermediate
    };
    let dx0 = mode.phi1.dx0;
    let fuzziness = if dx0 >= 0.5 / (KAPPA_CASE_II * k) {
        Fuzziness::Fuzzy
    } else if dx0 <= 0.5 / (KAPPA_CASE_I * k) {
        Fuzziness::Regular
    } else {
        Fuzziness::Intermediate
    };
    let report = RegimeReport {
        kappa: kp,
        overlap_r: mode.mirror_overlap().r,
        case_label,
        fuzziness,
        visibility: visibility(mode),
        purity_ph: purity(&reduced_photon(mode)),
    };
    Ok(report)
}
