//! Compound photon (x) mirror modes, reduced mode state operators, and the
//! normal-form (Schmidt) decomposition.
//!
//! The state under study is the two-term compound mode
//!
//!   chi = c1 f1 (x) phi1 + c2 f2 (x) phi2
//!
//! with orthonormal photon labels f1, f2 and Gaussian mirror packets
//! phi1, phi2 whose inner product is r e^(i beta). The normal form
//!
//!   chi = alpha1 fbar1 (x) phibar1 + alpha2 fbar2 (x) phibar2
//!
//! is computed twice: `schmidt_closed` uses the closed-form eigenvalues
//! w_tilde = (1 +- sqrt(1 - 4 w1 w2 (1 - r^2)))/2 and the coefficient
//! relation they imply, while `schmidt_numeric` diagonalizes the reduced
//! mirror operator directly and serves as the independent oracle.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::wavepacket::{overlap_gaussian_pair, GaussianPacket};

const EDGE: f64 = 1e-12;

/// Which photon mode a compound-mode term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Transmitted,
    Reflected,
    Arm1,
    Arm2,
}

/// Photon mode label; distinct labels are orthonormal by fiat. The
/// wavevector annotation is informational only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonModeLabel {
    pub kind: ModeKind,
    pub wavevector: f64,
}

/// Two-term photon (x) mirror compound mode.
#[derive(Debug, Clone, PartialEq)]
pub struct CompoundMode {
    pub c1: Complex64,
    pub c2: Complex64,
    pub label1: PhotonModeLabel,
    pub label2: PhotonModeLabel,
    pub phi1: GaussianPacket,
    pub phi2: GaussianPacket,
}

/// Mirror-state inner product (phi1, phi2) = r e^(i beta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorOverlap {
    pub r: f64,
    pub beta: f64,
}

impl MirrorOverlap {
    pub fn as_complex(&self) -> Complex64 {
        self.r * Complex64::new(0.0, self.beta).exp()
    }
}

impl CompoundMode {
    pub fn new(
        c1: Complex64,
        c2: Complex64,
        label1: PhotonModeLabel,
        label2: PhotonModeLabel,
        phi1: GaussianPacket,
        phi2: GaussianPacket,
    ) -> Result<Self> {
        let norm = c1.norm_sqr() + c2.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "|c1|^2 + |c2|^2 = {norm}, must be 1 within 1e-12"
            )));
        }
        if label1.kind == label2.kind {
            return Err(Error::domain("compound mode labels must be distinct"));
        }
        Ok(CompoundMode { c1, c2, label1, label2, phi1, phi2 })
    }

    pub fn w1(&self) -> f64 {
        self.c1.norm_sqr()
    }

    pub fn w2(&self) -> f64 {
        self.c2.norm_sqr()
    }

    pub fn mirror_overlap(&self) -> MirrorOverlap {
        let z = overlap_gaussian_pair(&self.phi1, &self.phi2);
        MirrorOverlap { r: z.norm().min(1.0), beta: z.arg() }
    }
}

/// Outgoing mode of a semitransparent mirror: the transmitted term keeps
/// the incident packet, the reflected term carries the recoil shift
/// geometry * k.
pub fn build_semitransparent(
    c: Complex64,
    c_prime: Complex64,
    phi_in: &GaussianPacket,
    k: f64,
    geometry: f64,
) -> Result<CompoundMode> {
    build(c, c_prime, phi_in, k, geometry, ModeKind::Transmitted, ModeKind::Reflected)
}

/// Outgoing mode of a fully reflecting mirror in one interferometer arm:
/// arm 1 passes the mirror by, arm 2 reflects and shifts the packet.
pub fn build_fully_reflecting(
    c1: Complex64,
    c2: Complex64,
    phi_in: &GaussianPacket,
    k: f64,
    geometry: f64,
) -> Result<CompoundMode> {
    build(c1, c2, phi_in, k, geometry, ModeKind::Arm1, ModeKind::Arm2)
}

fn build(
    c1: Complex64,
    c2: Complex64,
    phi_in: &GaussianPacket,
    k: f64,
    geometry: f64,
    kind1: ModeKind,
    kind2: ModeKind,
) -> Result<CompoundMode> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::domain("photon momentum k must be positive"));
    }
    if !(geometry.is_finite() && geometry > 0.0) {
        return Err(Error::domain("geometry factor must be positive"));
    }
    CompoundMode::new(
        c1,
        c2,
        PhotonModeLabel { kind: kind1, wavevector: k },
        PhotonModeLabel { kind: kind2, wavevector: -k },
        *phi_in,
        phi_in.momentum_shift(geometry * k),
    )
}

/// Basis a 2x2 mode state operator is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// The orthonormal photon labels (f1, f2).
    PhotonModes,
    /// Gram-Schmidt mirror basis {e1 = phi1, e2 = (phi2 - (phi1,phi2) phi1)/sqrt(1-r^2)}.
    MirrorGramSchmidt,
    /// Degenerate r = 1 case: the operator acts on the span of phi1 alone
    /// and is embedded as [[1,0],[0,0]] with phi1 as the first basis vector.
    MirrorPhi1Only,
}

/// 2x2 Hermitian, positive-semidefinite, unit-trace operator in a declared
/// basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeStateOperator {
    pub basis: Basis,
    pub matrix: [[Complex64; 2]; 2],
}

impl ModeStateOperator {
    pub fn new(basis: Basis, matrix: [[Complex64; 2]; 2]) -> Result<Self> {
        let op = ModeStateOperator { basis, matrix };
        op.validate()?;
        Ok(op)
    }

    fn validate(&self) -> Result<()> {
        let m = &self.matrix;
        if (m[0][1] - m[1][0].conj()).norm() > EDGE
            || m[0][0].im.abs() > EDGE
            || m[1][1].im.abs() > EDGE
        {
            return Err(Error::domain("operator is not Hermitian within 1e-12"));
        }
        let trace = m[0][0].re + m[1][1].re;
        if (trace - 1.0).abs() > EDGE {
            return Err(Error::domain(format!("operator trace {trace} != 1")));
        }
        let (lo, _) = self.eigenvalues();
        if lo < -EDGE {
            return Err(Error::domain(format!(
                "operator has negative eigenvalue {lo}"
            )));
        }
        Ok(())
    }

    /// Eigenvalues (ascending) of the Hermitian 2x2 matrix.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.matrix[0][0].re;
        let d = self.matrix[1][1].re;
        let off = self.matrix[0][1].norm();
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + off * off).sqrt();
        (mid - rad, mid + rad)
    }

    pub fn to_json(&self) -> Value {
        let pair = |z: Complex64| json!([z.re, z.im]);
        json!({
            "basis": format!("{:?}", self.basis),
            "matrix": [
                [pair(self.matrix[0][0]), pair(self.matrix[0][1])],
                [pair(self.matrix[1][0]), pair(self.matrix[1][1])],
            ],
        })
    }
}

/// Pure reference state of the ideal (recoil-free) mirror: the rank-1
/// projector onto f_ideal = c1 f1 + c2 f2, in the (f1, f2) basis.
pub fn ideal_reference(mode: &CompoundMode) -> ModeStateOperator {
    let c1 = mode.c1;
    let c2 = mode.c2;
    ModeStateOperator {
        basis: Basis::PhotonModes,
        matrix: [
            [Complex64::new(c1.norm_sqr(), 0.0), c1 * c2.conj()],
            [c2 * c1.conj(), Complex64::new(c2.norm_sqr(), 0.0)],
        ],
    }
}

/// Reduced mirror operator rho_m = w1 phi1 phi1+ + w2 phi2 phi2+, in the
/// Gram-Schmidt mirror basis.
///
/// For r = 1 the second basis vector is undefined; the operator is then
/// the rank-1 projector onto phi1, returned in the `MirrorPhi1Only` basis.
pub fn reduced_mirror(mode: &CompoundMode) -> ModeStateOperator {
    let w1 = mode.w1();
    let w2 = mode.w2();
    let ov = mode.mirror_overlap();
    if ov.r >= 1.0 - EDGE {
        return ModeStateOperator {
            basis: Basis::MirrorPhi1Only,
            matrix: [
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
                [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        };
    }
    let r = ov.r;
    let rt = (1.0 - r * r).sqrt();
    let phase = Complex64::new(0.0, ov.beta).exp();
    ModeStateOperator {
        basis: Basis::MirrorGramSchmidt,
        matrix: [
            [Complex64::new(w1 + w2 * r * r, 0.0), w2 * r * rt * phase],
            [w2 * r * rt * phase.conj(), Complex64::new(w2 * rt * rt, 0.0)],
        ],
    }
}

/// Reduced photon operator in the (f1, f2) basis:
/// [[w1, c1 c2* (phi2, phi1)], [c2 c1* (phi1, phi2), w2]].
pub fn reduced_photon(mode: &CompoundMode) -> ModeStateOperator {
    let ov = mode.mirror_overlap().as_complex();
    ModeStateOperator {
        basis: Basis::PhotonModes,
        matrix: [
            [Complex64::new(mode.w1(), 0.0), mode.c1 * mode.c2.conj() * ov.conj()],
            [mode.c2 * mode.c1.conj() * ov, Complex64::new(mode.w2(), 0.0)],
        ],
    }
}

/// Schmidt data of a compound mode.
///
/// `b[i][j]` expands the Schmidt mirror vector phibar_i over the
/// (phi1, phi2) pair; `fbar[i][j]` expands the Schmidt photon vector
/// fbar_i over the orthonormal (f1, f2) pair. Ordered so that
/// wbar[0] >= wbar[1], with alpha[i] = sqrt(wbar[i]).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub alpha: [f64; 2],
    pub wbar: [f64; 2],
    pub b: [[Complex64; 2]; 2],
    pub fbar: [[Complex64; 2]; 2],
    /// Set when the Schmidt spectrum is degenerate (wbar1 = wbar2 = 1/2)
    /// and the returned basis is one valid choice among many.
    pub degenerate: bool,
}

impl NormalForm {
    pub fn to_json(&self) -> Value {
        let pair = |z: Complex64| json!([z.re, z.im]);
        let row = |r: &[Complex64; 2]| json!([pair(r[0]), pair(r[1])]);
        json!({
            "alpha1": self.alpha[0],
            "alpha2": self.alpha[1],
            "wbar1": self.wbar[0],
            "wbar2": self.wbar[1],
            "b": [row(&self.b[0]), row(&self.b[1])],
            "fbar": [row(&self.fbar[0]), row(&self.fbar[1])],
            "degenerate": self.degenerate,
        })
    }
}

/// Multiply a mirror-vector expansion so its first nonvanishing component
/// in the orthonormal basis is real positive; returns the phase applied.
fn phase_fix(v: &mut [Complex64; 2]) -> Complex64 {
    let leading = if v[0].norm() > 1e-14 { v[0] } else { v[1] };
    if leading.norm() == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let phase = leading / leading.norm();
    let correction = phase.conj();
    v[0] *= correction;
    v[1] *= correction;
    correction
}

/// Components of phibar (given by b over the phi pair) in the
/// Gram-Schmidt basis: phibar = (b1 + b2 r e^(i beta)) e1 + (b2 rt) e2.
fn b_to_gram_schmidt(b: &[Complex64; 2], ov: &MirrorOverlap) -> [Complex64; 2] {
    let rt = (1.0 - ov.r * ov.r).max(0.0).sqrt();
    let z = ov.as_complex();
    [b[0] + b[1] * z, b[1] * rt]
}

fn gram_schmidt_to_b(v: &[Complex64; 2], ov: &MirrorOverlap) -> [Complex64; 2] {
    let rt = (1.0 - ov.r * ov.r).sqrt();
    let b2 = v[1] / rt;
    [v[0] - b2 * ov.as_complex(), b2]
}

/// Assemble the full normal form once the mirror-side expansion rows are
/// known: invert b, build f_tilde^i = sum_j c_j (b^-1)[j][i] f_j, and
/// normalize.
fn normal_form_from_b(
    mode: &CompoundMode,
    wbar: [f64; 2],
    b: [[Complex64; 2]; 2],
    degenerate: bool,
) -> Result<NormalForm> {
    let det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    if det.norm() < 1e-300 {
        return Err(Error::domain("singular Schmidt coefficient matrix"));
    }
    // (b^-1)[j][i]: inverse of the matrix with rows indexed by the Schmidt
    // vector and columns by the original phi pair.
    let inv = [
        [b[1][1] / det, -b[0][1] / det],
        [-b[1][0] / det, b[0][0] / det],
    ];
    let mut fbar = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut alpha = [0.0f64; 2];
    for i in 0..2 {
        let ftilde = [mode.c1 * inv[0][i], mode.c2 * inv[1][i]];
        let norm = (ftilde[0].norm_sqr() + ftilde[1].norm_sqr()).sqrt();
        alpha[i] = norm;
        if norm > 1e-150 {
            fbar[i] = [ftilde[0] / norm, ftilde[1] / norm];
        } else {
            // Weightless second term: any unit vector orthogonal to fbar[0].
            fbar[i] = [-fbar[0][1].conj(), fbar[0][0].conj()];
        }
    }
    Ok(NormalForm { alpha, wbar, b, fbar, degenerate })
}

fn rank_one_normal_form(mode: &CompoundMode) -> NormalForm {
    // r = 1: chi = f_ideal (x) phi_in exactly; phibar1 = phi1, alpha = (1, 0).
    let mut fbar1 = [mode.c1, mode.c2];
    phase_fix(&mut fbar1);
    let fbar2 = [-fbar1[1].conj(), fbar1[0].conj()];
    NormalForm {
        alpha: [1.0, 0.0],
        wbar: [1.0, 0.0],
        b: [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ],
        fbar: [fbar1, fbar2],
        degenerate: false,
    }
}

fn single_term_normal_form(mode: &CompoundMode) -> NormalForm {
    // One coefficient vanishes: chi is already a product state.
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let first_is_populated = mode.w1() >= mode.w2();
    // The weightless second row is a formal placeholder, as in the r = 1 case.
    let (c, b1, b2) = if first_is_populated {
        (mode.c1, [one, zero], [zero, zero])
    } else {
        (mode.c2, [zero, one], [zero, zero])
    };
    let phase = c / c.norm();
    let mut fbar1 = if first_is_populated {
        [phase, zero]
    } else {
        [zero, phase]
    };
    phase_fix(&mut fbar1);
    let fbar2 = [-fbar1[1].conj(), fbar1[0].conj()];
    NormalForm {
        alpha: [1.0, 0.0],
        wbar: [1.0, 0.0],
        b: [b1, b2],
        fbar: [fbar1, fbar2],
        degenerate: false,
    }
}

/// Closed-form normal form via the eigenvalue formula
/// w_tilde = (1 +- sqrt(1 - 4 w1 w2 rt^2))/2 (rt^2 = 1 - r^2) and the
/// coefficient relation b2 = -((w_tilde - w2 rt^2)/(r w_tilde)) e^(-i beta) b1.
pub fn schmidt_closed(mode: &CompoundMode) -> Result<NormalForm> {
    let w1 = mode.w1();
    let w2 = mode.w2();
    let ov = mode.mirror_overlap();

    if w1 < 1e-15 || w2 < 1e-15 {
        return Ok(single_term_normal_form(mode));
    }
    if ov.r >= 1.0 - EDGE {
        return Ok(rank_one_normal_form(mode));
    }

    let rt2 = 1.0 - ov.r * ov.r;
    let gap2 = 1.0 - 4.0 * w1 * w2 * rt2; // discriminant of the spectrum

    if gap2.abs() <= EDGE {
        // Degenerate spectrum: return the Gram-Schmidt pair as the basis.
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let rt = rt2.sqrt();
        let mut b2 = [-ov.as_complex() / rt, one / rt];
        let mut v2 = b_to_gram_schmidt(&b2, &ov);
        let correction = phase_fix(&mut v2);
        b2[0] *= correction;
        b2[1] *= correction;
        return normal_form_from_b(mode, [0.5, 0.5], [[one, zero], b2], true);
    }

    if ov.r <= EDGE {
        // Orthogonal mirror states: chi is already in normal form.
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (rows, wbar) = if w1 >= w2 {
            ([[one, zero], [zero, one]], [w1, w2])
        } else {
            ([[zero, one], [one, zero]], [w2, w1])
        };
        return normal_form_from_b(mode, wbar, rows, false);
    }

    let gap = gap2.sqrt();
    // Stable small-eigenvalue form: w_tilde_minus = 2 w1 w2 rt^2 / (1 + gap).
    let wt_minus = 2.0 * w1 * w2 * rt2 / (1.0 + gap);
    let wt_plus = 0.5 * (1.0 + gap);
    // wbar = 1 - w_tilde, ordered descending.
    let wbar = [1.0 - wt_minus, 1.0 - wt_plus];

    let mut b = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, wt) in [wt_minus, wt_plus].iter().enumerate() {
        let slope = -(wt - w2 * rt2) / (ov.r * wt);
        let b2 = slope * Complex64::new(0.0, -ov.beta).exp();
        // Normalization from |b1|^2 + |b2|^2 + 2 Re{b1* b2 (phi1, phi2)} = 1;
        // the cross term is real: 2 slope r |b1|^2.
        let nf = 1.0 + slope * slope + 2.0 * slope * ov.r;
        if nf <= 0.0 {
            return Err(Error::domain("non-normalizable Schmidt vector"));
        }
        let b1 = 1.0 / nf.sqrt();
        let mut row = [Complex64::new(b1, 0.0), b1 * b2];
        let mut v = b_to_gram_schmidt(&row, &ov);
        let correction = phase_fix(&mut v);
        row[0] *= correction;
        row[1] *= correction;
        b[i] = row;
    }
    normal_form_from_b(mode, wbar, b, false)
}

/// Normal form via direct eigendecomposition of the reduced mirror
/// operator's 2x2 Hermitian matrix. Independent of the closed-form
/// eigenvalue and coefficient formulas; serves as the oracle for
/// `schmidt_closed`.
pub fn schmidt_numeric(mode: &CompoundMode) -> Result<NormalForm> {
    let w1 = mode.w1();
    let w2 = mode.w2();
    let ov = mode.mirror_overlap();
    if w1 < 1e-15 || w2 < 1e-15 {
        return Ok(single_term_normal_form(mode));
    }
    if ov.r >= 1.0 - EDGE {
        return Ok(rank_one_normal_form(mode));
    }

    let rho = reduced_mirror(mode);
    let a = rho.matrix[0][0].re;
    let d = rho.matrix[1][1].re;
    let z = rho.matrix[0][1];
    let (lo, hi) = rho.eigenvalues();
    let degenerate = (hi - lo).abs() <= EDGE;

    let mut b = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, lambda) in [hi, lo].iter().enumerate() {
        // Eigenvector of [[a, z], [z*, d]] for eigenvalue lambda.
        let mut v = if degenerate {
            if i == 0 {
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
            } else {
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
            }
        } else if z.norm() > 1e-150 {
            // Pick the better-conditioned of the two row equations.
            if (lambda - a).abs() >= (lambda - d).abs() {
                [z, Complex64::new(lambda - a, 0.0)]
            } else {
                [Complex64::new(lambda - d, 0.0), z.conj()]
            }
        } else if (a - lambda).abs() <= (d - lambda).abs() {
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        } else {
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
        };
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        v[0] /= norm;
        v[1] /= norm;
        phase_fix(&mut v);
        b[i] = gram_schmidt_to_b(&v, &ov);
    }
    normal_form_from_b(mode, [hi, lo], b, degenerate)
}

/// Maximum componentwise residual of the reconstruction
/// alpha1 fbar1 (x) phibar1 + alpha2 fbar2 (x) phibar2 = chi,
/// with both sides expanded over f_j (x) e_k (photon labels times the
/// Gram-Schmidt mirror basis).
pub fn reconstruction_residual(mode: &CompoundMode, nf: &NormalForm) -> f64 {
    let ov = mode.mirror_overlap();
    // chi over f_j (x) e_k
    let rt = (1.0 - ov.r * ov.r).max(0.0).sqrt();
    let z = ov.as_complex();
    let chi = [
        [mode.c1, Complex64::new(0.0, 0.0)],
        [mode.c2 * z, mode.c2 * rt],
    ];
    let mut residual = 0.0f64;
    for j in 0..2 {
        for k in 0..2 {
            let mut rebuilt = Complex64::new(0.0, 0.0);
            for i in 0..2 {
                let phibar = b_to_gram_schmidt(&nf.b[i], &ov);
                rebuilt += nf.alpha[i] * nf.fbar[i][j] * phibar[k];
            }
            residual = residual.max((rebuilt - chi[j][k]).norm());
        }
    }
    residual
}
