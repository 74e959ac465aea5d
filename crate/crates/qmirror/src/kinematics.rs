//! One-dimensional photon-mirror recoil kinematics under momentum and
//! energy conservation, at normal incidence.
//!
//! The photon comes in along +x with momentum k > 0; the mirror is a
//! nonrelativistic mass M with momentum p. Conservation reads
//!
//!   k' + p' = k + p,    |k'| + p'^2 / 2M = k + p^2 / 2M
//!
//! and the reflected branch has k' < 0 with
//!
//!   |k'| = -k - (M + p) + [(M + p)^2 + 4 M k]^(1/2).

use serde::Serialize;

use crate::error::{Error, Result};

/// Threshold on max(|p|, k)/M below which the nonrelativistic
/// approximation (first-order error <= 0.1%) is considered valid.
pub const NONRELATIVISTIC_RATIO: f64 = 1e-3;

/// Incident photon momentum, mirror momentum, and mirror mass, all in
/// sec^-1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoilInput {
    pub photon_momentum: f64,
    pub mirror_momentum: f64,
    pub mirror_mass: f64,
}

impl RecoilInput {
    pub fn new(photon_momentum: f64, mirror_momentum: f64, mirror_mass: f64) -> Result<Self> {
        if !(photon_momentum.is_finite() && mirror_momentum.is_finite() && mirror_mass.is_finite())
        {
            return Err(Error::domain("recoil inputs must be finite"));
        }
        if photon_momentum <= 0.0 {
            return Err(Error::domain("photon momentum must be positive"));
        }
        if mirror_mass <= 0.0 {
            return Err(Error::domain("mirror mass must be positive"));
        }
        Ok(RecoilInput {
            photon_momentum,
            mirror_momentum,
            mirror_mass,
        })
    }

    /// True when |p| << M and k << M both hold at the 1e-3 level.
    pub fn nonrelativistic_valid(&self) -> bool {
        self.mirror_momentum.abs().max(self.photon_momentum) / self.mirror_mass
            < NONRELATIVISTIC_RATIO
    }
}

/// Post-reflection momenta plus the conservation residuals of the values
/// actually returned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RecoilOutcome {
    /// Signed photon momentum after reflection (negative on this branch).
    pub k_prime: f64,
    /// Mirror momentum after reflection.
    pub p_prime: f64,
    pub momentum_residual: f64,
    pub energy_residual: f64,
    /// False means the input sits outside the |p|, k << M regime; the
    /// exact solution still holds, this is a warning only.
    pub nonrelativistic: bool,
}

fn residuals(input: &RecoilInput, k_prime: f64, p_prime: f64) -> (f64, f64) {
    let k = input.photon_momentum;
    let p = input.mirror_momentum;
    let m = input.mirror_mass;
    let momentum = (k_prime + p_prime - k - p).abs();
    let energy = (k_prime.abs() + p_prime * p_prime / (2.0 * m) - k - p * p / (2.0 * m)).abs();
    (momentum, energy)
}

/// Exact closed-form solution of the reflected branch.
///
/// The square root difference is evaluated by conjugate multiplication,
/// |k'| = -k + 4Mk / (sqrt((M+p)^2 + 4Mk) + (M+p)), which avoids the
/// catastrophic cancellation the naive form suffers for M/k >~ 1e8.
pub fn recoil_exact(input: &RecoilInput) -> Result<RecoilOutcome> {
    let k = input.photon_momentum;
    let p = input.mirror_momentum;
    let m = input.mirror_mass;

    let a = m + p;
    let disc = a * a + 4.0 * m * k;
    let k_prime_mag = if a > 0.0 {
        -k + 4.0 * m * k / (disc.sqrt() + a)
    } else {
        -k - a + disc.sqrt()
    };
    if k_prime_mag <= 0.0 {
        return Err(Error::domain("no reflected solution"));
    }
    let k_prime = -k_prime_mag;
    let p_prime = k + p - k_prime;
    let (momentum_residual, energy_residual) = residuals(input, k_prime, p_prime);
    Ok(RecoilOutcome {
        k_prime,
        p_prime,
        momentum_residual,
        energy_residual,
        nonrelativistic: input.nonrelativistic_valid(),
    })
}

/// First-order solution k' = -k, p' = p + 2k.
///
/// Only valid in the nonrelativistic regime; the reported residuals are
/// nonzero by construction.
pub fn recoil_approx(input: &RecoilInput) -> Result<RecoilOutcome> {
    if !input.nonrelativistic_valid() {
        return Err(Error::domain(
            "approximation invalid: input is not nonrelativistic (max(|p|, k)/M >= 1e-3)",
        ));
    }
    let k_prime = -input.photon_momentum;
    let p_prime = input.mirror_momentum + 2.0 * input.photon_momentum;
    let (momentum_residual, energy_residual) = residuals(input, k_prime, p_prime);
    Ok(RecoilOutcome {
        k_prime,
        p_prime,
        momentum_residual,
        energy_residual,
        nonrelativistic: true,
    })
}

/// Defect of the rejected forward branch k' = +|k'|.
///
/// That branch would require 2M + |k'| = |k| + 2p; the returned defect
/// (2M + |k'|) - (|k| + 2p), evaluated with |k'| from the reflected
/// solution, exceeds M for every valid nonrelativistic input, which is the
/// contradiction eliminating forward scattering.
pub fn rejected_branch_check(input: &RecoilInput) -> Result<f64> {
    let outcome = recoil_exact(input)?;
    Ok(2.0 * input.mirror_mass + outcome.k_prime.abs()
        - input.photon_momentum
        - 2.0 * input.mirror_momentum)
}
