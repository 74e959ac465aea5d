//! Mirror center-of-mass wavepackets in momentum space.
//!
//! Two representations: [`GaussianPacket`] carries the closed-form
//! amplitude
//!
//!   b(p) = (2 pi dp^2)^(-1/4) exp(-(p - p0)^2 / (4 dp^2)) exp(-i (p - p0) x0)
//!
//! and [`GridPacket`] holds the same amplitude sampled on a uniform
//! momentum grid, which is the representation the trapezoidal quadrature
//! oracle works on.
//!
//! Phase convention: the envelope phase is exp(-i (p - p0) x0), so that the
//! overlap of a packet with its momentum-shifted copy comes out as
//! exp(-dp'^2 / (8 dp^2)) exp(i dp' x0). Only the overlap magnitude enters
//! the decoherence conclusions; the phase is a documented convention.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Default number of grid samples (odd, so the grid has a center node).
pub const DEFAULT_GRID_POINTS: usize = 4097;
/// Default half-width of the grid in units of dp. Gaussian tails beyond
/// 10 sigma are below 1e-21 and irrelevant at the 1e-10 oracle tolerance.
pub const DEFAULT_GRID_SIGMAS: f64 = 10.0;

/// Gaussian mirror wavepacket: mean momentum p0, spread dp, mean position
/// x0, initial position spread dx0, mass. Momenta and mass in sec^-1,
/// positions in sec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    pub p0: f64,
    pub dp: f64,
    pub x0: f64,
    pub dx0: f64,
    pub mass: f64,
}

impl GaussianPacket {
    pub fn new(p0: f64, dp: f64, x0: f64, dx0: f64, mass: f64) -> Result<Self> {
        if !(p0.is_finite() && dp.is_finite() && x0.is_finite() && dx0.is_finite() && mass.is_finite())
        {
            return Err(Error::domain("packet parameters must be finite"));
        }
        if dp <= 0.0 || dx0 <= 0.0 || mass <= 0.0 {
            return Err(Error::domain("dp, dx0, and mass must be positive"));
        }
        if dp * dx0 < 0.5 * (1.0 - 1e-12) {
            return Err(Error::domain(format!(
                "uncertainty product dp*dx0 = {} violates dp*dx0 >= 1/2",
                dp * dx0
            )));
        }
        Ok(GaussianPacket { p0, dp, x0, dx0, mass })
    }

    /// Minimum-uncertainty packet: dx0 = 1 / (2 dp).
    pub fn minimum_uncertainty(p0: f64, dp: f64, x0: f64, mass: f64) -> Result<Self> {
        if !(dp.is_finite() && dp > 0.0) {
            return Err(Error::domain("dp must be positive"));
        }
        GaussianPacket::new(p0, dp, x0, 0.5 / dp, mass)
    }

    /// Momentum-space amplitude at p.
    pub fn amplitude(&self, p: f64) -> Complex64 {
        let norm = (2.0 * std::f64::consts::PI * self.dp * self.dp).powf(-0.25);
        let u = p - self.p0;
        let envelope = (-u * u / (4.0 * self.dp * self.dp)).exp();
        norm * envelope * Complex64::new(0.0, -u * self.x0).exp()
    }

    /// Packet with p0 shifted by delta_p; all other fields preserved.
    pub fn momentum_shift(&self, delta_p: f64) -> GaussianPacket {
        GaussianPacket {
            p0: self.p0 + delta_p,
            ..*self
        }
    }
}

/// Closed-form inner product of a packet with its own momentum-shifted
/// copy: exp(-delta_p^2 / (8 dp^2)) exp(i delta_p x0).
pub fn overlap_gaussian(packet: &GaussianPacket, delta_p: f64) -> Complex64 {
    let magnitude = (-delta_p * delta_p / (8.0 * packet.dp * packet.dp)).exp();
    magnitude * Complex64::new(0.0, delta_p * packet.x0).exp()
}

/// Closed-form inner product (a, b) = integral of a*(p) b(p) dp for two
/// Gaussian packets with arbitrary parameters.
pub fn overlap_gaussian_pair(a: &GaussianPacket, b: &GaussianPacket) -> Complex64 {
    // integrand exponent: -A p^2 + B p + C with complex B, C.
    let s1 = a.dp * a.dp;
    let s2 = b.dp * b.dp;
    let quad = 1.0 / (4.0 * s1) + 1.0 / (4.0 * s2);
    let lin = Complex64::new(a.p0 / (2.0 * s1) + b.p0 / (2.0 * s2), a.x0 - b.x0);
    let cst = Complex64::new(
        -a.p0 * a.p0 / (4.0 * s1) - b.p0 * b.p0 / (4.0 * s2),
        b.p0 * b.x0 - a.p0 * a.x0,
    );
    let norm = (2.0 * std::f64::consts::PI * s1).powf(-0.25)
        * (2.0 * std::f64::consts::PI * s2).powf(-0.25)
        * (std::f64::consts::PI / quad).sqrt();
    norm * (lin * lin / (4.0 * quad) + cst).exp()
}

/// Complex amplitude sampled on a uniform momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPacket {
    pub p_min: f64,
    pub p_step: f64,
    pub amplitudes: Vec<Complex64>,
}

impl GridPacket {
    /// Build from raw parts, enforcing the sampling and normalization
    /// invariants (>= 257 samples, trapezoidal norm within 1e-8 of 1).
    pub fn new(p_min: f64, p_step: f64, amplitudes: Vec<Complex64>) -> Result<Self> {
        if !(p_min.is_finite() && p_step.is_finite() && p_step > 0.0) {
            return Err(Error::domain("grid spacing must be positive and finite"));
        }
        if amplitudes.len() < 257 {
            return Err(Error::domain(format!(
                "grid needs >= 257 samples, got {}",
                amplitudes.len()
            )));
        }
        let packet = GridPacket { p_min, p_step, amplitudes };
        let norm = packet.norm();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::domain(format!(
                "grid trapezoidal norm {norm} deviates from 1 by more than 1e-8"
            )));
        }
        Ok(packet)
    }

    /// Sample a Gaussian packet on `points` nodes spanning
    /// p0 +- `sigmas` * dp.
    pub fn from_gaussian(packet: &GaussianPacket, points: usize, sigmas: f64) -> Result<Self> {
        if points < 257 {
            return Err(Error::domain("grid needs >= 257 samples"));
        }
        if sigmas < 10.0 {
            return Err(Error::domain("grid must span at least 10 dp either side"));
        }
        let p_min = packet.p0 - sigmas * packet.dp;
        let p_step = 2.0 * sigmas * packet.dp / (points as f64 - 1.0);
        let amplitudes = (0..points)
            .map(|i| packet.amplitude(p_min + i as f64 * p_step))
            .collect();
        GridPacket::new(p_min, p_step, amplitudes)
    }

    pub fn sampled(packet: &GaussianPacket) -> Result<Self> {
        Self::from_gaussian(packet, DEFAULT_GRID_POINTS, DEFAULT_GRID_SIGMAS)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Trapezoidal norm sum |b_i|^2 * p_step (end nodes half-weighted).
    pub fn norm(&self) -> f64 {
        trapezoid(self.amplitudes.iter().map(|a| a.norm_sqr()), self.p_step)
    }

    /// Momentum span covered by the grid.
    pub fn span(&self) -> f64 {
        self.p_step * (self.len() as f64 - 1.0)
    }

    /// Shift the sampled amplitude: b(p) -> b(p - delta_p).
    ///
    /// The integer-step part is a circular reindexing; the sub-step
    /// remainder is applied as a linear phase in position space (DFT shift
    /// theorem), which preserves the norm exactly.
    pub fn momentum_shift(&self, delta_p: f64) -> Result<GridPacket> {
        if delta_p.abs() >= self.span() {
            return Err(Error::domain("momentum shift exceeds grid span"));
        }
        let n = self.len();
        let shift_steps = delta_p / self.p_step;

        let mut data = self.amplitudes.clone();
        let mut planner = FftPlanner::<f64>::new();
        planner.plan_fft_forward(n).process(&mut data);
        for (m, value) in data.iter_mut().enumerate() {
            let signed = if m <= n / 2 { m as f64 } else { m as f64 - n as f64 };
            let phase = -2.0 * std::f64::consts::PI * signed * shift_steps / n as f64;
            *value *= Complex64::new(0.0, phase).exp();
        }
        planner.plan_fft_inverse(n).process(&mut data);
        let scale = 1.0 / n as f64;
        for value in data.iter_mut() {
            *value *= scale;
        }
        GridPacket::new(self.p_min, self.p_step, data)
    }

    /// Serialize as CSV with columns p, re, im.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,re,im\n");
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = self.p_min + i as f64 * self.p_step;
            out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", p, a.re, a.im));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<GridPacket> {
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header.trim() == "p,re,im" => {}
            _ => return Err(Error::config("expected CSV header: p,re,im")),
        }
        let mut ps = Vec::new();
        let mut amplitudes = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::config(format!(
                    "line {}: expected 3 fields, got {}",
                    lineno + 2,
                    fields.len()
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::config(format!("line {}: {e}", lineno + 2)))
            };
            ps.push(parse(fields[0])?);
            amplitudes.push(Complex64::new(parse(fields[1])?, parse(fields[2])?));
        }
        if ps.len() < 2 {
            return Err(Error::config("grid CSV needs at least 2 data rows"));
        }
        let p_step = ps[1] - ps[0];
        GridPacket::new(ps[0], p_step, amplitudes)
    }
}

fn trapezoid(values: impl Iterator<Item = f64>, step: f64) -> f64 {
    let values: Vec<f64> = values.collect();
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let interior: f64 = values[1..n - 1].iter().sum();
    (0.5 * (values[0] + values[n - 1]) + interior) * step
}

/// Trapezoidal inner product of two grid packets on identical grids.
pub fn overlap_grid(a: &GridPacket, b: &GridPacket) -> Result<Complex64> {
    let same_grid = a.len() == b.len()
        && (a.p_min - b.p_min).abs() <= 1e-9 * a.p_step
        && (a.p_step - b.p_step).abs() <= 1e-12 * a.p_step;
    if !same_grid {
        return Err(Error::domain("overlap_grid requires identical grids"));
    }
    let n = a.len();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let term = a.amplitudes[i].conj() * b.amplitudes[i];
        let weight = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        sum += weight * term;
    }
    Ok(sum * a.p_step)
}

/// Position spread at time t per the linear bound
/// dx(t) = dx(0) + (dp / M) t.
///
/// This is the linear law, not the exact free-Gaussian
/// sqrt(dx0^2 + (dp t / M)^2); the two differ by at most sqrt(2).
pub fn spread_at_time(packet: &GaussianPacket, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain("time must be non-negative"));
    }
    Ok(packet.dx0 + packet.dp / packet.mass * t)
}

/// Recoil displacement dx(t) = (delta_p / M) t.
pub fn displacement(delta_p: f64, mass: f64, t: f64) -> f64 {
    debug_assert!(mass > 0.0 && t >= 0.0);
    delta_p / mass * t
}

/// Lower bound on kappa = dp/k from the uncertainty relation:
/// kappa >= lambda / (4 pi dx0). The 4 pi is this implementation's
/// constant, obtained from dp dx0 >= 1/2 with k = 2 pi / lambda.
pub fn kappa_lower_bound(lambda: f64, dx0: f64) -> f64 {
    lambda / (4.0 * std::f64::consts::PI * dx0)
}
