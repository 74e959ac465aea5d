//! Numerical model of a single photon interacting with a movable quantum
//! mirror: recoil kinematics, mirror wavepacket overlap, photon-mirror
//! entanglement in normal (Schmidt) form, and the momentum-uncertainty
//! criterion separating full interference from which-path breakdown.
//!
//! All physics modules work in natural units (hbar = c = 1): momentum,
//! energy, mass, and temperature carry sec^-1, lengths carry sec. The
//! [`units`] module converts laboratory units (grams, kelvin, centimeters)
//! into that system.

// Index loops read better than iterator chains for the fixed 2x2
// operator algebra used throughout.
#![allow(clippy::needless_range_loop)]

pub mod entangle;
pub mod error;
pub mod kinematics;
pub mod observables;
pub mod plot;
pub mod scenario;
pub mod units;
pub mod wavepacket;

pub use error::{Error, Result};
