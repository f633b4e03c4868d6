//! RIS reflection-phase profiles.
//!
//! Phases are kept in `(-pi, pi]`. A `b`-bit profile uses the grid
//! `k * 2pi / 2^b` for integer `k` in `(-2^(b-1), 2^(b-1)]`, so the half-turn
//! is always represented as `+pi`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;

use crate::channel::RngStream;
use crate::{Error, Result};

pub const MAX_QUANTIZATION_BITS: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct RisPhaseProfile {
    pub phases: Vec<f64>,
    /// Bit depth of the phase grid, `None` for continuous phases.
    pub quantization_bits: Option<u32>,
}

impl RisPhaseProfile {
    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Unit-amplitude reflection coefficients `e^{j phi_i}`.
    pub fn phasors(&self) -> Vec<Complex64> {
        self.phases.iter().map(|&p| Complex64::cis(p)).collect()
    }
}

/// Maps any finite angle into `(-pi, pi]`.
pub fn wrap_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Co-phases every cascaded term at the legitimate receiver:
/// `phi_i = -arg(h_i g_i)`.
///
/// An element with `h_i g_i == 0` has no defined phase and gets `0`.
pub fn optimal_phases(h: &[Complex64], g_rx: &[Complex64]) -> Result<RisPhaseProfile> {
    if h.len() != g_rx.len() {
        return Err(Error::LengthMismatch { left: h.len(), right: g_rx.len() });
    }
    let phases = h
        .iter()
        .zip(g_rx)
        .enumerate()
        .map(|(i, (h, g))| {
            let prod = h * g;
            if prod.re == 0.0 && prod.im == 0.0 {
                log::warn!("element {i}: h*g is exactly zero, using phase 0");
                0.0
            } else {
                wrap_phase(-prod.arg())
            }
        })
        .collect();
    Ok(RisPhaseProfile { phases, quantization_bits: None })
}

fn check_bits(bits: u32) -> Result<()> {
    if (1..=MAX_QUANTIZATION_BITS).contains(&bits) {
        Ok(())
    } else {
        Err(Error::InvalidBitDepth(bits))
    }
}

/// The `2^bits` grid points in ascending order.
pub fn phase_grid(bits: u32) -> Result<Vec<f64>> {
    check_bits(bits)?;
    let levels = 1i64 << bits;
    let step = TAU / levels as f64;
    Ok((-levels / 2 + 1..=levels / 2).map(|k| k as f64 * step).collect())
}

/// Nearest grid point under circular distance; exact halfway cases go to
/// the smaller representative.
pub fn quantize_phase(phi: f64, bits: u32) -> Result<f64> {
    check_bits(bits)?;
    let levels = 1i64 << bits;
    let step = TAU / levels as f64;
    let canonical = |k: i64| {
        let k = k.rem_euclid(levels);
        let k = if k > levels / 2 { k - levels } else { k };
        k as f64 * step
    };
    let phi = wrap_phase(phi);
    let below = (phi / step).floor() as i64;
    let (lo, hi) = (below as f64 * step, (below + 1) as f64 * step);
    let (d_lo, d_hi) = (phi - lo, hi - phi);
    let (a, b) = (canonical(below), canonical(below + 1));
    Ok(if d_lo < d_hi {
        a
    } else if d_hi < d_lo {
        b
    } else {
        a.min(b)
    })
}

pub fn quantize_phases(p: &RisPhaseProfile, bits: u32) -> Result<RisPhaseProfile> {
    check_bits(bits)?;
    let phases = p
        .phases
        .iter()
        .map(|&phi| quantize_phase(phi, bits))
        .collect::<Result<_>>()?;
    Ok(RisPhaseProfile { phases, quantization_bits: Some(bits) })
}

/// I.i.d. uniform phases on `(-pi, pi]`, a baseline with no channel knowledge.
///
/// Draws from the stream's own generator, so give it a stream that is not
/// also used for fading when both are needed in one trial.
pub fn random_phases(stream: RngStream, n: usize) -> Result<RisPhaseProfile> {
    if n == 0 {
        return Err(Error::ZeroElements);
    }
    let mut rng = stream.rng();
    let phases = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            PI - TAU * u
        })
        .collect();
    Ok(RisPhaseProfile { phases, quantization_bits: None })
}
