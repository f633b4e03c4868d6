//! Per-realization link quality and secrecy metrics.

use num_complex::Complex64;

use crate::{Error, Result};

/// Instantaneous secrecy figures for one channel realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecySample {
    pub gamma_rx: f64,
    pub gamma_eve: f64,
    /// Secrecy rate, bits/s/Hz.
    pub c_s: f64,
}

impl SecrecySample {
    pub fn new(gamma_rx: f64, gamma_eve: f64) -> Self {
        Self { gamma_rx, gamma_eve, c_s: secrecy_rate(gamma_rx, gamma_eve) }
    }
}

pub fn snr(h_eff: Complex64, p_tx: f64, noise: f64) -> Result<f64> {
    if !(noise > 0.0) {
        return Err(Error::NonpositiveNoise(noise));
    }
    Ok(p_tx * h_eff.norm_sqr() / noise)
}

/// Signal to interference-plus-noise ratio with a single jammer.
pub fn sinr(h_sig: Complex64, p_sig: f64, h_jam: Complex64, p_jam: f64, noise: f64) -> Result<f64> {
    if !(noise > 0.0) {
        return Err(Error::NonpositiveNoise(noise));
    }
    Ok(p_sig * h_sig.norm_sqr() / (p_jam * h_jam.norm_sqr() + noise))
}

/// `max(0, log2(1 + gamma_rx) - log2(1 + gamma_eve))`.
pub fn secrecy_rate(gamma_rx: f64, gamma_eve: f64) -> f64 {
    if gamma_rx <= gamma_eve {
        return 0.0;
    }
    (gamma_rx.ln_1p() - gamma_eve.ln_1p()).max(0.0) / std::f64::consts::LN_2
}

/// 1 when the secrecy rate misses the target `r_th`.
pub fn outage_indicator(c_s: f64, r_th: f64) -> u8 {
    u8::from(c_s < r_th)
}
