//! Large-scale path loss and small-scale Rayleigh fading.
//!
//! Fading coefficients are unit-variance; path loss scales amplitudes only
//! when a channel is composed, so one realization can be reused across
//! path-loss exponents and distances.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Power and propagation constants shared by every link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Transmit power, dBm.
    pub p_tx_dbm: f64,
    /// Receiver noise power, dBm.
    pub noise_dbm: f64,
    /// Attenuation at the reference distance, dB.
    pub c0_db: f64,
    /// Reference distance, meters.
    pub d0_m: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Extra attenuation on the direct Tx-Rx and Tx-Eve links, dB.
    pub blockage_db: f64,
}

impl Default for LinkBudget {
    fn default() -> Self {
        Self {
            p_tx_dbm: 20.0,
            noise_dbm: -100.0,
            c0_db: 30.0,
            d0_m: 1.0,
            alpha: 2.5,
            blockage_db: 50.0,
        }
    }
}

impl LinkBudget {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidLinkBudget(msg));
        if !(self.d0_m > 0.0 && self.d0_m.is_finite()) {
            return bad(format!("d0 must be positive, got {}", self.d0_m));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if !(self.c0_db >= 0.0 && self.c0_db.is_finite()) {
            return bad(format!("c0 must be a nonnegative attenuation, got {} dB", self.c0_db));
        }
        if !(self.blockage_db >= 0.0 && self.blockage_db.is_finite()) {
            return bad(format!("blockage must be nonnegative, got {} dB", self.blockage_db));
        }
        if !self.p_tx_dbm.is_finite() || !self.noise_dbm.is_finite() {
            return bad("transmit and noise powers must be finite".into());
        }
        Ok(())
    }

    pub fn p_tx_watts(&self) -> f64 {
        dbm_to_watts(self.p_tx_dbm)
    }

    pub fn noise_watts(&self) -> f64 {
        dbm_to_watts(self.noise_dbm)
    }

    pub fn path_loss(&self, d: f64) -> Result<f64> {
        path_loss_linear(d, self)
    }
}

/// Linear power gain `10^(-c0/10) * (d/d0)^(-alpha)`.
pub fn path_loss_linear(d: f64, b: &LinkBudget) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::NonpositiveDistance(d));
    }
    Ok(db_to_gain(-b.c0_db) * (d / b.d0_m).powf(-b.alpha))
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_gain(dbm - 30.0)
}

/// `10^(db/10)`, exact for integer multiples of 10 dB.
pub(crate) fn db_to_gain(db: f64) -> f64 {
    let tenths = db / 10.0;
    if tenths.fract() == 0.0 && tenths.abs() <= 300.0 {
        // powi is exact for these, powf is not guaranteed to be
        let p = 10f64.powi(tenths.abs() as i32);
        if tenths < 0.0 {
            1.0 / p
        } else {
            p
        }
    } else {
        10f64.powf(tenths)
    }
}

/// Identifies the random stream of one Monte Carlo trial.
///
/// Every trial owns an independent ChaCha8 stream: the key is derived from
/// `seed` and the stream id is `trial_index`, so the draws of a trial do not
/// depend on which other trials ran or in what order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub trial_index: u64,
}

impl RngStream {
    pub const fn new(seed: u64, trial_index: u64) -> Self {
        Self { seed, trial_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// One draw of every small-scale fading coefficient in the scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Tx to RIS, per element.
    pub h: Vec<Complex64>,
    /// RIS to legitimate receiver, per element.
    pub g_rx: Vec<Complex64>,
    /// RIS to eavesdropper, per element.
    pub g_eve: Vec<Complex64>,
    /// Direct Tx to legitimate receiver.
    pub f_rx: Complex64,
    /// Direct Tx to eavesdropper.
    pub f_eve: Complex64,
}

impl ChannelRealization {
    pub fn n_elements(&self) -> usize {
        self.h.len()
    }
}

/// `CN(0, 1)` from two standard normals: real part first, then imaginary.
pub fn complex_gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draws a full realization for an `n`-element surface.
///
/// Draw order is fixed: `h[0..n]`, `g_rx[0..n]`, `g_eve[0..n]`, `f_rx`,
/// `f_eve`, each coefficient consuming two standard normals (re, im).
pub fn sample_small_scale(stream: RngStream, n: usize) -> Result<ChannelRealization> {
    if n == 0 {
        return Err(Error::ZeroElements);
    }
    let mut rng = stream.rng();
    let mut draw = |k: usize| (0..k).map(|_| complex_gaussian(&mut rng)).collect::<Vec<_>>();
    let h = draw(n);
    let g_rx = draw(n);
    let g_eve = draw(n);
    let f_rx = complex_gaussian(&mut rng);
    let f_eve = complex_gaussian(&mut rng);
    Ok(ChannelRealization {
        h,
        g_rx,
        g_eve,
        f_rx,
        f_eve,
    })
}

/// `sqrt(pl_hop1 * pl_hop2) * sum_i h_i e^{j phi_i} g_i`.
pub fn cascaded_channel(
    h: &[Complex64],
    g: &[Complex64],
    phases: &[f64],
    pl_hop1: f64,
    pl_hop2: f64,
) -> Result<Complex64> {
    if h.len() != g.len() {
        return Err(Error::LengthMismatch { left: h.len(), right: g.len() });
    }
    if h.len() != phases.len() {
        return Err(Error::LengthMismatch { left: h.len(), right: phases.len() });
    }
    let sum: Complex64 = h
        .iter()
        .zip(g)
        .zip(phases)
        .map(|((h, g), &phi)| h * Complex64::cis(phi) * g)
        .sum();
    Ok(sum * (pl_hop1 * pl_hop2).sqrt())
}

/// Same as [`cascaded_channel`] with precomputed unit phasors `e^{j phi_i}`.
pub(crate) fn cascade_with_phasors(
    h: &[Complex64],
    g: &[Complex64],
    phasors: &[Complex64],
    amplitude: f64,
) -> Complex64 {
    let sum: Complex64 = h
        .iter()
        .zip(g)
        .zip(phasors)
        .map(|((h, g), p)| h * p * g)
        .sum();
    sum * amplitude
}

/// Direct link `f * sqrt(pl * 10^(-blockage/10))`.
pub fn direct_channel(f: Complex64, pl: f64, blockage_db: f64) -> Complex64 {
    f * (pl * db_to_gain(-blockage_db)).sqrt()
}
