//! Monte Carlo simulation of physical-layer security in links assisted by a
//! reconfigurable intelligent surface (RIS).
//!
//! A single-antenna transmitter talks to a legitimate receiver while a
//! passive eavesdropper listens. Both receivers see a blocked direct path and
//! a cascaded path through an `N`-element RIS whose phases are set from the
//! legitimate channel only. The crate estimates the mean secrecy rate and the
//! secrecy outage probability by seeded Monte Carlo over Rayleigh fading, and
//! sweeps them over RIS angle, element count, path-loss exponent,
//! eavesdropper distance and phase bit depth.
//!
//! ```
//! use ris_secrecy::montecarlo::{run_scenario, ScenarioConfig};
//!
//! let mut cfg = ScenarioConfig::default();
//! cfg.trials = 200;
//! let out = run_scenario(&cfg).unwrap();
//! assert!(out.rate.mean > 0.0);
//! assert!(out.outage.ci_low <= out.outage.mean);
//! ```

pub mod channel;
pub mod cli;
mod error;
pub mod geometry;
pub mod metrics;
pub mod montecarlo;
pub mod ris;

pub use error::{Error, Result};
