//! Planar node placement.
//!
//! The transmitter sits at the origin. The legitimate receiver and the
//! eavesdropper lie on the positive horizontal axis, and the RIS is raised
//! off that axis by an elevation angle `theta` at horizontal offset `d_tr`,
//! i.e. at `(d_tr, d_tr * tan(theta))`. The true Tx-RIS distance is therefore
//! `d_tr / cos(theta)`.

use std::f64::consts::FRAC_PI_2;

use crate::{Error, Result};

/// Placement parameters from which every link distance is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Topology {
    /// Horizontal offset of the RIS from the transmitter, meters.
    pub d_tr: f64,
    /// Transmitter to eavesdropper distance, meters.
    pub d_te: f64,
    /// Transmitter to legitimate receiver distance, meters.
    pub d_tl: f64,
    /// RIS elevation angle, radians in `[0, pi/2)`.
    pub theta: f64,
}

impl Default for Topology {
    fn default() -> Self {
        Self {
            d_tr: 20.0,
            d_te: 30.0,
            d_tl: 40.0,
            theta: 10f64.to_radians(),
        }
    }
}

impl Topology {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("d_tr", self.d_tr), ("d_te", self.d_te), ("d_tl", self.d_tl)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidTopology(format!("{name} must be positive, got {v}")));
            }
        }
        if !(0.0..FRAC_PI_2).contains(&self.theta) {
            return Err(Error::InvalidTopology(format!(
                "theta must lie in [0, pi/2) rad, got {}",
                self.theta
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodePositions {
    pub tx: Point,
    pub ris: Point,
    pub rx: Point,
    pub eve: Point,
}

/// Euclidean distances of every link in the scenario, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkDistances {
    pub d_tx_ris: f64,
    pub d_ris_rx: f64,
    pub d_ris_eve: f64,
    pub d_tx_rx: f64,
    pub d_tx_eve: f64,
}

pub fn node_positions(t: &Topology) -> Result<NodePositions> {
    t.validate()?;
    Ok(NodePositions {
        tx: Point::new(0.0, 0.0),
        ris: Point::new(t.d_tr, t.d_tr * t.theta.tan()),
        rx: Point::new(t.d_tl, 0.0),
        eve: Point::new(t.d_te, 0.0),
    })
}

pub fn link_distances(t: &Topology) -> Result<LinkDistances> {
    let p = node_positions(t)?;
    Ok(LinkDistances {
        d_tx_ris: p.tx.distance(&p.ris),
        d_ris_rx: p.ris.distance(&p.rx),
        d_ris_eve: p.ris.distance(&p.eve),
        d_tx_rx: p.tx.distance(&p.rx),
        d_tx_eve: p.tx.distance(&p.eve),
    })
}
