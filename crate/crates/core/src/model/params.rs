use serde::Serialize;

use crate::error::{Error, Result};

/// Slotted system parameters.
///
/// Every probability lives in `(0, 1]`; the age tolerance multiplier is at
/// least one. Instances are validated on construction and immutable after.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    event_rate: f64,
    sample_rate: f64,
    gossip_rate: f64,
    tolerance: f64,
}

fn check_prob(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParam {
            name,
            value,
            reason: "must lie in (0, 1]",
        })
    }
}

impl SystemParams {
    /// `event_rate` is the per-slot event update probability, `sample_rate`
    /// the per-slot server sampling probability, `gossip_rate` the per-edge
    /// per-slot forwarding probability and `tolerance` the multiplier `L` of
    /// the age compatibility bound `x_i < L x_S`.
    pub fn new(
        event_rate: f64,
        sample_rate: f64,
        gossip_rate: f64,
        tolerance: f64,
    ) -> Result<Self> {
        let tolerance = if tolerance.is_finite() && tolerance >= 1.0 {
            tolerance
        } else {
            return Err(Error::InvalidParam {
                name: "L",
                value: tolerance,
                reason: "must be finite and >= 1",
            });
        };
        Ok(Self {
            event_rate: check_prob("p_e", event_rate)?,
            sample_rate: check_prob("beta", sample_rate)?,
            gossip_rate: check_prob("p", gossip_rate)?,
            tolerance,
        })
    }

    /// Same parameters with a different server sampling rate.
    pub fn with_sample_rate(&self, sample_rate: f64) -> Result<Self> {
        Ok(Self {
            sample_rate: check_prob("beta", sample_rate)?,
            ..*self
        })
    }

    pub fn event_rate(&self) -> f64 {
        self.event_rate
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn gossip_rate(&self) -> f64 {
        self.gossip_rate
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}
