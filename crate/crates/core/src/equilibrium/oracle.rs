use serde::Serialize;

use crate::analytic::profile_ages;
use crate::error::Result;
use crate::model::{SubscriptionProfile, SystemParams, Topology};
use crate::sim::{estimate_ages, SimConfig};

/// Mean age of one node as reported by an oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AgeValue {
    pub mean: f64,
    /// Zero for exact oracles.
    pub half_width: f64,
    pub divergent: bool,
}

impl AgeValue {
    pub fn exact(mean: f64) -> Self {
        Self {
            mean,
            half_width: 0.0,
            divergent: mean.is_infinite(),
        }
    }
}

/// Source of long-run node ages for a given profile.
pub trait AgeOracle: Sync {
    fn ages(
        &self,
        topology: &Topology,
        profile: &SubscriptionProfile,
        params: &SystemParams,
    ) -> Result<Vec<AgeValue>>;

    /// Age of `node` after it alone flips its decision.
    fn alternate_age(
        &self,
        node: usize,
        topology: &Topology,
        profile: &SubscriptionProfile,
        params: &SystemParams,
    ) -> Result<AgeValue> {
        Ok(self.ages(topology, &profile.flipped(node), params)?[node])
    }
}

/// Closed-form ages; see [`profile_ages`] for the supported topologies.
#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyticOracle;

impl AgeOracle for AnalyticOracle {
    fn ages(
        &self,
        topology: &Topology,
        profile: &SubscriptionProfile,
        params: &SystemParams,
    ) -> Result<Vec<AgeValue>> {
        Ok(profile_ages(topology, profile, params)?
            .into_iter()
            .map(AgeValue::exact)
            .collect())
    }
}

/// Monte Carlo ages with 95% confidence half-widths.
#[derive(Debug, Clone, Copy)]
pub struct SimOracle {
    pub config: SimConfig,
}

impl AgeOracle for SimOracle {
    fn ages(
        &self,
        topology: &Topology,
        profile: &SubscriptionProfile,
        params: &SystemParams,
    ) -> Result<Vec<AgeValue>> {
        let est = estimate_ages(topology, profile, params, &self.config)?;
        Ok((0..topology.node_count())
            .map(|i| AgeValue {
                mean: est.mean[i],
                half_width: est.ci_half_width[i],
                divergent: est.divergent[i],
            })
            .collect())
    }
}
