use serde::Serialize;

use super::oracle::{AgeOracle, AgeValue};
use crate::error::Result;
use crate::model::{ac_threshold, SubscriptionProfile, SystemParams, Topology};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeStatus {
    Stable,
    Unstable,
    /// The statistical margin is inside the confidence interval.
    Indeterminate,
}

/// Per-node stability evidence. For a non-subscriber `age` is its own mean
/// age; for a subscriber it is the age it would have after unsubscribing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeEvidence {
    pub node: usize,
    pub subscribed: bool,
    pub age: f64,
    pub half_width: f64,
    pub threshold: f64,
    /// `age - threshold`
    pub margin: f64,
    pub status: NodeStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub per_node: Vec<NodeEvidence>,
    /// All nodes `Stable`.
    pub overall: bool,
}

impl StabilityVerdict {
    pub fn unstable_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.per_node
            .iter()
            .filter(|e| e.status == NodeStatus::Unstable)
            .map(|e| e.node)
    }
}

/// How margins near zero are classified.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolerancePolicy {
    /// Margins within `tie_rel * threshold` count as exact equality, which
    /// destabilizes a non-subscriber and stabilizes a subscriber.
    pub tie_rel: f64,
    /// Report `Indeterminate` when `|margin|` is within the oracle's
    /// half-width.
    pub indeterminate_within_ci: bool,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            tie_rel: 1e-9,
            indeterminate_within_ci: true,
        }
    }
}

fn classify(
    subscribed: bool,
    value: AgeValue,
    threshold: f64,
    policy: &TolerancePolicy,
) -> NodeStatus {
    if value.divergent {
        // infinite age violates any finite bound
        return if subscribed {
            NodeStatus::Stable
        } else {
            NodeStatus::Unstable
        };
    }
    let margin = value.mean - threshold;
    if policy.indeterminate_within_ci && value.half_width > 0.0 && margin.abs() <= value.half_width
    {
        return NodeStatus::Indeterminate;
    }
    let at_or_above = margin >= -policy.tie_rel * threshold;
    // non-subscriber needs x_i < L x_S; subscriber needs x~_i >= L x_S
    if at_or_above == subscribed {
        NodeStatus::Stable
    } else {
        NodeStatus::Unstable
    }
}

/// Checks every user of `profile` for AC-stability under `oracle`.
pub fn is_ac_stable(
    topology: &Topology,
    profile: &SubscriptionProfile,
    params: &SystemParams,
    oracle: &dyn AgeOracle,
    policy: &TolerancePolicy,
) -> Result<StabilityVerdict> {
    profile.check_len(topology.node_count())?;
    let threshold = ac_threshold(params);
    let current = oracle.ages(topology, profile, params)?;
    let mut per_node = Vec::with_capacity(profile.len());
    for (node, own) in current.into_iter().enumerate() {
        let subscribed = profile.subscribes(node);
        let value = if subscribed {
            oracle.alternate_age(node, topology, profile, params)?
        } else {
            own
        };
        per_node.push(NodeEvidence {
            node,
            subscribed,
            age: value.mean,
            half_width: value.half_width,
            threshold,
            margin: value.mean - threshold,
            status: classify(subscribed, value, threshold, policy),
        });
    }
    let overall = per_node.iter().all(|e| e.status == NodeStatus::Stable);
    Ok(StabilityVerdict { per_node, overall })
}
