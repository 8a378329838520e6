use super::star::spoke_success;
use crate::error::{Error, Result};
use crate::model::{subscriber_age, SubscriptionProfile, SystemParams, Topology, TopologyClass};

/// Exact long-run mean age of every node under `profile`; `+inf` where no
/// subscriber feeds the node.
///
/// Covers stars and every graph whose nodes have at most one in-neighbour
/// (lines, out-trees, directed rings). Versions only ever originate at the
/// server, so a subscriber is never fresher via gossip and keeps `x_S`.
pub fn profile_ages(
    topology: &Topology,
    profile: &SubscriptionProfile,
    params: &SystemParams,
) -> Result<Vec<f64>> {
    profile.check_len(topology.node_count())?;
    match topology.class() {
        TopologyClass::Star { r } => Ok(star_ages(r, profile, params)),
        _ => forest_ages(topology, profile, params),
    }
}

fn star_ages(r: usize, profile: &SubscriptionProfile, params: &SystemParams) -> Vec<f64> {
    let x_s = subscriber_age(params);
    let hop = params.event_rate() / params.gossip_rate();
    let center = if profile.subscribes(0) {
        x_s
    } else {
        // center hears from k equally fresh subscribing spokes
        let k = (1..=r).filter(|&j| profile.subscribes(j)).count();
        if k == 0 {
            f64::INFINITY
        } else {
            x_s + params.event_rate() / spoke_success(params, k)
        }
    };
    std::iter::once(center)
        .chain((1..=r).map(|j| {
            if profile.subscribes(j) {
                x_s
            } else {
                center + hop
            }
        }))
        .collect()
}

fn forest_ages(
    topology: &Topology,
    profile: &SubscriptionProfile,
    params: &SystemParams,
) -> Result<Vec<f64>> {
    let n = topology.node_count();
    let mut parent = vec![None; n];
    for (i, slot) in parent.iter_mut().enumerate() {
        match topology.incoming(i) {
            [] => {}
            [(_, src)] => *slot = Some(*src),
            _ => {
                return Err(Error::UnsupportedTopology(format!(
                    "node {i} has {} in-neighbours",
                    topology.incoming(i).len()
                )))
            }
        }
    }
    let x_s = subscriber_age(params);
    let hop = params.event_rate() / params.gossip_rate();
    Ok((0..n)
        .map(|i| {
            let mut node = i;
            for hops in 0..n {
                if profile.subscribes(node) {
                    return x_s + hops as f64 * hop;
                }
                match parent[node] {
                    Some(up) => node = up,
                    None => return f64::INFINITY,
                }
            }
            // walked a full cycle without meeting a subscriber
            f64::INFINITY
        })
        .collect())
}
