//! Arbitrary directed graph, where no closed form applies: stability is
//! checked against Monte Carlo age estimates.
//!
//! cargo run --release --example general_graph

use gossip_age::equilibrium::{
    enumerate_stable_profiles, is_ac_stable, server_preferred, SimOracle, TolerancePolicy,
};
use gossip_age::sim::SimConfig;
use gossip_age::{SubscriptionProfile, SystemParams, Topology};

fn main() -> gossip_age::Result<()> {
    let graph = Topology::general(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])?;
    let params = SystemParams::new(0.3, 0.5, 0.4, 4.0)?;
    let oracle = SimOracle {
        config: SimConfig::new(4_000, 256, 11)?,
    };
    let policy = TolerancePolicy::default();

    let head_only = SubscriptionProfile::parse("1000").expect("valid bits");
    let verdict = is_ac_stable(&graph, &head_only, &params, &oracle, &policy)?;
    // Subscribers are judged by their age after unsubscribing.
    for ev in &verdict.per_node {
        let kind = if ev.subscribed {
            "alternate age"
        } else {
            "age"
        };
        println!(
            "node {} {kind} {:.3} +/- {:.3} threshold {:.3} {:?}",
            ev.node, ev.age, ev.half_width, ev.threshold, ev.status
        );
    }
    println!("1000 stable: {}\n", verdict.overall);

    let stable = enumerate_stable_profiles(&graph, &params, &oracle, &policy, 8)?;
    for (profile, v) in &stable {
        println!("stable {profile} ({} nodes checked)", v.per_node.len());
    }
    match server_preferred(&stable) {
        Ok((best, f_s)) => println!("preferred {best} (F_S = {f_s:.3})"),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
