//! Five-node line with only the head subscribing: simulated ages next to
//! the closed form `x_S + k p_e / p`.
//!
//! cargo run --release --example line_ages

use gossip_age::analytic::{line_k_star, line_node_age};
use gossip_age::sim::{estimate_ages, SimConfig};
use gossip_age::{SubscriptionProfile, SystemParams, Topology};

fn main() -> gossip_age::Result<()> {
    let params = SystemParams::new(0.3, 0.6, 0.2, 10.0)?;
    let line = Topology::line(5)?;
    let profile = SubscriptionProfile::from_subscribers(5, [0]);
    let config = SimConfig::new(10_000, 4_000, 2024)?;
    let est = estimate_ages(&line, &profile, &params, &config)?;

    println!("k  simulated          analytic");
    for k in 0..5 {
        println!(
            "{k}  {:.4} +/- {:.4}  {:.4}",
            est.mean[k],
            est.ci_half_width[k],
            line_node_age(k as u64, &params)
        );
    }
    println!("critical spacing K = {}", line_k_star(&params));
    Ok(())
}
