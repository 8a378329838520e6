//! Star thresholds and the equilibrium regime at each sampling rate.
//!
//! cargo run --example star_regimes

use gossip_age::analytic::{star_regime, star_thresholds};
use gossip_age::SystemParams;

fn main() -> gossip_age::Result<()> {
    let r = 3;
    let base = SystemParams::new(0.3, 1.0, 0.5, 2.5)?;
    let th = star_thresholds(&base, r)?;

    for (k, rate) in th.beta_k.iter().enumerate() {
        println!("beta_{} = {rate}", k + 1);
    }
    println!("beta_c = {}", th.beta_c);
    println!("beta_r = {}", th.beta_r);

    println!("\nbeta  regime              profile  F_S");
    for i in 1..=10 {
        let beta = i as f64 * 0.1;
        let rep = star_regime(beta, &base.with_sample_rate(beta)?, r)?;
        println!(
            "{beta:.1}   {:<19} {}     {:.3}",
            format!("{:?}", rep.regime),
            rep.profile,
            rep.f_s
        );
    }
    Ok(())
}
