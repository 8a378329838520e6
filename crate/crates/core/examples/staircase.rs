//! Subscriber spacing K as a function of the sampling rate, and the rates
//! `beta*(K)` at which it steps.
//!
//! cargo run --example staircase

use gossip_age::analytic::{line_beta_star, line_fs, line_k_star};
use gossip_age::SystemParams;

fn main() -> gossip_age::Result<()> {
    let base = SystemParams::new(0.3, 1.0, 0.2, 10.0)?;

    println!("K   beta*(K)");
    for k in 2..=12 {
        println!("{k:<3} {}", line_beta_star(k, &base)?);
    }

    println!("\nbeta   K   F_S");
    for i in 1..=20 {
        let beta = i as f64 * 0.05;
        let params = base.with_sample_rate(beta)?;
        println!(
            "{beta:.2}  {:<3} {:.4}",
            line_k_star(&params),
            line_fs(&params)
        );
    }
    Ok(())
}
