//! The server's rate choice under cost `80 beta^2` for lines, binary trees
//! and a 100-spoke star.
//!
//! cargo run --release --example stackelberg

use gossip_age::equilibrium::{
    optimize_beta, AnalyticOracle, CostFunction, OptimizeTarget, SearchSettings,
};
use gossip_age::SystemParams;

fn main() -> gossip_age::Result<()> {
    let base = SystemParams::new(0.3, 1.0, 0.2, 10.0)?;
    let cost = CostFunction::quadratic(80.0)?;
    let search = SearchSettings::default();

    println!("target       beta*      K      F_S        utility");
    for target in [
        OptimizeTarget::Line,
        OptimizeTarget::Tree { r: 2 },
        OptimizeTarget::Star { r: 100 },
    ] {
        let rep = optimize_beta(&target, &base, &cost, &search, &AnalyticOracle)?;
        let k = rep.spacing.map_or("-".to_string(), |k| k.to_string());
        println!(
            "{:<12} {:<10.6} {:<6} {:<10.6} {:.6}",
            rep.target, rep.beta_star, k, rep.f_s, rep.utility
        );
    }
    Ok(())
}
