//! Brute-force enumeration of AC-stable profiles on small graphs, with the
//! server-preferred one picked out.
//!
//! cargo run --example equilibria

use gossip_age::equilibrium::{
    enumerate_stable_profiles, server_preferred, AnalyticOracle, TolerancePolicy,
    DEFAULT_ENUMERATION_CAP,
};
use gossip_age::{SystemParams, Topology};

fn report(name: &str, topology: &Topology, params: &SystemParams) -> gossip_age::Result<()> {
    let stable = enumerate_stable_profiles(
        topology,
        params,
        &AnalyticOracle,
        &TolerancePolicy::default(),
        DEFAULT_ENUMERATION_CAP,
    )?;
    println!("{name}: {} stable profiles", stable.len());
    for (profile, _) in &stable {
        println!("  {profile}");
    }
    let (best, f_s) = server_preferred(&stable)?;
    println!("  preferred {best} (F_S = {f_s:.4})\n");
    Ok(())
}

fn main() -> gossip_age::Result<()> {
    report(
        "line n=11",
        &Topology::line(11)?,
        &SystemParams::new(0.3, 0.6, 0.2, 10.0)?,
    )?;
    report(
        "star r=3",
        &Topology::star(3)?,
        &SystemParams::new(0.3, 0.7, 0.5, 2.5)?,
    )?;
    Ok(())
}
