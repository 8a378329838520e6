//! Binary tree of depth 10: the subscriber fraction of the materialized
//! equilibrium against the infinite-tree closed form.
//!
//! cargo run --example tree_cells

use gossip_age::analytic::{line_fs, line_k_star, tree_fs, tree_profile};
use gossip_age::{SystemParams, Topology};

fn main() -> gossip_age::Result<()> {
    let params = SystemParams::new(0.3, 0.5625, 0.2, 10.0)?;
    let tree = Topology::tree(2, 10)?;
    let profile = tree_profile(&tree, &params)?;

    let k = line_k_star(&params);
    println!("K = {k}");
    println!(
        "subscribers {} of {} nodes = {:.6}",
        profile.subscriber_count(),
        tree.node_count(),
        profile.fraction()
    );
    println!("tree closed form      = {:.6}", tree_fs(&params, 2)?);
    println!("line at the same rate = {:.6}", line_fs(&params));
    Ok(())
}
