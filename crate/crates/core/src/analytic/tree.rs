use super::line::line_k_star;
use crate::error::{Error, Result};
use crate::model::{SubscriptionProfile, SystemParams, Topology};

/// Subscriber fraction on an infinite `r`-ary out-tree, `(r-1)/(r^K - 1)`:
/// every root-to-leaf path is a directed line, so whole levels `0, K, 2K, ...`
/// subscribe and each subscriber serves a cell of `(r^K - 1)/(r - 1)` users.
pub fn tree_fs(params: &SystemParams, r: usize) -> Result<f64> {
    if r < 2 {
        return Err(Error::InvalidTopology(format!(
            "tree needs r >= 2, got {r}"
        )));
    }
    let k = line_k_star(params);
    let r = r as f64;
    Ok((r - 1.0) / (r.powf(k as f64) - 1.0))
}

/// Level-periodic AC-stable profile of a materialized tree.
pub fn tree_profile(topology: &Topology, params: &SystemParams) -> Result<SubscriptionProfile> {
    let k = line_k_star(params) as usize;
    let n = topology.node_count();
    let levels = (0..n)
        .map(|i| topology.tree_level(i))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            Error::InvalidTopology("tree profile needs a tree-tagged topology".into())
        })?;
    Ok(SubscriptionProfile::new(
        levels.into_iter().map(|lvl| lvl % k == 0).collect(),
    ))
}
