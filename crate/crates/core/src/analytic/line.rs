use super::snapped_ceil;
use crate::error::{Error, Result};
use crate::model::{subscriber_age, ExtendedRate, SubscriptionProfile, SystemParams};

/// Mean age `k` hops downstream of the nearest subscriber on a directed
/// path: `x_S + k p_e / p`.
pub fn line_node_age(k: u64, params: &SystemParams) -> f64 {
    subscriber_age(params) + k as f64 * params.event_rate() / params.gossip_rate()
}

/// Hop distance at which a non-subscriber's age reaches `L x_S`:
/// `p (L - 1) (1/beta + 1)`.
pub fn critical_spacing(params: &SystemParams) -> f64 {
    params.gossip_rate() * (params.tolerance() - 1.0) * (1.0 / params.sample_rate() + 1.0)
}

/// Subscription spacing `K` on a directed line: the smallest `K` with
/// `x_{K-1} < L x_S <= x_K`.
///
/// When the spacing formula lands exactly on an integer the node at that
/// distance subscribes. `L = 1` gives `K = 0`, which is clamped to 1: every
/// node subscribes.
pub fn line_k_star(params: &SystemParams) -> u64 {
    (snapped_ceil(critical_spacing(params)) as u64).max(1)
}

/// Subscriber fraction on the semi-infinite line, `1/K`.
pub fn line_fs(params: &SystemParams) -> f64 {
    1.0 / line_k_star(params) as f64
}

/// Smallest sampling rate that sustains spacing `k`:
/// `(k / (p (L - 1)) - 1)^{-1}`.
///
/// A nonpositive denominator means no rate produces spacing `k` and yields
/// `+inf`. With `L = 1` every rate gives `K = 1`, so `k = 1` maps to `0` and
/// larger `k` to `+inf`.
pub fn line_beta_star(k: u64, params: &SystemParams) -> Result<ExtendedRate> {
    if k == 0 {
        return Err(Error::Infeasible(
            "subscription spacing must be at least 1".into(),
        ));
    }
    let scale = params.gossip_rate() * (params.tolerance() - 1.0);
    if scale == 0.0 {
        return Ok(if k == 1 {
            ExtendedRate::Finite(0.0)
        } else {
            ExtendedRate::Infinite
        });
    }
    Ok(ExtendedRate::reciprocal(k as f64 / scale - 1.0))
}

/// The AC-stable profile of an `n`-node directed line: nodes `0, K, 2K, ...`
/// subscribe.
pub fn line_profile(n: usize, params: &SystemParams) -> SubscriptionProfile {
    let k = line_k_star(params) as usize;
    SubscriptionProfile::from_subscribers(n, (0..n).step_by(k))
}

/// Subscriber fraction of [`line_profile`], `ceil(n/K)/n`; equals `1/K`
/// whenever `K` divides `n`.
pub fn line_finite_fs(n: usize, params: &SystemParams) -> f64 {
    let k = line_k_star(params) as usize;
    n.div_ceil(k) as f64 / n as f64
}
