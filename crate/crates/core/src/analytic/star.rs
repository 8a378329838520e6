use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{ExtendedRate, SubscriptionProfile, SystemParams};

/// Sampling-rate thresholds of an `r`-spoke star.
///
/// `beta_k[k-1]` is the upper edge of the regime in which exactly `k`
/// peripherals subscribe and the center does not; the regime's lower edge is
/// `beta_{k-1}` with `beta_0 = 0`. `beta_c` bounds the center-only profile
/// and `beta_r` (the last `beta_k`) is where everyone subscribes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarThresholds {
    pub beta_k: Vec<ExtendedRate>,
    pub beta_c: ExtendedRate,
    pub beta_r: ExtendedRate,
}

impl StarThresholds {
    pub fn spokes(&self) -> usize {
        self.beta_k.len()
    }

    /// `beta_k` for `k` in `0..=r`, with `beta_0 = 0`.
    pub fn edge(&self, k: usize) -> ExtendedRate {
        if k == 0 {
            ExtendedRate::Finite(0.0)
        } else {
            self.beta_k[k - 1]
        }
    }
}

/// Probability that at least one of `k` subscribing spokes reaches the
/// center in a slot, `1 - (1-p)^k`.
pub(crate) fn spoke_success(params: &SystemParams, k: usize) -> f64 {
    1.0 - (1.0 - params.gossip_rate()).powi(k as i32)
}

// 1/D with D = +inf (L = 1) collapses to 0: the bound binds for every rate.
fn rate_from(denominator: f64) -> ExtendedRate {
    if denominator == f64::INFINITY {
        ExtendedRate::Finite(0.0)
    } else {
        ExtendedRate::reciprocal(denominator)
    }
}

pub fn star_thresholds(params: &SystemParams, r: usize) -> Result<StarThresholds> {
    if r == 0 {
        return Err(Error::InvalidTopology(
            "star needs at least one spoke".into(),
        ));
    }
    let p = params.gossip_rate();
    let slack = params.tolerance() - 1.0;
    let beta_k: Vec<ExtendedRate> = (1..=r)
        .map(|k| {
            let q = spoke_success(params, k);
            if k < r {
                rate_from((1.0 / q + 1.0 / p) / slack - 1.0)
            } else {
                rate_from(1.0 / (q * slack) - 1.0)
            }
        })
        .collect();
    let beta_c = rate_from(1.0 / (p * slack) - 1.0);
    let beta_r = beta_k[r - 1];
    Ok(StarThresholds {
        beta_k,
        beta_c,
        beta_r,
    })
}

/// Server-preferred equilibrium structure of a star at a fixed rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "regime", content = "k")]
pub enum StarRegime {
    /// Only the center subscribes.
    CenterOnly,
    /// The center relies on `k` subscribing peripherals.
    PeripheralK(usize),
    AllSubscribe,
}

impl StarRegime {
    /// Shape of a star profile (center is node 0), if it is one of the
    /// equilibrium shapes.
    pub fn of_profile(profile: &SubscriptionProfile) -> Option<Self> {
        let peripherals = profile.subscriber_count() - usize::from(profile.subscribes(0));
        match (profile.subscribes(0), peripherals) {
            (true, 0) => Some(StarRegime::CenterOnly),
            (true, k) if k + 1 == profile.len() => Some(StarRegime::AllSubscribe),
            (false, k) if k > 0 => Some(StarRegime::PeripheralK(k)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeReport {
    pub beta: f64,
    pub regime: StarRegime,
    pub profile: SubscriptionProfile,
    pub f_s: f64,
    /// Whether the center-only profile is also AC-stable (`beta < beta_c`).
    pub center_only_stable: bool,
}

/// Locates `beta` in `[beta_{k-1}, beta_k)` and emits the server-preferred
/// profile. Among profiles with `k` peripheral subscribers the
/// lexicographically smallest action vector is chosen, i.e. the last `k`
/// spokes subscribe.
pub fn star_regime(beta: f64, params: &SystemParams, r: usize) -> Result<RegimeReport> {
    let params = params.with_sample_rate(beta)?;
    let th = star_thresholds(&params, r)?;
    let n = r + 1;
    let (regime, profile) = match th.beta_k.iter().position(|b| b.exceeds(beta)) {
        Some(idx) => {
            let k = idx + 1;
            (
                StarRegime::PeripheralK(k),
                SubscriptionProfile::from_subscribers(n, n - k..n),
            )
        }
        None => (StarRegime::AllSubscribe, SubscriptionProfile::all(n)),
    };
    Ok(RegimeReport {
        beta,
        regime,
        f_s: profile.fraction(),
        profile,
        center_only_stable: th.beta_c.exceeds(beta),
    })
}
