use rayon::prelude::*;

use super::oracle::AgeOracle;
use super::stability::{is_ac_stable, StabilityVerdict, TolerancePolicy};
use crate::error::{Error, Result};
use crate::model::{SubscriptionProfile, SystemParams, Topology};

pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Every AC-stable profile of `topology`, found by checking all `2^n`
/// profiles. Output is in lexicographic order of the action vector
/// (`a_0` most significant).
pub fn enumerate_stable_profiles(
    topology: &Topology,
    params: &SystemParams,
    oracle: &dyn AgeOracle,
    policy: &TolerancePolicy,
    cap: usize,
) -> Result<Vec<(SubscriptionProfile, StabilityVerdict)>> {
    let n = topology.node_count();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { n, cap });
    }
    let found: Vec<Option<(SubscriptionProfile, StabilityVerdict)>> = (0..1u64 << n)
        .into_par_iter()
        .map(|index| {
            let profile = SubscriptionProfile::from_index(n, index);
            let verdict = is_ac_stable(topology, &profile, params, oracle, policy)?;
            Ok(verdict.overall.then_some((profile, verdict)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// The stable profile with the most subscribers; ties go to the
/// lexicographically smallest action vector.
pub fn server_preferred(
    stable: &[(SubscriptionProfile, StabilityVerdict)],
) -> Result<(SubscriptionProfile, f64)> {
    let mut best: Option<&SubscriptionProfile> = None;
    for (profile, _) in stable {
        let better = match best {
            None => true,
            Some(b) => {
                let (pc, bc) = (profile.subscriber_count(), b.subscriber_count());
                pc > bc || (pc == bc && profile < b)
            }
        };
        if better {
            best = Some(profile);
        }
    }
    let best = best.ok_or(Error::NoStableProfile)?;
    Ok((best.clone(), best.fraction()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{line_k_star, star_thresholds};
    use crate::equilibrium::{AnalyticOracle, NodeStatus};

    fn enumerate(
        topo: &Topology,
        params: &SystemParams,
    ) -> Vec<(SubscriptionProfile, StabilityVerdict)> {
        enumerate_stable_profiles(
            topo,
            params,
            &AnalyticOracle,
            &TolerancePolicy::default(),
            16,
        )
        .unwrap()
    }

    #[test]
    fn star_at_point_seven_prefers_two_peripherals() {
        let params = SystemParams::new(0.3, 0.7, 0.5, 2.5).unwrap();
        let stable = enumerate(&Topology::star(3).unwrap(), &params);
        let two_spokes: Vec<_> = stable
            .iter()
            .filter(|(p, _)| !p.subscribes(0) && p.subscriber_count() == 2)
            .collect();
        assert_eq!(two_spokes.len(), 3);
        let (best, f_s) = server_preferred(&stable).unwrap();
        assert_eq!(f_s, 0.5);
        assert_eq!(best.to_string(), "0011");
    }

    #[test]
    fn two_node_line_forces_node_zero() {
        for beta in [0.05, 0.3, 0.9] {
            let params = SystemParams::new(0.3, beta, 0.5, 2.0).unwrap();
            let stable = enumerate(&Topology::line(2).unwrap(), &params);
            assert_eq!(stable.len(), 1);
            let p = &stable[0].0;
            assert!(p.subscribes(0));
            assert_eq!(p.subscribes(1), line_k_star(&params) == 1);
        }
    }

    #[test]
    fn center_only_present_iff_below_beta_c() {
        // (0.2, 2.0) puts beta_c = 0.25 inside the unit interval
        for (p, l) in [(0.6, 2.2), (0.2, 2.0), (0.5, 1.8), (0.3, 1.5)] {
            let base = SystemParams::new(0.3, 0.5, p, l).unwrap();
            let th = star_thresholds(&base, 3).unwrap();
            for i in 1..=41 {
                let beta = i as f64 / 41.0;
                let params = base.with_sample_rate(beta).unwrap();
                let stable = enumerate(&Topology::star(3).unwrap(), &params);
                let has_center_only = stable.iter().any(|(p, _)| p.to_string() == "1000");
                assert_eq!(
                    has_center_only,
                    th.beta_c.exceeds(beta),
                    "p={p} L={l} beta={beta}"
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let params = SystemParams::new(0.3, 0.5, 0.5, 2.0).unwrap();
        let err = enumerate_stable_profiles(
            &Topology::line(17).unwrap(),
            &params,
            &AnalyticOracle,
            &TolerancePolicy::default(),
            DEFAULT_ENUMERATION_CAP,
        );
        assert_eq!(err.unwrap_err(), Error::CapExceeded { n: 17, cap: 16 });
    }

    #[test]
    fn preferred_needs_input() {
        assert_eq!(server_preferred(&[]).unwrap_err(), Error::NoStableProfile);
    }

    #[test]
    fn single_stable_profile_is_preferred() {
        let params = SystemParams::new(0.3, 0.6, 0.2, 10.0).unwrap();
        let stable = enumerate(&Topology::line(10).unwrap(), &params);
        assert_eq!(stable.len(), 1);
        let (best, f_s) = server_preferred(&stable).unwrap();
        assert_eq!(best.to_string(), "1000010000");
        assert_eq!(f_s, 0.2);
        assert!(stable[0]
            .1
            .per_node
            .iter()
            .all(|e| e.status == NodeStatus::Stable));
    }
}
