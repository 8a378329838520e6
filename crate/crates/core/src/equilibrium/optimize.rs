use serde::Serialize;

use super::cost::{server_utility, CostFunction};
use super::enumerate::{enumerate_stable_profiles, server_preferred, DEFAULT_ENUMERATION_CAP};
use super::oracle::AgeOracle;
use super::stability::TolerancePolicy;
use crate::analytic::{
    line_beta_star, line_fs, line_k_star, star_regime, star_thresholds, tree_fs,
};
use crate::error::{Error, Result};
use crate::model::{ExtendedRate, SubscriptionProfile, SystemParams, Topology};

// Upper bound on the number of spacings scanned for lines and trees.
const MAX_WINDOW: u64 = 1_000_000;

/// Network family whose leader problem is solved.
#[derive(Debug, Clone)]
pub enum OptimizeTarget {
    /// Semi-infinite directed line.
    Line,
    /// Infinite `r`-ary out-tree.
    Tree {
        r: usize,
    },
    Star {
        r: usize,
    },
    /// Arbitrary graph, evaluated by enumeration at each rate of `grid`.
    General {
        topology: Topology,
        grid: Vec<f64>,
    },
}

impl OptimizeTarget {
    pub fn label(&self) -> String {
        match self {
            Self::Line => "line".into(),
            Self::Tree { r } => format!("tree(r={r})"),
            Self::Star { r } => format!("star(r={r})"),
            Self::General { topology, .. } => format!("general(n={})", topology.node_count()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchSettings {
    /// Stand-in for the region edge `beta = 0`, which is not a usable rate.
    pub beta_min: f64,
    /// Inclusive spacing window for lines and trees. Defaults to
    /// `[1, ceil(p (L-1) (1/beta_min + 1))]`, the
    /// spacing at `beta_min`.
    pub k_window: Option<(u64, u64)>,
    pub enumeration_cap: usize,
    pub policy: TolerancePolicy,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            beta_min: 1e-3,
            k_window: None,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            policy: TolerancePolicy::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub beta: f64,
    /// Subscription spacing for lines and trees.
    pub spacing: Option<u64>,
    pub f_s: f64,
    pub cost: f64,
    pub utility: f64,
    /// Server-preferred profile where one can be materialized.
    pub profile: Option<SubscriptionProfile>,
}

/// The server's utility-maximizing commitment and every candidate examined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub target: String,
    pub beta_star: f64,
    pub spacing: Option<u64>,
    pub profile: Option<SubscriptionProfile>,
    pub f_s: f64,
    /// `f_s - c(beta_star)`
    pub utility: f64,
    /// Sorted by ascending rate.
    pub candidates: Vec<Candidate>,
}

// Turns a critical rate into a usable commitment in (0, 1].
fn usable(rate: ExtendedRate, beta_min: f64) -> Option<f64> {
    match rate {
        ExtendedRate::Finite(v) if v <= 0.0 => Some(beta_min),
        ExtendedRate::Finite(v) if v <= 1.0 => Some(v),
        _ => None,
    }
}

fn k_window(base: &SystemParams, search: &SearchSettings) -> (u64, u64) {
    search.k_window.unwrap_or_else(|| {
        let scale = base.gossip_rate() * (base.tolerance() - 1.0);
        let hi = crate::analytic::snapped_ceil(scale * (1.0 / search.beta_min + 1.0));
        let hi = if hi.is_finite() {
            hi.max(1.0) as u64
        } else {
            u64::MAX
        };
        (1, hi.min(MAX_WINDOW))
    })
}

// (beta, spacing, fraction, profile) before costing.
type RawCandidate = (f64, Option<u64>, f64, Option<SubscriptionProfile>);

fn directed_candidates(
    base: &SystemParams,
    search: &SearchSettings,
    fraction: impl Fn(&SystemParams) -> Result<f64>,
) -> Result<Vec<RawCandidate>> {
    let (lo, hi) = k_window(base, search);
    let mut out = Vec::new();
    for k in lo.max(1)..=hi {
        let Some(beta) = usable(line_beta_star(k, base)?, search.beta_min) else {
            continue;
        };
        let params = base.with_sample_rate(beta)?;
        out.push((beta, Some(line_k_star(&params)), fraction(&params)?, None));
    }
    Ok(out)
}

/// Maximizes `F_S(beta) - c(beta)` over the target's critical rates.
///
/// Lines and trees are scanned at `beta*(K)` over the spacing window, stars
/// at `beta_{k-1}` for `k = 1..=r+1` (with `beta_0` replaced by
/// `search.beta_min`), and general graphs at each grid rate using the
/// server-preferred equilibrium found by enumeration under `oracle`. Ties in
/// utility go to the smaller rate.
pub fn optimize_beta(
    target: &OptimizeTarget,
    base: &SystemParams,
    cost: &CostFunction,
    search: &SearchSettings,
    oracle: &dyn AgeOracle,
) -> Result<EquilibriumReport> {
    if !(search.beta_min > 0.0 && search.beta_min <= 1.0) {
        return Err(Error::InvalidParam {
            name: "beta_min",
            value: search.beta_min,
            reason: "must lie in (0, 1]",
        });
    }
    let raw = match target {
        OptimizeTarget::Line => directed_candidates(base, search, |p| Ok(line_fs(p)))?,
        OptimizeTarget::Tree { r } => {
            let r = *r;
            tree_fs(base, r)?;
            directed_candidates(base, search, |p| tree_fs(p, r))?
        }
        OptimizeTarget::Star { r } => {
            let th = star_thresholds(base, *r)?;
            let mut out = Vec::new();
            for k in 1..=*r + 1 {
                if let Some(beta) = usable(th.edge(k - 1), search.beta_min) {
                    let rep = star_regime(beta, base, *r)?;
                    out.push((beta, None, rep.f_s, Some(rep.profile)));
                }
            }
            out
        }
        OptimizeTarget::General { topology, grid } => {
            let mut out = Vec::new();
            for &beta in grid {
                let params = base.with_sample_rate(beta)?;
                let stable = enumerate_stable_profiles(
                    topology,
                    &params,
                    oracle,
                    &search.policy,
                    search.enumeration_cap,
                )?;
                match server_preferred(&stable) {
                    Ok((profile, f_s)) => out.push((beta, None, f_s, Some(profile))),
                    Err(Error::NoStableProfile) => {}
                    Err(e) => return Err(e),
                }
            }
            out
        }
    };
    let mut candidates: Vec<Candidate> = raw
        .into_iter()
        .map(|(beta, spacing, f_s, profile)| Candidate {
            beta,
            spacing,
            f_s,
            cost: cost.eval(beta),
            utility: server_utility(f_s, beta, cost),
            profile,
        })
        .collect();
    candidates.sort_by(|a, b| a.beta.total_cmp(&b.beta));

    let mut best: Option<&Candidate> = None;
    for c in &candidates {
        if best.is_none_or(|b| c.utility > b.utility) {
            best = Some(c);
        }
    }
    let best = best.cloned().ok_or_else(|| {
        Error::Infeasible(format!("no feasible sampling rate for {}", target.label()))
    })?;
    Ok(EquilibriumReport {
        target: target.label(),
        beta_star: best.beta,
        spacing: best.spacing,
        profile: best.profile,
        f_s: best.f_s,
        utility: best.utility,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::AnalyticOracle;

    fn reference() -> SystemParams {
        SystemParams::new(0.3, 0.6, 0.2, 10.0).unwrap()
    }

    fn run(
        target: OptimizeTarget,
        cost: &CostFunction,
        search: &SearchSettings,
    ) -> EquilibriumReport {
        optimize_beta(&target, &reference(), cost, search, &AnalyticOracle).unwrap()
    }

    #[test]
    fn line_candidate_values() {
        let quad = CostFunction::quadratic(80.0).unwrap();
        let search = SearchSettings {
            k_window: Some((4, 1000)),
            ..Default::default()
        };
        let rep = run(OptimizeTarget::Line, &quad, &search);
        let at = |k: u64| {
            rep.candidates
                .iter()
                .find(|c| c.spacing == Some(k))
                .unwrap()
        };
        assert!((at(4).utility - (0.25 - 80.0 * (9.0f64 / 11.0).powi(2))).abs() < 1e-9);
        assert!((at(4).utility + 53.30).abs() < 0.01);
        assert!((at(5).utility - (0.2 - 80.0 * 0.5625 * 0.5625)).abs() < 1e-9);
        assert_eq!(rep.candidates.len(), 997);
        assert!(rep.candidates.iter().all(|c| c.utility <= rep.utility));
        assert_eq!(rep.utility, rep.f_s - quad.eval(rep.beta_star));
    }

    #[test]
    fn free_sampling_picks_largest_rate() {
        let rep = run(
            OptimizeTarget::Line,
            &CostFunction::zero(),
            &SearchSettings::default(),
        );
        let max_beta = rep.candidates.iter().map(|c| c.beta).fold(0.0, f64::max);
        assert_eq!(rep.beta_star, max_beta);
        assert_eq!(rep.spacing, Some(4));
    }

    #[test]
    fn tree_never_beats_line_at_shared_rates() {
        let quad = CostFunction::quadratic(80.0).unwrap();
        let search = SearchSettings::default();
        let line = run(OptimizeTarget::Line, &quad, &search);
        let tree = run(OptimizeTarget::Tree { r: 2 }, &quad, &search);
        assert_eq!(line.candidates.len(), tree.candidates.len());
        for (l, t) in line.candidates.iter().zip(&tree.candidates) {
            assert_eq!(l.beta, t.beta);
            assert!(t.utility <= l.utility);
        }
        assert!(tree.utility <= line.utility);
    }

    #[test]
    fn star_falls_back_to_beta_min() {
        // beta_1 = 9 at these parameters, so only beta_0 -> beta_min is usable
        let quad = CostFunction::quadratic(80.0).unwrap();
        let rep = run(
            OptimizeTarget::Star { r: 100 },
            &quad,
            &SearchSettings::default(),
        );
        assert_eq!(rep.candidates.len(), 1);
        assert_eq!(rep.beta_star, 1e-3);
        assert_eq!(rep.f_s, 1.0 / 101.0);
    }

    #[test]
    fn star_candidates_follow_thresholds() {
        let base = SystemParams::new(0.3, 0.5, 0.4, 2.0).unwrap();
        let rep = optimize_beta(
            &OptimizeTarget::Star { r: 1 },
            &base,
            &CostFunction::zero(),
            &SearchSettings::default(),
            &AnalyticOracle,
        )
        .unwrap();
        // beta_0 -> beta_min, beta_1 = 2/3 (everyone)
        assert_eq!(rep.candidates.len(), 2);
        assert_eq!(rep.f_s, 1.0);
        assert!((rep.beta_star - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn general_grid_matches_line_closed_form() {
        let topo = Topology::line(10).unwrap();
        let grid: Vec<f64> = (1..=20).map(|i| i as f64 / 20.0).collect();
        let rep = run(
            OptimizeTarget::General {
                topology: topo,
                grid: grid.clone(),
            },
            &CostFunction::zero(),
            &SearchSettings::default(),
        );
        assert_eq!(rep.candidates.len(), grid.len());
        for c in &rep.candidates {
            let k = line_k_star(&reference().with_sample_rate(c.beta).unwrap()) as usize;
            assert_eq!(
                c.profile.as_ref().unwrap().subscriber_count(),
                10usize.div_ceil(k)
            );
        }
    }

    #[test]
    fn unusable_targets_are_reported() {
        let err = optimize_beta(
            &OptimizeTarget::Line,
            &reference(),
            &CostFunction::zero(),
            &SearchSettings {
                k_window: Some((1, 3)),
                ..Default::default()
            },
            &AnalyticOracle,
        );
        assert!(matches!(err, Err(Error::Infeasible(_))));
        let bad = SearchSettings {
            beta_min: 0.0,
            ..Default::default()
        };
        assert!(optimize_beta(
            &OptimizeTarget::Line,
            &reference(),
            &CostFunction::zero(),
            &bad,
            &AnalyticOracle
        )
        .is_err());
    }
}
