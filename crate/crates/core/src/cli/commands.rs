use serde_json::Value;

use super::config::{CompareEntry, OracleKind, RunConfig};
use super::table::{Cell, Table};
use super::CliError;
use crate::analytic::{
    line_beta_star, line_k_star, line_node_age, line_profile, star_regime, star_thresholds,
    tree_fs, tree_profile, StarRegime,
};
use crate::equilibrium::{
    enumerate_stable_profiles, optimize_beta, server_preferred, AgeOracle, AnalyticOracle,
    EquilibriumReport, OptimizeTarget, SearchSettings, SimOracle, TolerancePolicy,
};
use crate::model::{
    ac_threshold, server_age, subscriber_age, SubscriptionProfile, SystemParams, Topology,
    TopologyClass,
};
use crate::sim::estimate_ages;

/// Result of one subcommand. `status` carries a non-success outcome that
/// still produced a table (divergent nodes, no stable profile).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    /// JSON payload when it differs from the table's row objects.
    pub json: Option<Value>,
    pub status: Option<CliError>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self {
            table,
            json: None,
            status: None,
        }
    }
}

/// Closed-form ages, spacing, fractions and thresholds.
///
/// Columns: `node_or_k,value,formula_id,reason`.
pub fn cmd_analyze(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let mut t = Table::new(vec!["node_or_k", "value", "formula_id", "reason"]);
    let mut row = |k: Option<u64>, value: Cell, id: &str, reason: &str| {
        let k = k.map_or(Cell::Text(String::new()), Cell::from);
        t.push(vec![k, value, id.into(), reason.into()]);
    };
    row(None, server_age(&params).into(), "server_age", "");
    row(None, subscriber_age(&params).into(), "subscriber_age", "");
    row(None, ac_threshold(&params).into(), "ac_threshold", "");
    match cfg.topology.class() {
        TopologyClass::Line | TopologyClass::Tree { .. } => {
            let k = line_k_star(&params);
            let id = if matches!(cfg.topology.class(), TopologyClass::Line) {
                "line_node_age"
            } else {
                "tree_level_age"
            };
            for hop in 0..k {
                row(Some(hop), line_node_age(hop, &params).into(), id, "");
            }
            row(None, k.into(), "line_k_star", "");
            let rate = line_beta_star(k, &params)?;
            row(
                Some(k),
                rate.as_f64().into(),
                "line_beta_star",
                rate.reason(),
            );
            match cfg.topology.class() {
                TopologyClass::Tree { r, .. } => {
                    row(None, tree_fs(&params, r)?.into(), "tree_fs", "");
                }
                _ => row(None, (1.0 / k as f64).into(), "line_fs", ""),
            }
        }
        TopologyClass::Star { r } => {
            let th = star_thresholds(&params, r)?;
            for (k, rate) in th.beta_k.iter().enumerate() {
                row(
                    Some(k as u64 + 1),
                    rate.as_f64().into(),
                    "star_beta_k",
                    rate.reason(),
                );
            }
            row(
                None,
                th.beta_c.as_f64().into(),
                "star_beta_c",
                th.beta_c.reason(),
            );
            row(
                None,
                th.beta_r.as_f64().into(),
                "star_beta_r",
                th.beta_r.reason(),
            );
            let rep = star_regime(params.sample_rate(), &params, r)?;
            row(None, rep.f_s.into(), "star_fs", "");
            row(
                None,
                rep.profile.subscriber_count().into(),
                "star_subscribers",
                "",
            );
            row(
                None,
                rep.center_only_stable.into(),
                "star_center_only_stable",
                "",
            );
        }
        TopologyClass::General => {
            return Err(CliError::Unsupported(
                "no closed forms for general topologies; run `simulate` or `equilibria` instead"
                    .into(),
            ))
        }
    }
    Ok(Outcome::ok(t))
}

/// Analytic equilibrium profile used when the config supplies none.
fn default_profile(
    topology: &Topology,
    params: &SystemParams,
) -> Result<SubscriptionProfile, CliError> {
    match topology.class() {
        TopologyClass::Line => Ok(line_profile(topology.node_count(), params)),
        TopologyClass::Tree { .. } => Ok(tree_profile(topology, params)?),
        TopologyClass::Star { r } => Ok(star_regime(params.sample_rate(), params, r)?.profile),
        TopologyClass::General => Err(CliError::MissingKey("profile.actions".into())),
    }
}

/// Monte Carlo ages per node.
///
/// Columns: `node,mean,ci_half_width,divergent,replications,horizon`.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let profile = match &cfg.profile {
        Some(p) => p.clone(),
        None => default_profile(&cfg.topology, &params)?,
    };
    let est = estimate_ages(&cfg.topology, &profile, &params, &cfg.sim)?;
    let mut t = Table::new(vec![
        "node",
        "mean",
        "ci_half_width",
        "divergent",
        "replications",
        "horizon",
    ]);
    for i in 0..cfg.topology.node_count() {
        t.push(vec![
            i.into(),
            est.mean[i].into(),
            est.ci_half_width[i].into(),
            est.divergent[i].into(),
            est.replications.into(),
            est.horizon.into(),
        ]);
    }
    let status = est.any_divergent().then(|| {
        let nodes: Vec<String> = (0..est.divergent.len())
            .filter(|&i| est.divergent[i])
            .map(|i| i.to_string())
            .collect();
        CliError::Divergent(nodes.join(","))
    });
    Ok(Outcome {
        table: t,
        json: None,
        status,
    })
}

fn oracle_for(cfg: &RunConfig) -> Box<dyn AgeOracle> {
    match cfg.oracle {
        OracleKind::Analytic => Box::new(AnalyticOracle),
        OracleKind::Sim => Box::new(SimOracle { config: cfg.sim }),
    }
}

/// Every AC-stable profile with the server-preferred one marked.
///
/// Columns: `profile,subscribers,f_s,preferred`.
pub fn cmd_equilibria(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let params = cfg.params()?;
    let oracle = oracle_for(cfg);
    let stable = enumerate_stable_profiles(
        &cfg.topology,
        &params,
        oracle.as_ref(),
        &TolerancePolicy::default(),
        cfg.cap,
    )?;
    let mut t = Table::new(vec!["profile", "subscribers", "f_s", "preferred"]);
    let preferred = server_preferred(&stable);
    for (profile, _) in &stable {
        let is_best = matches!(&preferred, Ok((best, _)) if best == profile);
        t.push(vec![
            profile.to_string().into(),
            profile.subscriber_count().into(),
            profile.fraction().into(),
            is_best.into(),
        ]);
    }
    Ok(Outcome {
        table: t,
        json: None,
        status: preferred.err().map(CliError::from),
    })
}

fn search_settings(cfg: &RunConfig) -> SearchSettings {
    SearchSettings {
        beta_min: cfg.beta_min,
        k_window: cfg.k_window,
        enumeration_cap: cfg.cap,
        ..SearchSettings::default()
    }
}

fn grid(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    cfg.grid
        .clone()
        .or_else(|| cfg.sweep.as_ref().map(|s| s.values()))
        .ok_or_else(|| CliError::MissingKey("optimize.grid".into()))
}

fn optimize_targets(cfg: &RunConfig) -> Result<Vec<OptimizeTarget>, CliError> {
    if !cfg.compare.is_empty() {
        return Ok(cfg
            .compare
            .iter()
            .map(|c| match *c {
                CompareEntry::Line => OptimizeTarget::Line,
                CompareEntry::Tree(r) => OptimizeTarget::Tree { r },
                CompareEntry::Star(r) => OptimizeTarget::Star { r },
            })
            .collect());
    }
    Ok(vec![match cfg.topology.class() {
        TopologyClass::Line => OptimizeTarget::Line,
        TopologyClass::Tree { r, .. } => OptimizeTarget::Tree { r },
        TopologyClass::Star { r } => OptimizeTarget::Star { r },
        TopologyClass::General => OptimizeTarget::General {
            topology: cfg.topology.clone(),
            grid: grid(cfg)?,
        },
    }])
}

/// Server's utility-maximizing rate for the configured network family, or
/// side by side for every `optimize.compare` entry.
///
/// Columns: `target,beta,spacing,f_s,cost,utility,chosen`.
pub fn cmd_optimize(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let base = cfg.base_params()?;
    let cost = cfg
        .cost
        .clone()
        .ok_or_else(|| CliError::MissingKey("cost.kind".into()))?;
    let oracle = oracle_for(cfg);
    let search = search_settings(cfg);
    let reports: Vec<EquilibriumReport> = optimize_targets(cfg)?
        .iter()
        .map(|target| optimize_beta(target, &base, &cost, &search, oracle.as_ref()))
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(vec![
        "target", "beta", "spacing", "f_s", "cost", "utility", "chosen",
    ]);
    for rep in &reports {
        for c in &rep.candidates {
            t.push(vec![
                rep.target.as_str().into(),
                c.beta.into(),
                c.spacing.map_or(Cell::Text(String::new()), Cell::from),
                c.f_s.into(),
                c.cost.into(),
                c.utility.into(),
                (c.beta == rep.beta_star).into(),
            ]);
        }
    }
    let json = serde_json::json!({ "reports": reports });
    Ok(Outcome {
        table: t,
        json: Some(json),
        status: None,
    })
}

/// Server-preferred subscriber fraction and utility across a rate sweep.
///
/// Columns: `beta,structure,f_s,cost,utility`.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sweep = cfg
        .sweep
        .clone()
        .ok_or_else(|| CliError::MissingKey("sweep.variable".into()))?;
    let base = cfg.base_params()?;
    let cost = cfg
        .cost
        .clone()
        .unwrap_or_else(crate::equilibrium::CostFunction::zero);
    let oracle = oracle_for(cfg);
    let mut t = Table::new(vec!["beta", "structure", "f_s", "cost", "utility"]);
    let mut missing = Vec::new();
    for beta in sweep.values() {
        let params = base.with_sample_rate(beta)?;
        let found = match cfg.topology.class() {
            TopologyClass::Line => {
                let k = line_k_star(&params);
                Some((format!("K={k}"), 1.0 / k as f64))
            }
            TopologyClass::Tree { r, .. } => {
                Some((format!("K={}", line_k_star(&params)), tree_fs(&params, r)?))
            }
            TopologyClass::Star { r } => {
                let rep = star_regime(beta, &params, r)?;
                let label = match rep.regime {
                    StarRegime::PeripheralK(k) => format!("peripheral_k={k}"),
                    StarRegime::AllSubscribe => "all_subscribe".into(),
                    StarRegime::CenterOnly => "center_only".into(),
                };
                Some((label, rep.f_s))
            }
            TopologyClass::General => {
                let stable = enumerate_stable_profiles(
                    &cfg.topology,
                    &params,
                    oracle.as_ref(),
                    &TolerancePolicy::default(),
                    cfg.cap,
                )?;
                server_preferred(&stable)
                    .ok()
                    .map(|(p, f)| (p.to_string(), f))
            }
        };
        match found {
            Some((label, f_s)) => t.push(vec![
                beta.into(),
                label.into(),
                f_s.into(),
                cost.eval(beta).into(),
                (f_s - cost.eval(beta)).into(),
            ]),
            None => {
                missing.push(crate::cli::table::format_real(beta));
                t.push(vec![
                    beta.into(),
                    "none".into(),
                    f64::NAN.into(),
                    cost.eval(beta).into(),
                    f64::NAN.into(),
                ]);
            }
        }
    }
    let status = (!missing.is_empty()).then(|| {
        CliError::Infeasible(format!(
            "no AC-stable profile at beta = {}",
            missing.join(",")
        ))
    });
    Ok(Outcome {
        table: t,
        json: None,
        status,
    })
}
