//! Flat `section.key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Every key must be
//! known; see the crate README for the full list.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::CliError;
use crate::equilibrium::CostFunction;
use crate::model::{SubscriptionProfile, SystemParams, Topology};
use crate::sim::SimConfig;

const KNOWN_KEYS: &[&str] = &[
    "seed",
    "params.p_e",
    "params.beta",
    "params.p",
    "params.L",
    "topology.class",
    "topology.n",
    "topology.r",
    "topology.depth",
    "topology.edges",
    "profile.actions",
    "sim.horizon",
    "sim.replications",
    "sim.burn_in",
    "sim.workers",
    "cost.kind",
    "cost.c0",
    "cost.table",
    "sweep.variable",
    "sweep.from",
    "sweep.to",
    "sweep.steps",
    "optimize.beta_min",
    "optimize.k_min",
    "optimize.k_max",
    "optimize.compare",
    "optimize.grid",
    "equilibria.cap",
    "equilibria.oracle",
    "output.path",
    "output.format",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err("expected csv or json".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Analytic,
    Sim,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.from];
        }
        let span = self.to - self.from;
        (0..self.steps)
            .map(|i| self.from + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// One network family in an `optimize.compare` list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareEntry {
    Line,
    Tree(usize),
    Star(usize),
}

/// Parsed run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub event_rate: f64,
    pub sample_rate: Option<f64>,
    pub gossip_rate: f64,
    pub tolerance: f64,
    pub topology: Topology,
    pub profile: Option<SubscriptionProfile>,
    pub sim: SimConfig,
    pub cost: Option<CostFunction>,
    pub sweep: Option<SweepSpec>,
    pub beta_min: f64,
    pub k_window: Option<(u64, u64)>,
    pub compare: Vec<CompareEntry>,
    pub grid: Option<Vec<f64>>,
    pub cap: usize,
    pub oracle: OracleKind,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

struct Entries(BTreeMap<String, String>);

impl Entries {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: ToString,
    {
        self.raw(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| CliError::InvalidValue {
                    key: key.into(),
                    value: v.into(),
                    reason: e.to_string(),
                })
            })
            .transpose()
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: ToString,
    {
        self.get(key)?
            .ok_or_else(|| CliError::MissingKey(key.into()))
    }

    fn invalid(&self, key: &str, reason: impl Into<String>) -> CliError {
        CliError::InvalidValue {
            key: key.into(),
            value: self.raw(key).unwrap_or_default().into(),
            reason: reason.into(),
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError>
where
    T::Err: ToString,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>().map_err(|e| CliError::InvalidValue {
                key: key.into(),
                value: value.into(),
                reason: e.to_string(),
            })
        })
        .collect()
}

fn parse_pairs<A: FromStr, B: FromStr>(
    key: &str,
    value: &str,
    sep: char,
) -> Result<Vec<(A, B)>, CliError> {
    let bad = |reason: &str| CliError::InvalidValue {
        key: key.into(),
        value: value.into(),
        reason: reason.into(),
    };
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (a, b) = item.split_once(sep).ok_or_else(|| bad("malformed pair"))?;
            Ok((
                a.trim().parse().map_err(|_| bad("malformed pair"))?,
                b.trim().parse().map_err(|_| bad("malformed pair"))?,
            ))
        })
        .collect()
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        text.parse()
    }

    /// System parameters; commands that need a fixed rate report
    /// `params.beta` when it is missing.
    pub fn params(&self) -> Result<SystemParams, CliError> {
        let beta = self
            .sample_rate
            .ok_or_else(|| CliError::MissingKey("params.beta".into()))?;
        Ok(SystemParams::new(
            self.event_rate,
            beta,
            self.gossip_rate,
            self.tolerance,
        )?)
    }

    /// Parameters for rate searches, where `params.beta` is optional.
    pub fn base_params(&self) -> Result<SystemParams, CliError> {
        Ok(SystemParams::new(
            self.event_rate,
            self.sample_rate.unwrap_or(1.0),
            self.gossip_rate,
            self.tolerance,
        )?)
    }
}

impl FromStr for RunConfig {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or(CliError::Syntax { line: idx + 1 })?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::UnknownKey(key.into()));
            }
            if map
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::DuplicateKey(key.into()));
            }
        }
        let e = Entries(map);

        let n: Option<usize> = e.get("topology.n")?;
        let r: Option<usize> = e.get("topology.r")?;
        let class: String = e.require("topology.class")?;
        let topology = match class.as_str() {
            "line" => Topology::line(n.ok_or_else(|| CliError::MissingKey("topology.n".into()))?)?,
            "tree" => Topology::tree(
                r.ok_or_else(|| CliError::MissingKey("topology.r".into()))?,
                e.require("topology.depth")?,
            )?,
            "star" => Topology::star(r.ok_or_else(|| CliError::MissingKey("topology.r".into()))?)?,
            "general" => {
                let edges = e
                    .raw("topology.edges")
                    .map(|v| parse_pairs("topology.edges", v, '-'))
                    .transpose()?
                    .unwrap_or_default();
                Topology::general(
                    n.ok_or_else(|| CliError::MissingKey("topology.n".into()))?,
                    edges,
                )?
            }
            _ => return Err(e.invalid("topology.class", "expected line, tree, star or general")),
        };

        let profile = match e.raw("profile.actions") {
            Some(bits) => {
                let p = SubscriptionProfile::parse(bits)
                    .ok_or_else(|| e.invalid("profile.actions", "expected a 0/1 string"))?;
                p.check_len(topology.node_count())?;
                Some(p)
            }
            None => None,
        };

        let seed = e.get("seed")?.unwrap_or(0);
        let defaults = SimConfig::default();
        let horizon = e.get("sim.horizon")?.unwrap_or(defaults.horizon);
        let mut sim = SimConfig {
            horizon,
            replications: e.get("sim.replications")?.unwrap_or(defaults.replications),
            master_seed: seed,
            burn_in: e.get("sim.burn_in")?.unwrap_or(horizon / 10),
            workers: None,
        };
        if let Some(w) = e.get::<usize>("sim.workers")? {
            sim = sim.with_workers(w);
        }
        sim.validate()?;

        let cost = match e.raw("cost.kind") {
            None => None,
            Some("quadratic") => Some(CostFunction::quadratic(e.require("cost.c0")?)?),
            Some("linear") => Some(CostFunction::linear(e.require("cost.c0")?)?),
            Some("table") => {
                let raw = e
                    .raw("cost.table")
                    .ok_or_else(|| CliError::MissingKey("cost.table".into()))?;
                Some(CostFunction::table(parse_pairs("cost.table", raw, ':')?)?)
            }
            Some(_) => return Err(e.invalid("cost.kind", "expected quadratic, linear or table")),
        };

        let sweep = match e.raw("sweep.variable") {
            None => None,
            Some("beta") => {
                let steps: usize = e.require("sweep.steps")?;
                if steps == 0 {
                    return Err(e.invalid("sweep.steps", "must be positive"));
                }
                Some(SweepSpec {
                    from: e.require("sweep.from")?,
                    to: e.require("sweep.to")?,
                    steps,
                })
            }
            Some(_) => return Err(e.invalid("sweep.variable", "only beta can be swept")),
        };

        let k_window = match (
            e.get::<u64>("optimize.k_min")?,
            e.get::<u64>("optimize.k_max")?,
        ) {
            (None, None) => None,
            (lo, hi) => {
                let lo = lo.unwrap_or(1);
                let hi = hi.ok_or_else(|| CliError::MissingKey("optimize.k_max".into()))?;
                if lo == 0 || lo > hi {
                    return Err(e.invalid("optimize.k_min", "need 1 <= k_min <= k_max"));
                }
                Some((lo, hi))
            }
        };

        let compare = match e.raw("optimize.compare") {
            None => Vec::new(),
            Some(list) => list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|item| {
                    let bad = || e.invalid("optimize.compare", format!("bad entry {item:?}"));
                    match item.split_once(':') {
                        None if item == "line" => Ok(CompareEntry::Line),
                        Some(("tree", r)) => r.parse().map(CompareEntry::Tree).map_err(|_| bad()),
                        Some(("star", r)) => r.parse().map(CompareEntry::Star).map_err(|_| bad()),
                        _ => Err(bad()),
                    }
                })
                .collect::<Result<_, _>>()?,
        };

        let oracle = match e.raw("equilibria.oracle") {
            None | Some("analytic") => OracleKind::Analytic,
            Some("sim") => OracleKind::Sim,
            Some(_) => return Err(e.invalid("equilibria.oracle", "expected analytic or sim")),
        };

        Ok(Self {
            seed,
            event_rate: e.require("params.p_e")?,
            sample_rate: e.get("params.beta")?,
            gossip_rate: e.require("params.p")?,
            tolerance: e.require("params.L")?,
            topology,
            profile,
            sim,
            cost,
            sweep,
            beta_min: e.get("optimize.beta_min")?.unwrap_or(1e-3),
            k_window,
            compare,
            grid: e
                .raw("optimize.grid")
                .map(|v| parse_list("optimize.grid", v))
                .transpose()?,
            cap: e
                .get("equilibria.cap")?
                .unwrap_or(crate::equilibrium::DEFAULT_ENUMERATION_CAP),
            oracle,
            output_path: e.get("output.path")?,
            format: e.get("output.format")?.unwrap_or(OutputFormat::Csv),
        })
    }
}
