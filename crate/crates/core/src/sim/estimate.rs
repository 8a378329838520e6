use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::engine::{apply_into, Sampler, SimState, SlotDraws};
use crate::error::{Error, Result};
use crate::model::{SubscriptionProfile, SystemParams, Topology};

const Z_95: f64 = 1.959_963_984_540_054;

// Replications per work item. Fixed so the reduction order never depends on
// the thread count.
const CHUNK: u64 = 64;

/// Monte Carlo run settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    /// Slots per replication.
    pub horizon: u64,
    pub replications: u64,
    pub master_seed: u64,
    /// Leading slots excluded from each replication's time average.
    pub burn_in: u64,
    /// Worker threads; `None` uses the global rayon pool. Results do not
    /// depend on this.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            horizon: 10_000,
            replications: 200_000,
            master_seed: 0,
            burn_in: 1_000,
            workers: None,
        }
    }
}

impl SimConfig {
    /// Burn-in defaults to a tenth of the horizon.
    pub fn new(horizon: u64, replications: u64, master_seed: u64) -> Result<Self> {
        let cfg = Self {
            horizon,
            replications,
            master_seed,
            burn_in: horizon / 10,
            workers: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_burn_in(self, burn_in: u64) -> Result<Self> {
        let cfg = Self { burn_in, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self {
            workers: Some(workers.max(1)),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidSimConfig("horizon must be positive".into()));
        }
        if self.replications == 0 {
            return Err(Error::InvalidSimConfig(
                "replications must be positive".into(),
            ));
        }
        if self.burn_in >= self.horizon {
            return Err(Error::InvalidSimConfig(format!(
                "burn_in ({}) must be below horizon ({})",
                self.burn_in, self.horizon
            )));
        }
        Ok(())
    }
}

/// Long-run mean age per node with 95% normal confidence half-widths over
/// replication time averages. Nodes with no path from any subscriber are
/// `divergent`; their mean and half-width are `+inf`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgeEstimate {
    pub mean: Vec<f64>,
    pub ci_half_width: Vec<f64>,
    pub divergent: Vec<bool>,
    pub replications: u64,
    pub horizon: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeEstimate {
    pub mean: f64,
    pub ci_half_width: f64,
    pub divergent: bool,
}

impl AgeEstimate {
    pub fn node(&self, i: usize) -> NodeEstimate {
        NodeEstimate {
            mean: self.mean[i],
            ci_half_width: self.ci_half_width[i],
            divergent: self.divergent[i],
        }
    }

    pub fn any_divergent(&self) -> bool {
        self.divergent.iter().any(|&d| d)
    }
}

// Welford accumulator per node; merged with Chan's rule.
#[derive(Clone)]
struct Moments {
    count: f64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(n: usize) -> Self {
        Self {
            count: 0.0,
            mean: vec![0.0; n],
            m2: vec![0.0; n],
        }
    }

    fn push(&mut self, sample: &[f64]) {
        self.count += 1.0;
        for ((m, m2), &x) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(sample) {
            let delta = x - *m;
            *m += delta / self.count;
            *m2 += delta * (x - *m);
        }
    }

    fn merge(mut self, other: &Moments) -> Self {
        if other.count == 0.0 {
            return self;
        }
        let total = self.count + other.count;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * other.count / total;
            self.m2[i] += other.m2[i] + delta * delta * self.count * other.count / total;
        }
        self.count = total;
        self
    }
}

fn run_replication(
    topology: &Topology,
    profile: &[bool],
    sampler: &Sampler,
    config: &SimConfig,
    index: u64,
    out: &mut [f64],
) {
    let n = topology.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(config.master_seed);
    rng.set_stream(index);
    let mut state = SimState::zero(n);
    let mut next = SimState::zero(n);
    let mut draws = SlotDraws::quiet(topology.edges().len());
    let mut sums = vec![0u64; n];
    for t in 0..config.horizon {
        sampler.draw(&mut rng, &mut draws);
        apply_into(&state, &draws, topology, profile, &mut next);
        std::mem::swap(&mut state, &mut next);
        if t >= config.burn_in {
            for (s, &a) in sums.iter_mut().zip(&state.node_ages) {
                *s += a;
            }
        }
    }
    let slots = (config.horizon - config.burn_in) as f64;
    for (o, &s) in out.iter_mut().zip(&sums) {
        *o = s as f64 / slots;
    }
}

/// Runs `config.replications` independent chains from all-zero ages and
/// reports per-node long-run mean ages.
///
/// Replication `k` draws from ChaCha8 stream `k` keyed by `master_seed`, and
/// per-replication averages are reduced in a fixed order, so the output is
/// bit-identical for any worker count.
pub fn estimate_ages(
    topology: &Topology,
    profile: &SubscriptionProfile,
    params: &SystemParams,
    config: &SimConfig,
) -> Result<AgeEstimate> {
    config.validate()?;
    let n = topology.node_count();
    profile.check_len(n)?;
    let reachable = topology.reachable_from(profile.actions());
    let divergent: Vec<bool> = reachable.iter().map(|&r| !r).collect();

    let sampler = Sampler::new(params);
    let chunks = config.replications.div_ceil(CHUNK);
    let work = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = Moments::new(n);
                let mut sample = vec![0.0; n];
                let end = ((c + 1) * CHUNK).min(config.replications);
                for k in c * CHUNK..end {
                    run_replication(
                        topology,
                        profile.actions(),
                        &sampler,
                        config,
                        k,
                        &mut sample,
                    );
                    acc.push(&sample);
                }
                acc
            })
            .collect::<Vec<_>>()
    };
    let partials = match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidSimConfig(e.to_string()))?
            .install(work),
        None => work(),
    };
    let total = partials
        .iter()
        .fold(Moments::new(n), |acc, part| acc.merge(part));

    let reps = total.count;
    let mut mean = total.mean;
    let mut ci_half_width: Vec<f64> = total
        .m2
        .iter()
        .map(|&m2| {
            if reps < 2.0 {
                f64::INFINITY
            } else {
                Z_95 * (m2 / (reps - 1.0) / reps).sqrt()
            }
        })
        .collect();
    for i in 0..n {
        if divergent[i] {
            mean[i] = f64::INFINITY;
            ci_half_width[i] = f64::INFINITY;
        }
    }
    Ok(AgeEstimate {
        mean,
        ci_half_width,
        divergent,
        replications: config.replications,
        horizon: config.horizon,
    })
}

/// Estimated age of `node` if it alone flipped its subscription decision.
pub fn alternate_age(
    node: usize,
    topology: &Topology,
    profile: &SubscriptionProfile,
    params: &SystemParams,
    config: &SimConfig,
) -> Result<NodeEstimate> {
    let n = topology.node_count();
    profile.check_len(n)?;
    if node >= n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: node + 1,
        });
    }
    let est = estimate_ages(topology, &profile.flipped(node), params, config)?;
    Ok(est.node(node))
}
