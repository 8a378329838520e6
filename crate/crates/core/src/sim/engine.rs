use rand::distr::{Bernoulli, Distribution};
use rand::Rng;

use crate::error::{Error, Result};
use crate::model::{SubscriptionProfile, SystemParams, Topology};

/// Instantaneous version ages: `X_R(t)` at the server and `X_i(t)` per user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimState {
    pub server_age: u64,
    pub node_ages: Vec<u64>,
}

impl SimState {
    pub fn zero(n: usize) -> Self {
        Self {
            server_age: 0,
            node_ages: vec![0; n],
        }
    }
}

/// Random outcomes of one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotDraws {
    /// `U_E(t)`: the event advanced a version.
    pub event: bool,
    /// `U_{E,R}(t)`: the server sampled the event.
    pub server_sample: bool,
    /// `U_{i,j}(t)` per edge, indexed like [`Topology::edges`].
    pub transmissions: Vec<bool>,
}

impl SlotDraws {
    pub fn quiet(edge_count: usize) -> Self {
        Self {
            event: false,
            server_sample: false,
            transmissions: vec![false; edge_count],
        }
    }
}

pub(crate) struct Sampler {
    event: Bernoulli,
    sample: Bernoulli,
    gossip: Bernoulli,
}

impl Sampler {
    pub(crate) fn new(params: &SystemParams) -> Self {
        // probabilities are validated in (0, 1]
        let b = |p: f64| Bernoulli::new(p).expect("validated probability");
        Self {
            event: b(params.event_rate()),
            sample: b(params.sample_rate()),
            gossip: b(params.gossip_rate()),
        }
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut SlotDraws) {
        out.event = self.event.sample(rng);
        out.server_sample = self.sample.sample(rng);
        for t in out.transmissions.iter_mut() {
            *t = self.gossip.sample(rng);
        }
    }
}

/// Deterministic slot transition given the slot's draws, written into `next`.
pub(crate) fn apply_into(
    state: &SimState,
    draws: &SlotDraws,
    topology: &Topology,
    profile: &[bool],
    next: &mut SimState,
) {
    let bump = u64::from(draws.event);
    let held = if draws.server_sample {
        0
    } else {
        state.server_age
    };
    next.server_age = held + bump;
    for (i, slot) in next.node_ages.iter_mut().enumerate() {
        let mut best = state.node_ages[i];
        if profile[i] {
            best = best.min(state.server_age);
        }
        for &(edge, src) in topology.incoming(i) {
            if draws.transmissions[edge] {
                best = best.min(state.node_ages[src]);
            }
        }
        *slot = best + bump;
        debug_assert!(*slot <= state.node_ages[i] + 1);
    }
    debug_assert_eq!(
        next.server_age,
        match (draws.event, draws.server_sample) {
            (false, true) => 0,
            (true, true) => 1,
            (false, false) => state.server_age,
            (true, false) => state.server_age + 1,
        }
    );
}

/// One slot transition under fixed draws.
pub fn apply_slot(
    state: &SimState,
    draws: &SlotDraws,
    topology: &Topology,
    profile: &SubscriptionProfile,
) -> Result<SimState> {
    let n = topology.node_count();
    profile.check_len(n)?;
    if state.node_ages.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: state.node_ages.len(),
        });
    }
    if draws.transmissions.len() != topology.edges().len() {
        return Err(Error::DimensionMismatch {
            expected: topology.edges().len(),
            found: draws.transmissions.len(),
        });
    }
    let mut next = SimState::zero(n);
    apply_into(state, draws, topology, profile.actions(), &mut next);
    Ok(next)
}

/// Draws one slot's randomness from `rng` and applies it.
pub fn step<R: Rng + ?Sized>(
    state: &SimState,
    topology: &Topology,
    profile: &SubscriptionProfile,
    params: &SystemParams,
    rng: &mut R,
) -> Result<SimState> {
    let mut draws = SlotDraws::quiet(topology.edges().len());
    Sampler::new(params).draw(rng, &mut draws);
    apply_slot(state, &draws, topology, profile)
}
