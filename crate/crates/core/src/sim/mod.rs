//! Slotted Monte Carlo engine for version ages on arbitrary directed graphs.
//!
//! Each slot draws an event update (`p_e`), a server sample (`beta`) and an
//! independent forwarding decision (`p`) per directed edge. Every node takes
//! the freshest version among its own, the server's (if it subscribes) and
//! those of in-neighbours that forwarded this slot; all updates read slot-`t`
//! state only.

mod engine;
mod estimate;

pub use engine::{apply_slot, step, SimState, SlotDraws};
pub use estimate::{alternate_age, estimate_ages, AgeEstimate, NodeEstimate, SimConfig};
