//! Parameters, topologies, subscription profiles and the closed-form
//! server/subscriber ages that everything else builds on.

mod age;
mod params;
mod profile;
mod rate;
mod topology;

pub use age::{ac_threshold, server_age, subscriber_age};
pub use params::SystemParams;
pub use profile::SubscriptionProfile;
pub use rate::ExtendedRate;
pub use topology::{Topology, TopologyClass};
