//! Version-age gossip networks with a subscribing server.
//!
//! A server samples a changing event and pushes its latest version to users
//! that subscribe; everyone else relies on gossip over a directed graph. Each
//! user wants its long-run mean version age below `L` times a subscriber's.
//! This crate simulates the slotted dynamics ([`sim`]), evaluates the closed
//! forms for lines, trees and stars ([`analytic`]), enumerates AC-stable
//! subscription profiles and picks the server's utility-maximizing sampling
//! rate ([`equilibrium`]), and drives all of it from flat config files
//! ([`cli`]).

pub mod analytic;
pub mod cli;
pub mod equilibrium;
mod error;
pub mod model;
pub mod sim;

pub use error::{Error, Result};
pub use model::{
    ac_threshold, server_age, subscriber_age, ExtendedRate, SubscriptionProfile, SystemParams,
    Topology, TopologyClass,
};
