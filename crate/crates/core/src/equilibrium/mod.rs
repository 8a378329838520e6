//! AC-stability, exhaustive equilibrium enumeration, server-preferred
//! selection and the server's choice of sampling rate.

mod cost;
mod enumerate;
mod optimize;
mod oracle;
mod stability;

pub use cost::{server_utility, CostFunction};
pub use enumerate::{enumerate_stable_profiles, server_preferred, DEFAULT_ENUMERATION_CAP};
pub use optimize::{optimize_beta, Candidate, EquilibriumReport, OptimizeTarget, SearchSettings};
pub use oracle::{AgeOracle, AgeValue, AnalyticOracle, SimOracle};
pub use stability::{is_ac_stable, NodeEvidence, NodeStatus, StabilityVerdict, TolerancePolicy};
