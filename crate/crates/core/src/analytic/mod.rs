//! Closed forms for directed lines, regular out-trees and stars.

mod ages;
mod line;
mod star;
mod tree;

pub use ages::profile_ages;
pub use line::{
    critical_spacing, line_beta_star, line_finite_fs, line_fs, line_k_star, line_node_age,
    line_profile,
};
pub use star::{star_regime, star_thresholds, RegimeReport, StarRegime, StarThresholds};
pub use tree::{tree_fs, tree_profile};

/// `ceil(x)`, except that values within a relative `1e-9` of an integer snap
/// to that integer. Critical rates are computed as reciprocals, and feeding
/// one back into the spacing formula lands a few ulps off the exact integer.
pub(crate) fn snapped_ceil(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * nearest.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}
