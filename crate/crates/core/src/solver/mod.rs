//! Closing edgepath systems and collecting their slopes.

mod montesinos;
mod report;
mod sn;

pub use montesinos::solve_montesinos;
pub use report::{report, CrossingSource, SlopeReport};
pub use sn::{kn_system, kn_trace, solve_sn, KnTrace};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::tangle::TangleExpr;

/// Systems kept per distinct slope.
pub const SLOPE_CAP: usize = 16;

pub const DEFAULT_SCALE_BOUND: i64 = 2;

/// Search limits: `c_bound` caps the height of integer endpoints and of
/// constant edgepaths, `scale_bound` caps the factor used to bring glued
/// states to a common `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub c_bound: i64,
    pub scale_bound: i64,
}

impl Bounds {
    /// `max(8, n^2 + n + 2)` for the `K_n` family, 32 otherwise.
    pub fn default_for(expr: &TangleExpr) -> Bounds {
        let c_bound = match expr.match_kn_family() {
            Some(n) => (n * n + n + 2).max(8),
            None => 32,
        };
        Bounds {
            c_bound,
            scale_bound: DEFAULT_SCALE_BOUND,
        }
    }
}

/// Runs the solver that fits the shape of `expr`.
pub fn solve(expr: &TangleExpr, bounds: Bounds) -> Result<SlopeReport> {
    if expr.has_product() {
        solve_sn(expr, bounds)
    } else {
        solve_montesinos(expr, bounds.c_bound)
    }
}
