use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Bounds, SLOPE_CAP};
use crate::edgepath::Edgepath;
use crate::fraction::Fraction;
use crate::slopecalc::CandidateSystem;
use crate::tangle::{family_crossing_count, TangleExpr};

/// Where a report's crossing count comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingSource {
    /// The proven crossing number `4n` of `K_n`.
    #[serde(rename = "family-exact")]
    FamilyExact,
    /// Crossings of the standard diagram, an upper bound.
    #[serde(rename = "diagram-count")]
    DiagramCount,
}

/// Candidate slopes of one knot with the systems that realize them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeReport {
    pub expr: TangleExpr,
    /// Kept systems, sorted by slope, at most [`SLOPE_CAP`] per slope.
    pub systems: Vec<CandidateSystem>,
    /// Distinct candidate slopes, ascending.
    pub slopes: Vec<Fraction>,
    pub diameter: Option<Fraction>,
    pub crossings: u64,
    pub crossing_source: CrossingSource,
    pub ratio: Option<Fraction>,
    pub bounds: Bounds,
    /// Slopes proven to be boundary slopes of essential surfaces (`K_n` only).
    pub certified: Vec<Fraction>,
    /// Distinct systems found before the per-slope cap.
    pub systems_found: usize,
    pub diagnostics: Vec<String>,
}

fn describe(paths: &[Edgepath]) -> String {
    paths
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Sorts, deduplicates and caps `systems`, then derives the slope set,
/// diameter and ratio.
pub fn report(
    expr: &TangleExpr,
    systems: Vec<CandidateSystem>,
    bounds: Bounds,
    diagnostics: Vec<String>,
) -> SlopeReport {
    let mut seen = HashSet::new();
    let mut keyed: Vec<_> = systems
        .into_iter()
        .filter(|s| seen.insert((s.presentation, s.kind, s.edgepaths.clone())))
        .map(|s| {
            let key = (
                s.slope,
                s.kind,
                s.presentation,
                s.total_sheets(),
                s.vertical_edges(),
                describe(&s.edgepaths),
            );
            (key, s)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    let systems_found = keyed.len();

    let mut per_slope: BTreeMap<Fraction, usize> = BTreeMap::new();
    let mut kept = Vec::new();
    for (_, s) in keyed {
        let n = per_slope.entry(s.slope).or_default();
        if *n < SLOPE_CAP {
            *n += 1;
            kept.push(s);
        }
    }
    let slopes: Vec<Fraction> = per_slope.keys().copied().collect();
    let diameter = match (slopes.first(), slopes.last()) {
        (Some(lo), Some(hi)) => Some(*hi - *lo),
        _ => None,
    };
    let family = expr.match_kn_family();
    let (crossings, crossing_source) = match family.and_then(|n| family_crossing_count(n).ok()) {
        Some(c) => (c, CrossingSource::FamilyExact),
        None => (expr.diagram_crossings(), CrossingSource::DiagramCount),
    };
    let ratio = match diameter {
        Some(d) if crossings > 0 => Some(d / Fraction::integer(crossings as i64)),
        _ => None,
    };
    let certified = match family {
        Some(n) => {
            let s = 2 * (n + 1) * (n + 1) - 4;
            vec![Fraction::integer(-s), Fraction::integer(s)]
        }
        None => Vec::new(),
    };
    SlopeReport {
        expr: expr.clone(),
        systems: kept,
        slopes,
        diameter,
        crossings,
        crossing_source,
        ratio,
        bounds,
        certified,
        systems_found,
        diagnostics,
    }
}
