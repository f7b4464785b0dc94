//! The JSON report format.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use arborslope::edgepath::Edgepath;
use arborslope::slopecalc::{CandidateSystem, NodeRecord, Presentation, SystemKind};
use arborslope::solver::{Bounds, CrossingSource, SlopeReport};
use arborslope::{parse, DiagramPoint, Fraction};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    /// Canonical rendering of the input expression.
    pub expr: String,
    pub bounds: Bounds,
    pub slopes: Vec<Fraction>,
    pub certified_slopes: Vec<Fraction>,
    pub diameter: Option<Fraction>,
    pub crossings: Crossings,
    pub ratio: Option<Fraction>,
    pub systems_found: usize,
    pub systems: Vec<SystemDocument>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossings {
    pub count: u64,
    pub source: CrossingSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub slope: Fraction,
    pub kind: SystemKind,
    pub presentation: Presentation,
    /// The expression the edgepaths belong to.
    pub expr: String,
    pub tau: Fraction,
    pub tau_seifert: Fraction,
    pub closure: Option<DiagramPoint>,
    pub edgepaths: Vec<Edgepath>,
    pub nodes: Vec<NodeRecord>,
}

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("expression does not parse: {0}")]
    Expr(#[from] arborslope::ParseError),
    #[error("expression {0:?} is not in canonical form")]
    NotCanonical(String),
    #[error("slopes are not strictly increasing")]
    Unsorted,
}

impl From<&CandidateSystem> for SystemDocument {
    fn from(s: &CandidateSystem) -> Self {
        SystemDocument {
            slope: s.slope,
            kind: s.kind,
            presentation: s.presentation,
            expr: s.expr.to_string(),
            tau: s.tau,
            tau_seifert: s.tau_seifert,
            closure: s.closure_point(),
            edgepaths: s.edgepaths.clone(),
            nodes: s.nodes.clone(),
        }
    }
}

impl From<&SlopeReport> for ReportDocument {
    fn from(r: &SlopeReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            expr: r.expr.to_string(),
            bounds: r.bounds,
            slopes: r.slopes.clone(),
            certified_slopes: r.certified.clone(),
            diameter: r.diameter,
            crossings: Crossings {
                count: r.crossings,
                source: r.crossing_source,
            },
            ratio: r.ratio,
            systems_found: r.systems_found,
            systems: r.systems.iter().map(SystemDocument::from).collect(),
            diagnostics: r.diagnostics.clone(),
        }
    }
}

fn canonical(text: &str) -> Result<(), DecodeError> {
    if parse(text)?.to_string() != text {
        return Err(DecodeError::NotCanonical(text.to_string()));
    }
    Ok(())
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Decodes and checks a report: known version, canonical expressions and
    /// strictly increasing slopes.
    pub fn from_json(text: &str) -> Result<ReportDocument, DecodeError> {
        let doc: ReportDocument = serde_json::from_str(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(DecodeError::Version(doc.schema_version));
        }
        canonical(&doc.expr)?;
        for s in &doc.systems {
            canonical(&s.expr)?;
        }
        if doc.slopes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DecodeError::Unsorted);
        }
        Ok(doc)
    }
}
