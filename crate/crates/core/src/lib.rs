//! Candidate boundary slopes of arborescent knots.
//!
//! A knot is given as the numerator closure of an algebraic tangle, written
//! as sums (`+`) and products (`o`) of rational tangles. Each rational tangle
//! gets an edgepath in the diagram of train-track weights; edgepath systems
//! that close up give candidate surfaces, and each candidate's boundary slope
//! is its twist number minus that of a Seifert surface.

pub mod diagram;
pub mod edgepath;
pub mod error;
pub mod fraction;
pub mod parse;
pub mod slopecalc;
pub mod solver;
pub mod tangle;
pub mod transform;

pub use diagram::{DiagramPoint, WeightState};
pub use edgepath::Edgepath;
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use parse::{parse, ParseError};
pub use tangle::TangleExpr;
