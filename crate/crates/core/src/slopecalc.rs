//! Twist numbers of candidate surfaces and their boundary slopes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{left_neighbors, uv_coords, DiagramPoint, ParityClass, WeightState};
use crate::edgepath::Edgepath;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::tangle::TangleExpr;
use crate::transform::{common_scale, glue_sum, rotate_reflect, TransformOutcome};

/// Twist number of a sum of two surfaces.
pub fn tau_sum(t1: Fraction, t2: Fraction) -> Fraction {
    t1 + t2
}

/// Twist number of a product: the left surface is reflected (negating its
/// twist) and rotated (adding `tp1`).
pub fn tau_product(t1: Fraction, tp1: Fraction, t2: Fraction) -> Fraction {
    -t1 + tp1 + t2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    Sum,
    Product,
}

/// Weights and twist number at one node of the expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NodeRecord {
    pub kind: NodeKind,
    pub state: WeightState,
    pub tau: Fraction,
    /// Factor applied to this node's contribution when glued into its parent.
    pub scale: i64,
    /// For a product node, the move applied to its left child.
    pub transform: Option<TransformOutcome>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    Candidate,
    Seifert,
}

/// Which presentation of the knot a system was found on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    Given,
    Mirror,
}

/// A closed edgepath system with its per-node bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateSystem {
    /// The expression the edgepaths belong to.
    pub expr: TangleExpr,
    pub kind: SystemKind,
    pub presentation: Presentation,
    /// One edgepath per leaf, left to right.
    pub edgepaths: Vec<Edgepath>,
    /// Node records in pre-order. Empty for a Seifert system.
    pub nodes: Vec<NodeRecord>,
    pub tau: Fraction,
    pub tau_seifert: Fraction,
    pub slope: Fraction,
}

/// Evaluates the node records of `expr` bottom-up from the leaf edgepaths,
/// rescaling siblings to a common `(a, b)` by the smallest factors.
pub fn assemble(
    expr: &TangleExpr,
    edgepaths: &[Edgepath],
    scale_bound: i64,
) -> Result<Vec<NodeRecord>> {
    fn rec(
        e: &TangleExpr,
        paths: &mut std::slice::Iter<'_, Edgepath>,
        bound: i64,
        out: &mut Vec<NodeRecord>,
    ) -> Result<usize> {
        let at = out.len();
        out.push(NodeRecord {
            kind: NodeKind::Leaf,
            state: WeightState::new(0, 0, 0),
            tau: Fraction::ZERO,
            scale: 1,
            transform: None,
        });
        let rec_out = match e {
            TangleExpr::Rational(_) => {
                let p = paths
                    .next()
                    .ok_or_else(|| Error::UnsupportedShape("fewer edgepaths than leaves".into()))?;
                NodeRecord {
                    kind: NodeKind::Leaf,
                    state: p.endpoint_state_scaled(),
                    tau: p.tau(),
                    scale: 1,
                    transform: None,
                }
            }
            TangleExpr::Sum(l, r) | TangleExpr::Product(l, r) => {
                let li = rec(l, paths, bound, out)?;
                let ri = rec(r, paths, bound, out)?;
                let is_product = matches!(e, TangleExpr::Product(..));
                let (left_state, transform) = if is_product {
                    let t = rotate_reflect(&out[li].state)?;
                    (t.state, Some(t))
                } else {
                    (out[li].state, None)
                };
                let right_state = out[ri].state;
                let (fl, fr) = common_scale(&left_state, &right_state, bound).ok_or(
                    Error::MismatchedWeights {
                        a1: left_state.a,
                        b1: left_state.b,
                        a2: right_state.a,
                        b2: right_state.b,
                    },
                )?;
                out[li].scale = fl;
                out[ri].scale = fr;
                let state = glue_sum(&left_state.scale(fl), &right_state.scale(fr))?;
                let (lt, rt) = (out[li].tau, out[ri].tau);
                match transform {
                    Some(t) => NodeRecord {
                        kind: NodeKind::Product,
                        state,
                        tau: tau_product(lt, t.tau_prime, rt),
                        scale: 1,
                        transform: Some(t),
                    },
                    None => NodeRecord {
                        kind: NodeKind::Sum,
                        state,
                        tau: tau_sum(lt, rt),
                        scale: 1,
                        transform: None,
                    },
                }
            }
        };
        out[at] = rec_out;
        Ok(at)
    }
    let mut out = Vec::with_capacity(expr.node_count());
    let mut it = edgepaths.iter();
    rec(expr, &mut it, scale_bound, &mut out)?;
    if it.next().is_some() {
        return Err(Error::UnsupportedShape("more edgepaths than leaves".into()));
    }
    Ok(out)
}

impl CandidateSystem {
    /// Builds a candidate system and checks that it closes up.
    pub fn candidate(
        expr: TangleExpr,
        presentation: Presentation,
        edgepaths: Vec<Edgepath>,
        scale_bound: i64,
        tau_seifert: Fraction,
    ) -> Result<CandidateSystem> {
        let nodes = assemble(&expr, &edgepaths, scale_bound)?;
        let tau = nodes[0].tau;
        Ok(CandidateSystem {
            expr,
            kind: SystemKind::Candidate,
            presentation,
            edgepaths,
            nodes,
            tau,
            tau_seifert,
            slope: tau - tau_seifert,
        })
    }

    /// The Seifert surface of `expr`, which has slope 0.
    pub fn seifert(expr: TangleExpr, presentation: Presentation) -> Result<CandidateSystem> {
        let s = seifert_system(&expr)?;
        Ok(CandidateSystem {
            expr,
            kind: SystemKind::Seifert,
            presentation,
            edgepaths: s.paths,
            nodes: Vec::new(),
            tau: s.tau,
            tau_seifert: s.tau,
            slope: Fraction::ZERO,
        })
    }

    /// Point of the glued state at the root, where closure requires `v = 0`.
    pub fn closure_point(&self) -> Option<DiagramPoint> {
        self.nodes.first().and_then(|n| uv_coords(&n.state).ok())
    }

    pub fn total_sheets(&self) -> i64 {
        self.nodes.first().map_or(1, |n| n.state.a)
    }

    pub fn vertical_edges(&self) -> usize {
        self.edgepaths.iter().map(Edgepath::vertical_edges).sum()
    }

    /// Re-derives everything from the leaf edgepaths and reports the first
    /// inconsistency.
    pub fn check(&self) -> std::result::Result<(), String> {
        let leaves = self.expr.leaves();
        if leaves.len() != self.edgepaths.len() {
            return Err(format!(
                "{} edgepaths for {} leaves",
                self.edgepaths.len(),
                leaves.len()
            ));
        }
        for (leaf, p) in leaves.iter().zip(&self.edgepaths) {
            if let Err(v) = p.validate_for(leaf.slope) {
                let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
                return Err(format!(
                    "leaf {} edgepath {p}: {}",
                    leaf.index,
                    msgs.join("; ")
                ));
            }
        }
        let seifert = seifert_tau(&self.expr).map_err(|e| e.to_string())?;
        if seifert != self.tau_seifert {
            return Err(format!(
                "stored tau(S0) {} but recomputed {seifert}",
                self.tau_seifert
            ));
        }
        if self.slope != self.tau - self.tau_seifert {
            return Err("slope is not tau - tau(S0)".into());
        }
        match self.kind {
            SystemKind::Seifert => {
                let s = seifert_system(&self.expr).map_err(|e| e.to_string())?;
                if s.paths != self.edgepaths || s.tau != self.tau {
                    return Err("Seifert edgepaths do not match the orientation".into());
                }
            }
            SystemKind::Candidate => {
                let nodes =
                    assemble(&self.expr, &self.edgepaths, i64::MAX).map_err(|e| e.to_string())?;
                if nodes != self.nodes {
                    return Err("node records differ from a bottom-up recomputation".into());
                }
                let root = &self.nodes[0].state;
                if root.c != 0 {
                    return Err(format!("root slope weight c = {} is not 0", root.c));
                }
                if self.expr.has_product() && root.b != 0 {
                    return Err(format!("root weight b = {} is not 0", root.b));
                }
                if self.tau != self.nodes[0].tau {
                    return Err("stored tau differs from the root record".into());
                }
            }
        }
        Ok(())
    }
}

/// Slope of a candidate: `tau(S) - tau(S0)`.
pub fn boundary_slope(system: &CandidateSystem) -> Result<Fraction> {
    Ok(system.tau - seifert_tau(&system.expr)?)
}

// Ports of a tangle ball.
const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

fn pairing(class: ParityClass) -> [(usize, usize); 2] {
    match class {
        ParityClass::Zero => [(NW, NE), (SW, SE)],
        ParityClass::Infinity => [(NW, SW), (NE, SE)],
        ParityClass::One => [(NW, SE), (NE, SW)],
    }
}

/// For each leaf, the parity class pairing its two incoming points when
/// the numerator closure is oriented. `None` when the closure is a link.
pub fn incoming_classes(expr: &TangleExpr) -> Option<Vec<ParityClass>> {
    type Port = (usize, usize);
    fn rec(e: &TangleExpr, leaves: &mut Vec<Fraction>, joins: &mut Vec<(Port, Port)>) -> [Port; 4] {
        match e {
            TangleExpr::Rational(f) => {
                let i = leaves.len();
                leaves.push(*f);
                [(i, NW), (i, NE), (i, SW), (i, SE)]
            }
            TangleExpr::Sum(l, r) | TangleExpr::Product(l, r) => {
                let mut lp = rec(l, leaves, joins);
                let rp = rec(r, leaves, joins);
                if matches!(e, TangleExpr::Product(..)) {
                    lp = [lp[NE], lp[SE], lp[NW], lp[SW]];
                }
                joins.push((lp[NE], rp[NW]));
                joins.push((lp[SE], rp[SW]));
                [lp[NW], rp[NE], lp[SW], rp[SE]]
            }
        }
    }
    let mut leaves = Vec::new();
    let mut joins = Vec::new();
    let root = rec(expr, &mut leaves, &mut joins);
    joins.push((root[NW], root[NE]));
    joins.push((root[SW], root[SE]));
    let mut outside: HashMap<Port, Port> = HashMap::new();
    for (x, y) in joins {
        outside.insert(x, y);
        outside.insert(y, x);
    }
    let mut inside: HashMap<Port, Port> = HashMap::new();
    for (i, f) in leaves.iter().enumerate() {
        for (x, y) in pairing(ParityClass::of(*f)) {
            inside.insert((i, x), (i, y));
            inside.insert((i, y), (i, x));
        }
    }
    let mut incoming = vec![[false; 4]; leaves.len()];
    let mut visited = 0;
    let start = (0, NW);
    let mut at = start;
    loop {
        incoming[at.0][at.1] = true;
        at = outside[&inside[&at]];
        visited += 2;
        if at == start {
            break;
        }
    }
    if visited != 4 * leaves.len() {
        return None;
    }
    let classes = incoming
        .iter()
        .map(|inc| {
            let ins: Vec<usize> = (0..4).filter(|&k| inc[k]).collect();
            [ParityClass::Zero, ParityClass::Infinity, ParityClass::One]
                .into_iter()
                .find(|&c| pairing(c).iter().any(|&(x, y)| [x, y] == ins[..]))
                .expect("two incoming ports")
        })
        .collect();
    Some(classes)
}

/// The Seifert surface's edgepaths up to the line `u = 0`, with the
/// reflection-signed twist total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertSystem {
    pub paths: Vec<Edgepath>,
    pub signs: Vec<i64>,
    pub tau: Fraction,
}

/// Leftward path from `<slope>` avoiding vertices of class `bad`.
fn avoiding_path(slope: Fraction, bad: ParityClass) -> Vec<Fraction> {
    let mut v = vec![slope];
    while let Some(nb) = left_neighbors(*v.last().unwrap()) {
        let next = nb
            .into_iter()
            .find(|x| ParityClass::of(*x) != bad)
            .expect("triangle vertices have distinct classes");
        v.push(next);
    }
    v
}

/// Builds the Seifert system: each leaf's path avoids the vertices whose
/// parity class would join its two incoming points, then continues from an
/// integer to `<1/0>`, an edge that carries no twist.
pub fn seifert_system(expr: &TangleExpr) -> Result<SeifertSystem> {
    for (sub, _) in expr.maximal_montesinos() {
        if sub.leaves().iter().all(|l| l.slope.den() % 2 == 1) {
            return Err(Error::SeifertUndefined(format!(
                "no rational tangle with even denominator in {sub}"
            )));
        }
    }
    let classes = incoming_classes(expr)
        .ok_or_else(|| Error::SeifertUndefined("the numerator closure is a link".into()))?;
    let mut paths = Vec::new();
    let mut signs = Vec::new();
    let mut tau = Fraction::ZERO;
    for (leaf, bad) in expr.leaves().iter().zip(classes) {
        if bad == ParityClass::Infinity {
            return Err(Error::SeifertUndefined(format!(
                "leaf {} has no orientable edgepath to <1/0>",
                leaf.slope
            )));
        }
        let path = Edgepath::path(avoiding_path(leaf.slope, bad));
        let sign = if leaf.reflection_parity() == 1 { -1 } else { 1 };
        tau += path.tau() * sign;
        paths.push(path);
        signs.push(sign);
    }
    Ok(SeifertSystem { paths, signs, tau })
}

/// Twist number of a Seifert surface.
pub fn seifert_tau(expr: &TangleExpr) -> Result<Fraction> {
    Ok(seifert_system(expr)?.tau)
}
