//! Edgepaths in the diagram: validation, twist counts and enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{self, is_edge, is_triangle, left_neighbors, DiagramPoint, WeightState};
use crate::error::{Error, Result};
use crate::fraction::{lcm_i64, Fraction};

/// An edgepath for one rational tangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Edgepath {
    /// A single point on the horizontal edge at height `slope`, to the right
    /// of the vertex `<slope>`.
    Constant { slope: Fraction, state: WeightState },
    /// A vertex path starting at `vertices[0]`. The last edge is traversed
    /// only up to `final_fraction`, measured in sheet weight.
    Path {
        vertices: Vec<Fraction>,
        final_fraction: Fraction,
        sheets: i64,
    },
}

/// A broken edgepath property, with the vertex index where it shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// E1: the path does not start at the tangle's vertex.
    WrongStart {
        expected: Fraction,
        found: Fraction,
    },
    /// E1: a constant edgepath lies off the horizontal edge of its slope.
    OffHorizontalEdge,
    EmptyPath,
    /// E2: repeated vertex.
    Stop {
        index: usize,
    },
    /// E2: the path turns back along the edge it came from.
    Retrace {
        index: usize,
    },
    /// E2: two successive sides of one triangle.
    TriangleShortcut {
        index: usize,
    },
    /// E4: the path moves to the right.
    Rightward {
        index: usize,
    },
    NotAnEdge {
        index: usize,
    },
    BadFinalFraction,
    BadSheets,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongStart { expected, found } => {
                write!(f, "E1: starts at <{found}> instead of <{expected}>")
            }
            Violation::OffHorizontalEdge => {
                write!(f, "E1: constant point is off its horizontal edge")
            }
            Violation::EmptyPath => write!(f, "path has no vertices"),
            Violation::Stop { index } => write!(f, "E2: stops at vertex {index}"),
            Violation::Retrace { index } => write!(f, "E2: retraces at vertex {index}"),
            Violation::TriangleShortcut { index } => {
                write!(f, "E2: two sides of one triangle at vertex {index}")
            }
            Violation::Rightward { index } => write!(f, "E4: moves right at vertex {index}"),
            Violation::NotAnEdge { index } => write!(f, "no edge into vertex {index}"),
            Violation::BadFinalFraction => write!(f, "final fraction outside (0, 1]"),
            Violation::BadSheets => write!(f, "sheet count must be positive"),
        }
    }
}

/// `+1` for an edge that increases slope, `-1` for one that decreases it.
fn direction(from: Fraction, to: Fraction) -> i64 {
    if to > from {
        1
    } else {
        -1
    }
}

impl Edgepath {
    /// A full vertex path on one sheet.
    pub fn path(vertices: Vec<Fraction>) -> Edgepath {
        Edgepath::Path {
            vertices,
            final_fraction: Fraction::ONE,
            sheets: 1,
        }
    }

    pub fn constant(slope: Fraction, state: WeightState) -> Edgepath {
        Edgepath::Constant { slope, state }
    }

    pub fn start(&self) -> Option<Fraction> {
        match self {
            Edgepath::Constant { slope, .. } => Some(*slope),
            Edgepath::Path { vertices, .. } => vertices.first().copied(),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Edgepath::Constant { .. })
    }

    pub fn vertices(&self) -> &[Fraction] {
        match self {
            Edgepath::Constant { .. } => &[],
            Edgepath::Path { vertices, .. } => vertices,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().len().saturating_sub(1)
    }

    /// Number of edges along the line `u = 0`.
    pub fn vertical_edges(&self) -> usize {
        self.vertices()
            .windows(2)
            .filter(|w| w[0].is_integer() && w[1].is_integer())
            .count()
    }

    /// Checks E2, E4, adjacency and the structural fields.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        match self {
            Edgepath::Constant { slope, state } => {
                let (p, q) = (slope.num() as i128, slope.den() as i128);
                let (a, b, c) = (state.a as i128, state.b as i128, state.c as i128);
                let on_line = a >= 0 && a + b > 0 && c * q == p * (a + b);
                let right_of_vertex = b >= (q - 1) * a;
                if !on_line || !right_of_vertex || state.n_inf != 0 || state.has_zero {
                    out.push(Violation::OffHorizontalEdge);
                }
            }
            Edgepath::Path {
                vertices,
                final_fraction,
                sheets,
            } => {
                if vertices.is_empty() {
                    out.push(Violation::EmptyPath);
                }
                if *sheets < 1 {
                    out.push(Violation::BadSheets);
                }
                let ff_ok = *final_fraction > Fraction::ZERO && *final_fraction <= Fraction::ONE;
                if !ff_ok || (vertices.len() < 2 && *final_fraction != Fraction::ONE) {
                    out.push(Violation::BadFinalFraction);
                }
                for i in 1..vertices.len() {
                    let (x, y) = (vertices[i - 1], vertices[i]);
                    if x == y {
                        out.push(Violation::Stop { index: i });
                        continue;
                    }
                    if !is_edge(x, y) {
                        out.push(Violation::NotAnEdge { index: i });
                    }
                    if y.den() > x.den() {
                        out.push(Violation::Rightward { index: i });
                    }
                    if i >= 2 {
                        let w = vertices[i - 2];
                        if w == y {
                            out.push(Violation::Retrace { index: i });
                        } else if is_triangle(w, x, y) {
                            out.push(Violation::TriangleShortcut { index: i });
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// [`validate`](Self::validate) plus E1 for the rational tangle `slope`.
    pub fn validate_for(&self, slope: Fraction) -> std::result::Result<(), Vec<Violation>> {
        let mut out = self.validate().err().unwrap_or_default();
        if let Some(found) = self.start() {
            if found != slope {
                out.insert(
                    0,
                    Violation::WrongStart {
                        expected: slope,
                        found,
                    },
                );
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Twist number `2(e_- - e_+)`, the last edge weighted by `final_fraction`.
    pub fn tau(&self) -> Fraction {
        match self {
            Edgepath::Constant { .. } => Fraction::ZERO,
            Edgepath::Path {
                vertices,
                final_fraction,
                ..
            } => {
                let n = vertices.len();
                let mut net = Fraction::ZERO;
                for i in 1..n {
                    let d = direction(vertices[i - 1], vertices[i]);
                    let w = if i == n - 1 {
                        *final_fraction
                    } else {
                        Fraction::ONE
                    };
                    net += w * d;
                }
                -net * 2
            }
        }
    }

    /// Endpoint weights at one sheet per unit, as rationals `(b, c)` with `a = 1`.
    fn unit_endpoint(&self) -> (Fraction, Fraction) {
        match self {
            Edgepath::Constant { state, .. } => {
                let a = Fraction::integer(state.a);
                (
                    Fraction::integer(state.b) / a,
                    Fraction::integer(state.c) / a,
                )
            }
            Edgepath::Path {
                vertices,
                final_fraction,
                ..
            } => {
                let last = *vertices.last().expect("nonempty path");
                if vertices.len() < 2 || *final_fraction == Fraction::ONE {
                    return (
                        Fraction::integer(last.den() - 1),
                        Fraction::integer(last.num()),
                    );
                }
                let prev = vertices[vertices.len() - 2];
                let l = *final_fraction;
                let k = Fraction::ONE - l;
                let b = k * (prev.den() - 1) + l * (last.den() - 1);
                let c = k * prev.num() + l * last.num();
                (b, c)
            }
        }
    }

    pub fn endpoint_point(&self) -> DiagramPoint {
        let (b, c) = self.unit_endpoint();
        let total = Fraction::ONE + b;
        DiagramPoint {
            u: b / total,
            v: c / total,
        }
    }

    /// Integer endpoint weights. Fails for a fractional final edge.
    pub fn endpoint_state(&self) -> Result<WeightState> {
        match self {
            Edgepath::Constant { state, .. } => Ok(*state),
            Edgepath::Path {
                vertices,
                final_fraction,
                sheets,
            } => {
                if vertices.len() >= 2 && *final_fraction != Fraction::ONE {
                    return Err(Error::FractionalEndpoint);
                }
                let last = *vertices.last().ok_or(Error::FractionalEndpoint)?;
                Ok(diagram::vertex_triple(last).scale(*sheets))
            }
        }
    }

    /// The smallest integer multiple of the endpoint weights, times `sheets`.
    pub fn endpoint_state_scaled(&self) -> WeightState {
        if let Ok(w) = self.endpoint_state() {
            return w;
        }
        let (b, c) = self.unit_endpoint();
        let k = lcm_i64(b.den(), c.den());
        let sheets = match self {
            Edgepath::Path { sheets, .. } => *sheets,
            Edgepath::Constant { .. } => 1,
        };
        WeightState::new(k, (b * k).num(), (c * k).num()).scale(sheets)
    }

    /// Reflects every slope. Swaps slope-increasing and slope-decreasing edges.
    pub fn mirror(&self) -> Edgepath {
        match self {
            Edgepath::Constant { slope, state } => Edgepath::Constant {
                slope: -*slope,
                state: WeightState {
                    c: -state.c,
                    ..*state
                },
            },
            Edgepath::Path {
                vertices,
                final_fraction,
                sheets,
            } => Edgepath::Path {
                vertices: vertices.iter().map(|v| -*v).collect(),
                final_fraction: *final_fraction,
                sheets: *sheets,
            },
        }
    }

    /// Joins two full paths at a shared vertex.
    pub fn concat(&self, other: &Edgepath) -> Option<Edgepath> {
        let (Edgepath::Path { vertices: a, .. }, Edgepath::Path { vertices: b, .. }) =
            (self, other)
        else {
            return None;
        };
        if a.last() != b.first() {
            return None;
        }
        let mut v = a.clone();
        v.extend_from_slice(&b[1..]);
        Some(Edgepath::path(v))
    }
}

impl fmt::Display for Edgepath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edgepath::Constant { slope, state } => {
                write!(f, "const <{slope}> ({},{},{})", state.a, state.b, state.c)
            }
            Edgepath::Path {
                vertices,
                final_fraction,
                sheets,
            } => {
                for (i, v) in vertices.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" -> ")?;
                    }
                    write!(f, "<{v}>")?;
                }
                if *final_fraction != Fraction::ONE {
                    write!(f, " (last edge x{final_fraction})")?;
                }
                if *sheets != 1 {
                    write!(f, " x{sheets} sheets")?;
                }
                Ok(())
            }
        }
    }
}

/// All minimal leftward vertex paths from `<start>` to the line `u = 0`,
/// stopping at the first integer vertex. Moves are tried in order of
/// ascending denominator, then ascending slope.
pub fn paths_to_integers(start: Fraction) -> Vec<Vec<Fraction>> {
    fn rec(path: &mut Vec<Fraction>, out: &mut Vec<Vec<Fraction>>) {
        let here = *path.last().unwrap();
        let Some(next) = left_neighbors(here) else {
            out.push(path.clone());
            return;
        };
        for nb in next {
            if path.len() >= 2 && is_edge(path[path.len() - 2], nb) {
                continue;
            }
            path.push(nb);
            rec(path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![start], &mut out);
    out
}

/// Whether a path ending at the integer vertex `vertices.last()` may
/// continue up (`dir = 1`) or down (`dir = -1`) along `u = 0` without
/// running along two sides of a triangle.
pub fn vertical_allowed(vertices: &[Fraction], dir: i64) -> bool {
    let k = *vertices.last().unwrap();
    let next = k + Fraction::integer(dir);
    match vertices.len() {
        0 | 1 => true,
        n => {
            let prev = vertices[n - 2];
            prev != next && !is_triangle(prev, k, next)
        }
    }
}

/// A family of edgepaths from one rational tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathFamily {
    /// Constant edgepaths on the horizontal edge of `slope`.
    Constant { slope: Fraction },
    /// A full path ending at a vertex with `u > 0`.
    Vertex(Edgepath),
    /// A full path reaching `u = 0` at `<k>`, followed by a run along `u = 0`
    /// to any `<m>` with `lo <= m <= hi`. The run length is left open.
    Vertical { base: Edgepath, lo: i64, hi: i64 },
}

impl PathFamily {
    /// Concrete edgepaths: one sheet, constants omitted.
    pub fn expand(&self) -> Vec<Edgepath> {
        match self {
            PathFamily::Constant { .. } => Vec::new(),
            PathFamily::Vertex(p) => vec![p.clone()],
            PathFamily::Vertical { base, lo, hi } => {
                (*lo..=*hi).map(|m| with_vertical_run(base, m)).collect()
            }
        }
    }
}

/// Extends a path ending at an integer vertex along `u = 0` to `<m>`.
pub fn with_vertical_run(base: &Edgepath, m: i64) -> Edgepath {
    let mut v = base.vertices().to_vec();
    let k = v
        .last()
        .expect("nonempty")
        .to_integer()
        .expect("ends at u = 0");
    let step = if m >= k { 1 } else { -1 };
    let mut x = k;
    while x != m {
        x += step;
        v.push(Fraction::integer(x));
    }
    Edgepath::path(v)
}

/// Enumerates the edgepath families from `<start>`.
///
/// With `target_u_zero` only paths that reach `u = 0` are returned (plus the
/// constant family); otherwise paths ending at every intermediate vertex are
/// included too. Endpoints on `u = 0` are kept to `|m| <= c_bound`.
pub fn enumerate_paths(start: Fraction, target_u_zero: bool, c_bound: i64) -> Vec<PathFamily> {
    let mut out = vec![PathFamily::Constant { slope: start }];
    let mut seen = std::collections::HashSet::new();
    for full in paths_to_integers(start) {
        for len in 2..=full.len() {
            let prefix = &full[..len];
            if len < full.len() && !target_u_zero && seen.insert(prefix.to_vec()) {
                out.push(PathFamily::Vertex(Edgepath::path(prefix.to_vec())));
            }
        }
        let k = full.last().unwrap().to_integer().unwrap();
        let lo = if vertical_allowed(&full, -1) {
            -c_bound
        } else {
            k
        };
        let hi = if vertical_allowed(&full, 1) {
            c_bound
        } else {
            k
        };
        let (lo, hi) = (lo.max(-c_bound), hi.min(c_bound));
        if lo <= hi {
            out.push(PathFamily::Vertical {
                base: Edgepath::path(full),
                lo,
                hi,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn path(v: &[(i64, i64)]) -> Edgepath {
        Edgepath::path(v.iter().map(|&(n, d)| fr(n, d)).collect())
    }

    fn kn_outer_path(n: i64) -> Edgepath {
        let mut v: Vec<Fraction> = (1..=n + 1).rev().map(|d| fr(1, d)).collect();
        v.extend((2..=n * n + n).map(Fraction::integer));
        Edgepath::path(v)
    }

    #[test]
    fn validation_examples() {
        assert_eq!(path(&[(-1, 2), (0, 1)]).validate(), Ok(()));
        let bad = path(&[(1, 3), (1, 2), (1, 3)]).validate().unwrap_err();
        assert!(bad.contains(&Violation::Retrace { index: 2 }));
        let bad = path(&[(0, 1), (1, 2)]).validate().unwrap_err();
        assert!(bad.contains(&Violation::Rightward { index: 1 }));
        let bad = path(&[(1, 3), (1, 2), (0, 1)]).validate().unwrap_err();
        assert_eq!(bad, vec![Violation::TriangleShortcut { index: 2 }]);
        let bad = path(&[(1, 3), (1, 1)]).validate().unwrap_err();
        assert_eq!(bad, vec![Violation::NotAnEdge { index: 1 }]);
        let e1 = path(&[(1, 3), (0, 1)]).validate_for(fr(1, 2)).unwrap_err();
        assert!(matches!(e1[0], Violation::WrongStart { .. }));
        assert_eq!(kn_outer_path(2).validate_for(fr(1, 3)), Ok(()));
    }

    #[test]
    fn constant_validation() {
        let ok = Edgepath::constant(fr(-1, 2), WeightState::new(1, 5, -3));
        assert_eq!(ok.validate_for(fr(-1, 2)), Ok(()));
        let off_line = Edgepath::constant(fr(-1, 2), WeightState::new(1, 5, -2));
        assert_eq!(off_line.validate(), Err(vec![Violation::OffHorizontalEdge]));
        // left of the vertex <1/3>
        let left = Edgepath::constant(fr(1, 3), WeightState::new(2, 1, 1));
        assert_eq!(left.validate(), Err(vec![Violation::OffHorizontalEdge]));
    }

    #[test]
    fn endpoint_states() {
        assert_eq!(
            kn_outer_path(2).endpoint_state().unwrap().triple(),
            (1, 0, 6)
        );
        let c = Edgepath::constant(fr(-1, 2), WeightState::new(1, 5, -3));
        assert_eq!(c.endpoint_state().unwrap().triple(), (1, 5, -3));
        assert_eq!(
            path(&[(-1, 2), (0, 1)]).endpoint_state().unwrap().triple(),
            (1, 0, 0)
        );
        let partial = Edgepath::Path {
            vertices: vec![fr(1, 3), fr(1, 2)],
            final_fraction: fr(1, 2),
            sheets: 1,
        };
        assert_eq!(partial.endpoint_state(), Err(Error::FractionalEndpoint));
        // halfway in sheet weight: (1,2,1)/2 + (1,1,1)/2 = (1, 3/2, 1)
        assert_eq!(partial.endpoint_state_scaled().triple(), (2, 3, 2));
        assert_eq!(
            partial.endpoint_point(),
            DiagramPoint {
                u: fr(3, 5),
                v: fr(2, 5)
            }
        );
    }

    #[test]
    fn tau_examples() {
        let c = Edgepath::constant(fr(1, 5), WeightState::new(1, 5, 1)).tau();
        assert_eq!(c, Fraction::ZERO);
        assert_eq!(path(&[(-1, 2), (0, 1)]).tau(), fr(-2, 1));
        assert_eq!(kn_outer_path(2).tau(), fr(-14, 1));
        let partial = Edgepath::Path {
            vertices: vec![fr(1, 7), Fraction::ZERO],
            final_fraction: fr(3, 4),
            sheets: 1,
        };
        assert_eq!(partial.tau(), fr(3, 2));
    }

    #[test]
    fn outer_path_tau_closed_form() {
        for n in 2..=8 {
            assert_eq!(
                kn_outer_path(n).tau(),
                Fraction::integer(-2 * (n * n + 2 * n - 1))
            );
            assert_eq!(path(&[(-1, n), (0, 1)]).tau(), Fraction::integer(-2));
        }
    }

    #[test]
    fn enumeration_examples() {
        let fams = enumerate_paths(fr(-1, 2), true, 1);
        let all: Vec<Edgepath> = fams.iter().flat_map(|f| f.expand()).collect();
        assert!(all.contains(&path(&[(-1, 2), (0, 1)])));
        assert!(all.contains(&path(&[(-1, 2), (-1, 1)])));
        // <-1/2> -> <0> may only continue upward, <-1/2> -> <-1> only downward
        assert!(!all.contains(&path(&[(-1, 2), (0, 1), (-1, 1)])));
        assert!(all.contains(&path(&[(-1, 2), (0, 1), (1, 1)])));

        let all: Vec<Edgepath> = enumerate_paths(fr(1, 3), true, 6)
            .iter()
            .flat_map(|f| f.expand())
            .collect();
        assert!(all.contains(&kn_outer_path(2)));

        let fams = enumerate_paths(Fraction::ZERO, true, 5);
        let trivial: Vec<&PathFamily> = fams
            .iter()
            .filter(|f| matches!(f, PathFamily::Vertical { base, .. } if base.edge_count() == 0))
            .collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!(fams.len(), 2);
    }

    #[test]
    fn enumeration_includes_inner_vertices() {
        let fams = enumerate_paths(fr(1, 4), false, 3);
        let vertex_ends: Vec<String> = fams
            .iter()
            .filter_map(|f| match f {
                PathFamily::Vertex(p) => Some(p.to_string()),
                _ => None,
            })
            .collect();
        assert_eq!(
            vertex_ends,
            vec!["<1/4> -> <1/3>", "<1/4> -> <1/3> -> <1/2>"]
        );
    }

    fn arb_start() -> impl Strategy<Value = Fraction> {
        (-12i64..12, 1i64..10).prop_map(|(p, q)| fr(p, q))
    }

    proptest! {
        #[test]
        fn enumerated_paths_are_valid(start in arb_start(), bound in 1i64..6, u0 in any::<bool>()) {
            for fam in enumerate_paths(start, u0, bound) {
                for p in fam.expand() {
                    prop_assert_eq!(p.validate_for(start), Ok(()), "{}", p);
                    if let Some(m) = p.vertices().last().and_then(|v| v.to_integer()) {
                        prop_assert!(m.abs() <= bound);
                    }
                }
            }
        }

        #[test]
        fn mirror_negates_tau(start in arb_start(), bound in 1i64..5) {
            for fam in enumerate_paths(start, false, bound) {
                for p in fam.expand() {
                    prop_assert_eq!(p.mirror().tau(), -p.tau());
                    prop_assert_eq!(p.mirror().validate_for(-start), Ok(()));
                }
            }
        }

        #[test]
        fn tau_is_additive(start in arb_start(), bound in 1i64..5, cut in 1usize..20) {
            for fam in enumerate_paths(start, true, bound) {
                for p in fam.expand() {
                    let v = p.vertices();
                    let i = cut % v.len();
                    let head = Edgepath::path(v[..=i].to_vec());
                    let tail = Edgepath::path(v[i..].to_vec());
                    prop_assert_eq!(head.tau() + tail.tau(), p.tau());
                    prop_assert_eq!(head.concat(&tail).unwrap(), p.clone());
                }
            }
        }
    }
}
