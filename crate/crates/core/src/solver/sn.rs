//! Systems for products of Montesinos tangles, closed on the line `u = 0`.
//!
//! Each node keeps a list of options. An option is an arithmetic family of
//! states `(a, b, c_lo + j*step)` whose twist number is `tau_lo + j*dtau`
//! for `j` in `0..=len`. Vertical runs along `u = 0` make such families;
//! everything else is a single point (`len = 0`). Sums add families, a
//! product pins its left operand to a point before the move, and the root
//! pins the last free parameter with `c = 0`.

use std::collections::{HashMap, HashSet};

use log::{debug, warn};

use super::{report, Bounds, SlopeReport};
use crate::diagram::WeightState;
use crate::edgepath::{enumerate_paths, with_vertical_run, Edgepath, PathFamily};
use crate::error::{Error, Result};
use crate::fraction::{gcd_i64, Fraction};
use crate::slopecalc::{seifert_tau, CandidateSystem, NodeRecord, Presentation};
use crate::tangle::{kn, TangleExpr};
use crate::transform::{common_scale, rotate_reflect, TransformOutcome};

#[derive(Debug, Clone)]
enum Origin {
    Fixed(Edgepath),
    Vertical { base: Edgepath, lo: i64 },
    Sum { l: usize, r: usize },
    Product { l: usize, lj: i64, r: usize },
}

#[derive(Debug, Clone)]
struct Opt {
    a: i64,
    b: i64,
    c_lo: i64,
    len: i64,
    step: i64,
    tau_lo: Fraction,
    dtau: Fraction,
    /// Index where every vertical run sits at its arrival vertex.
    base_j: i64,
    origin: Origin,
}

type OptKey = (i64, i64, i64, i64, i64, Fraction, Fraction);

impl Opt {
    fn key(&self) -> OptKey {
        (
            self.a,
            self.b,
            self.c_lo,
            self.len,
            self.step,
            self.tau_lo,
            self.dtau,
        )
    }

    fn state(&self, j: i64) -> WeightState {
        WeightState::new(self.a, self.b, self.c_lo + j * self.step)
    }

    fn tau(&self, j: i64) -> Fraction {
        self.tau_lo + self.dtau * j
    }

    fn direction(&self) -> (i64, i64) {
        let g = gcd_i64(self.a, self.b);
        (self.a / g, self.b / g)
    }

    fn point(state: WeightState, tau: Fraction, origin: Origin) -> Opt {
        Opt {
            a: state.a,
            b: state.b,
            c_lo: state.c,
            len: 0,
            step: 0,
            tau_lo: tau,
            dtau: Fraction::ZERO,
            base_j: 0,
            origin,
        }
    }
}

struct Node {
    children: Option<(usize, usize)>,
    opts: Vec<Opt>,
}

/// Options for one rational tangle.
fn leaf_options(slope: Fraction, bounds: Bounds) -> Vec<Opt> {
    let (p, q) = (slope.num(), slope.den());
    let mut out = Vec::new();
    for fam in enumerate_paths(slope, false, bounds.c_bound) {
        match fam {
            PathFamily::Constant { .. } => {
                // primitive points (a, qN - a, pN) with N >= a and gcd(a, N) = 1
                for a in 1..=bounds.scale_bound {
                    let mut n = a;
                    while p.abs() * n <= bounds.c_bound {
                        let integer_vertex = q == 1 && n == 1;
                        if gcd_i64(a, n) == 1 && !integer_vertex {
                            let state = WeightState::new(a, q * n - a, p * n);
                            let path = Edgepath::constant(slope, state);
                            out.push(Opt::point(state, Fraction::ZERO, Origin::Fixed(path)));
                        }
                        n += 1;
                    }
                }
            }
            PathFamily::Vertex(path) => {
                let state = path.endpoint_state().expect("full path");
                out.push(Opt::point(state, path.tau(), Origin::Fixed(path)));
            }
            PathFamily::Vertical { base, lo, hi } => {
                let k = base
                    .vertices()
                    .last()
                    .and_then(|v| v.to_integer())
                    .expect("integer end");
                out.push(Opt {
                    a: 1,
                    b: 0,
                    c_lo: lo,
                    len: hi - lo,
                    step: 1,
                    tau_lo: base.tau() - Fraction::integer(2 * (lo - k)),
                    dtau: Fraction::integer(-2),
                    base_j: k - lo,
                    origin: Origin::Vertical { base, lo },
                });
            }
        }
    }
    out
}

/// Glues every compatible pair of left and right options.
fn glue_all(
    lefts: &[Opt],
    rights: &[Opt],
    bound: i64,
    origin: impl Fn(usize, usize) -> Origin,
) -> Vec<Opt> {
    let mut by_dir: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, r) in rights.iter().enumerate() {
        by_dir.entry(r.direction()).or_default().push(i);
    }
    let mut out = Vec::new();
    let mut seen: HashSet<OptKey> = HashSet::new();
    for (li, l) in lefts.iter().enumerate() {
        let Some(ris) = by_dir.get(&l.direction()) else {
            continue;
        };
        for &ri in ris {
            let r = &rights[ri];
            let Some((fl, fr)) = common_scale(&l.state(0), &r.state(0), bound) else {
                continue;
            };
            let (ls, rs) = (l.step * fl, r.step * fr);
            if l.len > 0 && r.len > 0 && (ls != rs || l.dtau != r.dtau) {
                warn!("skipping families with unequal steps {ls} and {rs}");
                continue;
            }
            let (step, dtau) = if l.len > 0 {
                (ls, l.dtau)
            } else {
                (rs, r.dtau)
            };
            let opt = Opt {
                a: l.a * fl,
                b: l.b * fl,
                c_lo: l.c_lo * fl + r.c_lo * fr,
                len: l.len + r.len,
                step,
                tau_lo: l.tau_lo + r.tau_lo,
                dtau,
                base_j: l.base_j + r.base_j,
                origin: origin(li, ri),
            };
            if seen.insert(opt.key()) {
                out.push(opt);
            }
        }
    }
    out
}

fn build(expr: &TangleExpr, bounds: Bounds, nodes: &mut Vec<Node>) -> usize {
    let (children, opts) = match expr {
        TangleExpr::Rational(f) => (None, leaf_options(*f, bounds)),
        TangleExpr::Sum(l, r) => {
            let li = build(l, bounds, nodes);
            let ri = build(r, bounds, nodes);
            let opts = glue_all(
                &nodes[li].opts,
                &nodes[ri].opts,
                bounds.scale_bound,
                |l, r| Origin::Sum { l, r },
            );
            (Some((li, ri)), opts)
        }
        TangleExpr::Product(l, r) => {
            let li = build(l, bounds, nodes);
            let ri = build(r, bounds, nodes);
            let mut moved = Vec::new();
            let mut from = Vec::new();
            for (i, o) in nodes[li].opts.iter().enumerate() {
                for j in 0..=o.len {
                    let Ok(t) = rotate_reflect(&o.state(j)) else {
                        continue;
                    };
                    let tau = -o.tau(j) + t.tau_prime;
                    moved.push(Opt::point(t.state, tau, Origin::Sum { l: i, r: 0 }));
                    from.push((i, j));
                }
            }
            let opts = glue_all(&moved, &nodes[ri].opts, bounds.scale_bound, |m, r| {
                let (l, lj) = from[m];
                Origin::Product { l, lj, r }
            });
            (Some((li, ri)), opts)
        }
    };
    debug!("node {} has {} options", nodes.len(), opts.len());
    nodes.push(Node { children, opts });
    nodes.len() - 1
}

/// Fixes the family parameter `j` of option `oi` at node `ni` and writes the
/// leaf edgepaths in left-to-right order.
fn pin(nodes: &[Node], ni: usize, oi: usize, j: i64, out: &mut Vec<Edgepath>) {
    let o = &nodes[ni].opts[oi];
    match &o.origin {
        Origin::Fixed(p) => out.push(p.clone()),
        Origin::Vertical { base, lo } => out.push(with_vertical_run(base, lo + j)),
        Origin::Sum { l, r } => {
            let (lc, rc) = nodes[ni].children.expect("sum node");
            let (lo, ro) = (&nodes[lc].opts[*l], &nodes[rc].opts[*r]);
            // the right operand absorbs as much of the run as it can
            let jr = (j - lo.base_j).clamp(0, ro.len);
            let jl = j - jr;
            pin(nodes, lc, *l, jl, out);
            pin(nodes, rc, *r, jr, out);
        }
        Origin::Product { l, lj, r } => {
            let (lc, rc) = nodes[ni].children.expect("product node");
            pin(nodes, lc, *l, *lj, out);
            pin(nodes, rc, *r, j, out);
        }
    }
}

/// All closed systems of one presentation.
fn closed_systems(
    expr: &TangleExpr,
    presentation: Presentation,
    bounds: Bounds,
    tau0: Fraction,
    diagnostics: &mut Vec<String>,
) -> Vec<CandidateSystem> {
    let mut nodes = Vec::new();
    let root = build(expr, bounds, &mut nodes);
    let mut out = Vec::new();
    for (oi, o) in nodes[root].opts.iter().enumerate() {
        if o.b != 0 {
            continue;
        }
        let j = if o.len == 0 {
            if o.c_lo != 0 {
                continue;
            }
            0
        } else {
            if o.c_lo % o.step != 0 {
                continue;
            }
            let j = -o.c_lo / o.step;
            if !(0..=o.len).contains(&j) {
                continue;
            }
            j
        };
        let mut paths = Vec::new();
        pin(&nodes, root, oi, j, &mut paths);
        match CandidateSystem::candidate(
            expr.clone(),
            presentation,
            paths,
            bounds.scale_bound,
            tau0,
        ) {
            Ok(sys) if sys.tau == o.tau(j) && sys.check().is_ok() => out.push(sys),
            Ok(sys) => diagnostics.push(format!(
                "dropped inconsistent system with slope {}",
                sys.slope
            )),
            Err(e) => diagnostics.push(format!("dropped system: {e}")),
        }
    }
    out
}

/// Candidate slopes of the numerator closure of a product expression.
///
/// For `K_n` and its mirror image, systems of the mirror presentation are
/// included as well: the knot is amphichiral, and some of its slopes only
/// show up on one presentation.
pub fn solve_sn(expr: &TangleExpr, bounds: Bounds) -> Result<SlopeReport> {
    if !expr.has_product() {
        return Err(Error::UnsupportedShape(
            "expected at least one tangle product".into(),
        ));
    }
    if bounds.c_bound < 1 || bounds.scale_bound < 1 {
        return Err(Error::UnsupportedShape("bounds must be at least 1".into()));
    }
    let mut diagnostics = Vec::new();
    let tau0 = match seifert_tau(expr) {
        Ok(t) => t,
        Err(e) => {
            diagnostics.push(e.to_string());
            return Ok(report(expr, Vec::new(), bounds, diagnostics));
        }
    };
    let mut systems = closed_systems(expr, Presentation::Given, bounds, tau0, &mut diagnostics);
    if expr.match_kn_family().is_some() {
        let mirror = expr.mirror();
        let tau0m = seifert_tau(&mirror)?;
        systems.extend(closed_systems(
            &mirror,
            Presentation::Mirror,
            bounds,
            tau0m,
            &mut diagnostics,
        ));
    }
    systems.push(CandidateSystem::seifert(expr.clone(), Presentation::Given)?);
    if systems.len() == 1 {
        diagnostics.push("no closed edgepath system within the bounds".into());
    }
    Ok(report(expr, systems, bounds, diagnostics))
}

/// The distinguished system of `K_n`: constant edgepaths in the left factor,
/// `<-1/n> -> <0>` and `<1/(n+1)> -> ... -> <1> -> ... -> <n^2+n>` in the right.
pub fn kn_system(n: i64) -> Result<CandidateSystem> {
    let expr = kn(n)?;
    let q = n * n + n;
    let f = |p: i64, d: i64| Fraction::new(p, d).expect("nonzero denominator");
    let outer: Vec<Fraction> = (1..=n + 1)
        .rev()
        .map(|d| f(1, d))
        .chain((2..=q).map(Fraction::integer))
        .collect();
    let paths = vec![
        Edgepath::constant(f(-1, n), WeightState::new(1, q - 1, -n - 1)),
        Edgepath::constant(f(1, n + 1), WeightState::new(1, q - 1, n)),
        Edgepath::path(vec![f(-1, n), Fraction::ZERO]),
        Edgepath::path(outer),
    ];
    let tau0 = seifert_tau(&expr)?;
    CandidateSystem::candidate(expr, Presentation::Given, paths, 1, tau0)
}

/// Intermediate values of [`kn_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnTrace {
    pub n: i64,
    pub leaf_states: [WeightState; 2],
    pub glued: WeightState,
    pub transform: TransformOutcome,
    pub tau_right: Fraction,
    pub tau: Fraction,
    pub tau_seifert: Fraction,
    pub slope: Fraction,
}

pub fn kn_trace(n: i64) -> Result<KnTrace> {
    let sys = kn_system(n)?;
    let rec = |i: usize| -> &NodeRecord { &sys.nodes[i] };
    // pre-order: root, left sum, its two leaves, right sum, its two leaves
    Ok(KnTrace {
        n,
        leaf_states: [rec(2).state, rec(3).state],
        glued: rec(1).state,
        transform: rec(0).transform.expect("product root"),
        tau_right: rec(4).tau,
        tau: sys.tau,
        tau_seifert: sys.tau_seifert,
        slope: sys.slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn int(n: i64) -> Fraction {
        Fraction::integer(n)
    }

    fn bounds(c: i64, s: i64) -> Bounds {
        Bounds {
            c_bound: c,
            scale_bound: s,
        }
    }

    #[test]
    fn trace_values() {
        for n in 2..=8 {
            let t = kn_trace(n).unwrap();
            let q = n * n + n;
            assert_eq!(
                t.leaf_states,
                [
                    WeightState::new(1, q - 1, -n - 1),
                    WeightState::new(1, q - 1, n)
                ]
            );
            assert_eq!(t.glued, WeightState::new(1, q - 1, -1));
            assert_eq!(t.transform.state, WeightState::new(1, 0, -q));
            assert_eq!(t.transform.tau_prime, int(2));
            assert_eq!(t.tau_right, int(-2 * (n * n + 2 * n)));
            assert_eq!(t.tau, int(-2 * (n + 1) * (n + 1) + 4));
            assert_eq!(t.tau_seifert, int(0));
            assert_eq!(t.slope, t.tau);
        }
        assert_eq!(kn_trace(5).unwrap().slope, int(-68));
        assert_eq!(kn_system(1), Err(Error::FamilyRange(1)));
    }

    #[test]
    fn k2_slopes() {
        let r = solve_sn(&kn(2).unwrap(), bounds(8, 2)).unwrap();
        assert!(
            r.slopes.contains(&int(-14)) && r.slopes.contains(&int(14)),
            "{:?}",
            r.slopes
        );
        assert_eq!(r.diameter, Some(int(28)));
        assert_eq!(r.ratio, Some(Fraction::new(7, 2).unwrap()));
        for s in &r.systems {
            assert_eq!(s.check(), Ok(()), "{:?}", s.edgepaths);
        }
        let known = kn_system(2).unwrap();
        assert!(r.systems.iter().any(|s| s.edgepaths == known.edgepaths));
    }

    #[test]
    fn mirror_negates_slopes() {
        let e = kn(2).unwrap();
        let b = bounds(8, 1);
        let r = solve_sn(&e, b).unwrap();
        let m = solve_sn(&e.mirror(), b).unwrap();
        let neg: Vec<Fraction> = r.slopes.iter().rev().map(|s| -*s).collect();
        assert_eq!(m.slopes, neg);
    }

    #[test]
    fn generic_product() {
        let e = parse("(1/2 + 1/3) o (-1/2 + 1/5)").unwrap();
        let r = solve_sn(&e, bounds(12, 2)).unwrap();
        assert_eq!(
            r.crossing_source,
            super::super::CrossingSource::DiagramCount
        );
        for s in &r.systems {
            assert_eq!(s.check(), Ok(()));
        }
        let m = solve_sn(&e.mirror(), bounds(12, 2)).unwrap();
        let neg: Vec<Fraction> = r.slopes.iter().rev().map(|s| -*s).collect();
        assert_eq!(m.slopes, neg);
    }

    #[test]
    fn rejects_sum_only() {
        let e = parse("1/2 + 1/3 + 1/5").unwrap();
        assert!(matches!(
            solve_sn(&e, bounds(4, 1)),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn seifert_failure_is_a_diagnostic() {
        let e = parse("(1/3 + 1/5) o (1/2 + 1/3)").unwrap();
        let r = solve_sn(&e, bounds(4, 1)).unwrap();
        assert!(r.slopes.is_empty());
        assert!(r.diagnostics[0].contains("slope normalization unavailable"));
    }
}
