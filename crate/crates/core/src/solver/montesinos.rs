//! Systems for sums of rational tangles, solved along the whole diagram.
//!
//! Write `Q = 1/(1-u)`; at a vertex `<p/q>` this is `q`. Along an edge, and
//! along a horizontal edge, the height `c` of the endpoint at one sheet and
//! the twist number are affine in `Q`. For every choice of one piece per
//! leaf the closure `sum c_i(Q) = 0` is a single linear equation.

use log::debug;

use super::{report, Bounds, SlopeReport};
use crate::diagram::WeightState;
use crate::edgepath::{paths_to_integers, vertical_allowed, with_vertical_run, Edgepath};
use crate::error::{Error, Result};
use crate::fraction::{lcm_i64, Fraction};
use crate::slopecalc::{seifert_tau, CandidateSystem, Presentation};
use crate::tangle::TangleExpr;

/// One piece of a leaf's edgepaths on which the endpoint moves affinely.
#[derive(Debug, Clone)]
struct Piece {
    /// Valid for `lo <= Q < hi`, or `Q >= lo` without `hi`.
    lo: Fraction,
    hi: Option<Fraction>,
    /// `c(Q) = alpha + beta Q`.
    alpha: Fraction,
    beta: Fraction,
    /// `tau(Q) = g + h Q`.
    g: Fraction,
    h: Fraction,
    /// Vertices up to the far end of the last edge; empty for a constant.
    vertices: Vec<Fraction>,
}

fn pieces(slope: Fraction) -> Vec<Piece> {
    let (p, q) = (
        Fraction::integer(slope.num()),
        Fraction::integer(slope.den()),
    );
    let mut out = vec![Piece {
        lo: q,
        hi: None,
        alpha: Fraction::ZERO,
        beta: p / q,
        g: Fraction::ZERO,
        h: Fraction::ZERO,
        vertices: Vec::new(),
    }];
    let mut seen = std::collections::HashSet::new();
    for full in paths_to_integers(slope) {
        for i in 1..full.len() {
            let prefix = &full[..=i];
            if !seen.insert(prefix.to_vec()) {
                continue;
            }
            let (x, y) = (full[i - 1], full[i]);
            let (pa, qa) = (Fraction::integer(x.num()), Fraction::integer(x.den()));
            let (pb, qb) = (Fraction::integer(y.num()), Fraction::integer(y.den()));
            let d = qa - qb;
            let t0 = Edgepath::path(full[..i].to_vec()).tau();
            let step = Edgepath::path(vec![x, y]).tau();
            out.push(Piece {
                lo: qb,
                hi: Some(qa),
                alpha: pa + qa * (pb - pa) / d,
                beta: -(pb - pa) / d,
                g: t0 + step * qa / d,
                h: -step / d,
                vertices: prefix.to_vec(),
            });
        }
    }
    out
}

fn piece_edgepath(slope: Fraction, piece: &Piece, big_q: Fraction) -> Edgepath {
    if piece.vertices.is_empty() {
        let b = big_q - Fraction::ONE;
        let c = slope * big_q;
        let k = lcm_i64(b.den(), c.den());
        let state = WeightState::new(k, (b * k).num(), (c * k).num());
        return Edgepath::constant(slope, state);
    }
    let n = piece.vertices.len();
    let qa = Fraction::integer(piece.vertices[n - 2].den());
    let qb = Fraction::integer(piece.vertices[n - 1].den());
    Edgepath::Path {
        vertices: piece.vertices.clone(),
        final_fraction: (qa - big_q) / (qa - qb),
        sheets: 1,
    }
}

/// Calls `f` on every index tuple of the given lengths, last index fastest.
fn for_each_combo(lens: &[usize], mut f: impl FnMut(&[usize])) {
    if lens.contains(&0) {
        return;
    }
    let mut idx = vec![0; lens.len()];
    loop {
        f(&idx);
        let mut k = lens.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lens[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Systems with every endpoint inside the diagram (`u > 0`).
fn interior_systems(
    expr: &TangleExpr,
    slopes: &[Fraction],
    tau0: Fraction,
    out: &mut Vec<CandidateSystem>,
    diagnostics: &mut Vec<String>,
) {
    let per_leaf: Vec<Vec<Piece>> = slopes.iter().map(|s| pieces(*s)).collect();
    let lens: Vec<usize> = per_leaf.iter().map(Vec::len).collect();
    let mut degenerate = 0usize;
    for_each_combo(&lens, |idx| {
        let chosen: Vec<&Piece> = idx.iter().zip(&per_leaf).map(|(&i, ps)| &ps[i]).collect();
        let lo = chosen.iter().map(|p| p.lo).max().unwrap();
        let hi = chosen.iter().filter_map(|p| p.hi).min();
        if hi.is_some_and(|h| lo >= h) {
            return;
        }
        let a: Fraction = chosen.iter().map(|p| p.alpha).sum();
        let b: Fraction = chosen.iter().map(|p| p.beta).sum();
        if b.is_zero() {
            if a.is_zero() {
                degenerate += 1;
            }
            return;
        }
        let big_q = -a / b;
        if big_q < lo || big_q <= Fraction::ONE || hi.is_some_and(|h| big_q >= h) {
            return;
        }
        let tau: Fraction = chosen.iter().map(|p| p.g + p.h * big_q).sum();
        let paths: Vec<Edgepath> = slopes
            .iter()
            .zip(&chosen)
            .map(|(s, p)| piece_edgepath(*s, p, big_q))
            .collect();
        match CandidateSystem::candidate(expr.clone(), Presentation::Given, paths, i64::MAX, tau0) {
            Ok(sys) if sys.tau == tau && sys.check().is_ok() => out.push(sys),
            Ok(sys) => diagnostics.push(format!(
                "dropped inconsistent system with slope {}",
                sys.slope
            )),
            Err(e) => diagnostics.push(format!("dropped system: {e}")),
        }
    });
    if degenerate > 0 {
        diagnostics.push(format!(
            "{degenerate} piece combinations close for every u and were skipped"
        ));
    }
}

/// Systems with every endpoint on `u = 0`, closed by vertical runs.
fn boundary_systems(
    expr: &TangleExpr,
    slopes: &[Fraction],
    c_bound: i64,
    tau0: Fraction,
    out: &mut Vec<CandidateSystem>,
) {
    let per_leaf: Vec<Vec<Vec<Fraction>>> = slopes.iter().map(|s| paths_to_integers(*s)).collect();
    let lens: Vec<usize> = per_leaf.iter().map(Vec::len).collect();
    for_each_combo(&lens, |idx| {
        let bases: Vec<&Vec<Fraction>> = idx.iter().zip(&per_leaf).map(|(&i, ps)| &ps[i]).collect();
        let mut runs = Vec::with_capacity(bases.len());
        for v in &bases {
            let k = v.last().unwrap().to_integer().unwrap();
            let lo = if vertical_allowed(v, -1) { -c_bound } else { k };
            let hi = if vertical_allowed(v, 1) { c_bound } else { k };
            if lo.max(-c_bound) > hi.min(c_bound) {
                return;
            }
            runs.push((k, lo.max(-c_bound), hi.min(c_bound)));
        }
        let (sum_lo, sum_hi) = runs.iter().fold((0, 0), |(x, y), r| (x + r.1, y + r.2));
        if sum_lo > 0 || sum_hi < 0 {
            return;
        }
        // right-most leaves move first
        let mut ends: Vec<i64> = runs.iter().map(|r| r.0.clamp(r.1, r.2)).collect();
        let mut need = -ends.iter().sum::<i64>();
        for (m, r) in ends.iter_mut().zip(&runs).rev() {
            let moved = (*m + need).clamp(r.1, r.2);
            need -= moved - *m;
            *m = moved;
        }
        debug_assert_eq!(need, 0);
        let paths: Vec<Edgepath> = bases
            .iter()
            .zip(&ends)
            .map(|(v, &m)| with_vertical_run(&Edgepath::path((*v).clone()), m))
            .collect();
        if let Ok(sys) =
            CandidateSystem::candidate(expr.clone(), Presentation::Given, paths, i64::MAX, tau0)
        {
            if sys.check().is_ok() {
                out.push(sys);
            }
        }
    });
}

/// Candidate slopes of a Montesinos knot with at least three rational tangles.
pub fn solve_montesinos(expr: &TangleExpr, c_bound: i64) -> Result<SlopeReport> {
    if expr.has_product() {
        return Err(Error::UnsupportedShape(
            "expected a sum of rational tangles".into(),
        ));
    }
    let slopes: Vec<Fraction> = expr.leaves().iter().map(|l| l.slope).collect();
    if slopes.len() < 3 {
        return Err(Error::UnsupportedShape(format!(
            "{} rational tangles; at least 3 are needed",
            slopes.len()
        )));
    }
    let bounds = Bounds {
        c_bound,
        scale_bound: 0,
    };
    let mut diagnostics = Vec::new();
    let tau0 = match seifert_tau(expr) {
        Ok(t) => t,
        Err(e) => {
            diagnostics.push(e.to_string());
            return Ok(report(expr, Vec::new(), bounds, diagnostics));
        }
    };
    let mut systems = Vec::new();
    interior_systems(expr, &slopes, tau0, &mut systems, &mut diagnostics);
    let interior = systems.len();
    boundary_systems(expr, &slopes, c_bound, tau0, &mut systems);
    debug!(
        "{interior} interior and {} boundary systems",
        systems.len() - interior
    );
    systems.push(CandidateSystem::seifert(expr.clone(), Presentation::Given)?);
    Ok(report(expr, systems, bounds, diagnostics))
}
