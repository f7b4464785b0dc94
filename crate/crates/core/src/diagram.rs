//! Coordinates and adjacency in the edgepath diagram.
//!
//! A train track on a tangle sphere carries weights `(a, b, c)`. Its point
//! in the diagram has `u = b/(a+b)` and `v = c/(a+b)`. The vertex `<p/q>` is
//! the weight `(1, q-1, p)`, so vertices with denominator `q` all sit on the
//! vertical line `u = (q-1)/q`. The diagram is never stored: vertices are
//! reduced fractions and edges are decided by [`is_edge`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::{gcd_i64, Fraction};

/// Train-track weights on a tangle boundary sphere.
///
/// `n_inf` counts slope-infinity boundary edges and `has_zero` records
/// slope-zero boundary edges. States built from edgepaths have neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightState {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    #[serde(default)]
    pub n_inf: i64,
    #[serde(default)]
    pub has_zero: bool,
}

impl WeightState {
    pub const fn new(a: i64, b: i64, c: i64) -> WeightState {
        WeightState {
            a,
            b,
            c,
            n_inf: 0,
            has_zero: false,
        }
    }

    pub fn with_inf(self, n_inf: i64) -> WeightState {
        WeightState { n_inf, ..self }
    }

    pub fn with_zero(self, has_zero: bool) -> WeightState {
        WeightState { has_zero, ..self }
    }

    /// Multiplies every weight by `k`.
    pub fn scale(self, k: i64) -> WeightState {
        WeightState {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            n_inf: self.n_inf * k,
            has_zero: self.has_zero,
        }
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// Common divisor of all integer weights.
    pub fn content(&self) -> i64 {
        gcd_i64(gcd_i64(self.a, self.b), gcd_i64(self.c, self.n_inf))
    }
}

/// A point `(u, v)` of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramPoint {
    pub u: Fraction,
    pub v: Fraction,
}

/// The triple `(1, q-1, p)` of the vertex `<p/q>`.
pub fn vertex_triple(slope: Fraction) -> WeightState {
    WeightState::new(1, slope.den() - 1, slope.num())
}

pub fn uv_coords(w: &WeightState) -> Result<DiagramPoint> {
    let total = w.a + w.b;
    if total == 0 {
        return Err(Error::DegeneratePoint);
    }
    Ok(DiagramPoint {
        u: Fraction::new(w.b, total).unwrap(),
        v: Fraction::new(w.c, total).unwrap(),
    })
}

/// Coordinates of the vertex `<p/q>`: `((q-1)/q, p/q)`.
pub fn vertex_point(slope: Fraction) -> DiagramPoint {
    DiagramPoint {
        u: Fraction::new(slope.den() - 1, slope.den()).unwrap(),
        v: slope,
    }
}

/// Two vertices `p/q` and `r/s` span an edge iff `|ps - qr| = 1`.
pub fn is_edge(x: Fraction, y: Fraction) -> bool {
    let det = x.num() as i128 * y.den() as i128 - x.den() as i128 * y.num() as i128;
    det.abs() == 1
}

/// Three vertices bound a triangle of the diagram iff they are pairwise adjacent.
pub fn is_triangle(x: Fraction, y: Fraction, z: Fraction) -> bool {
    is_edge(x, y) && is_edge(y, z) && is_edge(x, z)
}

/// The two neighbours of `p/q` (with `q >= 2`) that lie strictly to its left,
/// ordered by ascending denominator then ascending slope. They are the Farey
/// parents `r/s < p/q < t/w` with `r + t = p`, `s + w = q`.
pub fn left_neighbors(slope: Fraction) -> Option<[Fraction; 2]> {
    let (p, q) = (slope.num(), slope.den());
    if q < 2 {
        return None;
    }
    // s * p ≡ 1 (mod q) with 1 <= s < q gives the lower parent r/s.
    let s = mod_inverse(p.rem_euclid(q), q)?;
    let r = (s as i128 * p as i128 - 1) / q as i128;
    let lower = Fraction::new(r as i64, s).unwrap();
    let upper = Fraction::new(p - r as i64, q - s).unwrap();
    let mut out = [lower, upper];
    out.sort_by(|x, y| x.den().cmp(&y.den()).then(x.cmp(y)));
    Some(out)
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as i64)
}

/// Parity class of a slope: which pairs of tangle endpoints its arcs join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityClass {
    /// `p` even, `q` odd: arcs join NW–NE and SW–SE.
    Zero,
    /// `p` odd, `q` even: arcs join NW–SW and NE–SE.
    Infinity,
    /// both odd: arcs join NW–SE and NE–SW.
    One,
}

impl ParityClass {
    pub fn of(slope: Fraction) -> ParityClass {
        match (slope.num().rem_euclid(2), slope.den().rem_euclid(2)) {
            (0, 1) => ParityClass::Zero,
            (1, 0) => ParityClass::Infinity,
            _ => ParityClass::One,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn vertex_triples() {
        assert_eq!(vertex_triple(fr(1, 2)).triple(), (1, 1, 1));
        assert_eq!(vertex_triple(Fraction::ZERO).triple(), (1, 0, 0));
        assert_eq!(vertex_triple(fr(-1, 2)).triple(), (1, 1, -1));
    }

    #[test]
    fn coordinates() {
        let p = uv_coords(&WeightState::new(1, 1, 1)).unwrap();
        assert_eq!((p.u, p.v), (fr(1, 2), fr(1, 2)));
        let p = uv_coords(&WeightState::new(1, 0, -6)).unwrap();
        assert_eq!((p.u, p.v), (Fraction::ZERO, fr(-6, 1)));
        let p = uv_coords(&WeightState::new(1, 5, -3)).unwrap();
        assert_eq!((p.u, p.v), (fr(5, 6), fr(-1, 2)));
        assert_eq!(
            uv_coords(&WeightState::new(0, 0, 3)),
            Err(Error::DegeneratePoint)
        );
    }

    #[test]
    fn adjacency() {
        assert!(is_edge(fr(1, 3), fr(1, 2)));
        assert!(!is_edge(fr(1, 3), fr(1, 1)));
        assert!(is_edge(fr(5, 1), fr(6, 1)));
        assert!(is_triangle(fr(1, 3), fr(1, 2), Fraction::ZERO));
    }

    #[test]
    fn left_neighbors_examples() {
        assert_eq!(
            left_neighbors(fr(1, 3)).unwrap(),
            [Fraction::ZERO, fr(1, 2)]
        );
        assert_eq!(
            left_neighbors(fr(-1, 2)).unwrap(),
            [fr(-1, 1), Fraction::ZERO]
        );
        assert_eq!(left_neighbors(fr(5, 7)).unwrap(), [fr(2, 3), fr(3, 4)]);
        assert_eq!(left_neighbors(fr(3, 1)), None);
    }

    #[test]
    fn parity_classes() {
        assert_eq!(ParityClass::of(fr(-1, 2)), ParityClass::Infinity);
        assert_eq!(ParityClass::of(fr(1, 3)), ParityClass::One);
        assert_eq!(ParityClass::of(fr(2, 3)), ParityClass::Zero);
        assert_eq!(ParityClass::of(fr(-3, 1)), ParityClass::One);
    }

    proptest! {
        #[test]
        fn uv_is_scale_invariant(a in 1i64..40, b in 0i64..40, c in -40i64..40, k in 1i64..=20) {
            let w = WeightState::new(a, b, c);
            prop_assert_eq!(uv_coords(&w.scale(k)).unwrap(), uv_coords(&w).unwrap());
        }

        #[test]
        fn vertex_coordinates(p in -60i64..60, q in 1i64..60) {
            let f = fr(p, q);
            let got = uv_coords(&vertex_triple(f)).unwrap();
            prop_assert_eq!(got, vertex_point(f));
            prop_assert_eq!(got.u, fr(f.den() - 1, f.den()));
        }

        #[test]
        fn left_neighbors_are_adjacent(p in -60i64..60, q in 2i64..60) {
            let f = fr(p, q);
            prop_assume!(f.den() >= 2);
            let [x, y] = left_neighbors(f).unwrap();
            prop_assert!(is_edge(f, x) && is_edge(f, y) && is_edge(x, y));
            prop_assert!(x.den() < f.den() && y.den() < f.den());
            prop_assert_eq!(x.num() + y.num(), f.num());
            prop_assert_eq!(x.den() + y.den(), f.den());
            prop_assert_eq!(is_edge(x, f), is_edge(f, x));
            let classes = [ParityClass::of(f), ParityClass::of(x), ParityClass::of(y)];
            prop_assert!(classes[0] != classes[1] && classes[1] != classes[2] && classes[0] != classes[2]);
        }
    }
}
