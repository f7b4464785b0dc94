//! Algebraic tangle expressions.

use std::fmt;

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// A tree of rational tangles combined by tangle sum and tangle product.
///
/// `Product(l, r)` is the sum of `r` with the quarter-turn rotation of the
/// mirror of `l`, so every leaf under a left product factor picks up one
/// reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    Rational(Fraction),
    Sum(Box<TangleExpr>, Box<TangleExpr>),
    Product(Box<TangleExpr>, Box<TangleExpr>),
}

/// A rational leaf with its position in left-to-right order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leaf {
    pub index: usize,
    pub slope: Fraction,
    /// Number of reflections applied on the way from the root.
    pub reflections: u32,
}

impl Leaf {
    pub fn reflection_parity(&self) -> u32 {
        self.reflections % 2
    }
}

impl TangleExpr {
    pub fn sum(l: TangleExpr, r: TangleExpr) -> TangleExpr {
        TangleExpr::Sum(Box::new(l), Box::new(r))
    }

    pub fn product(l: TangleExpr, r: TangleExpr) -> TangleExpr {
        TangleExpr::Product(Box::new(l), Box::new(r))
    }

    /// Builds a left-associated sum of rational tangles.
    ///
    /// Panics on an empty slice or a zero fraction.
    pub fn montesinos(slopes: &[Fraction]) -> TangleExpr {
        let mut it = slopes.iter().map(|&f| {
            assert!(!f.is_zero(), "zero tangle");
            TangleExpr::Rational(f)
        });
        let first = it.next().expect("at least one rational tangle");
        it.fold(first, TangleExpr::sum)
    }

    pub fn leaves(&self) -> Vec<Leaf> {
        fn walk(e: &TangleExpr, refl: u32, out: &mut Vec<Leaf>) {
            match e {
                TangleExpr::Rational(f) => out.push(Leaf {
                    index: out.len(),
                    slope: *f,
                    reflections: refl,
                }),
                TangleExpr::Sum(l, r) => {
                    walk(l, refl, out);
                    walk(r, refl, out);
                }
                TangleExpr::Product(l, r) => {
                    walk(l, refl + 1, out);
                    walk(r, refl, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Reflection parity of every node in pre-order.
    pub fn reflection_parities(&self) -> Vec<u32> {
        fn walk(e: &TangleExpr, refl: u32, out: &mut Vec<u32>) {
            out.push(refl % 2);
            match e {
                TangleExpr::Rational(_) => {}
                TangleExpr::Sum(l, r) => {
                    walk(l, refl, out);
                    walk(r, refl, out);
                }
                TangleExpr::Product(l, r) => {
                    walk(l, refl + 1, out);
                    walk(r, refl, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        match self {
            TangleExpr::Rational(_) => 1,
            TangleExpr::Sum(l, r) | TangleExpr::Product(l, r) => {
                1 + l.node_count() + r.node_count()
            }
        }
    }

    pub fn has_product(&self) -> bool {
        match self {
            TangleExpr::Rational(_) => false,
            TangleExpr::Sum(l, r) => l.has_product() || r.has_product(),
            TangleExpr::Product(..) => true,
        }
    }

    /// A Montesinos tangle is one built from rational tangles by sums only.
    pub fn is_montesinos(&self) -> bool {
        !self.has_product()
    }

    /// The maximal product-free subtrees, each with its reflection count.
    pub fn maximal_montesinos(&self) -> Vec<(&TangleExpr, u32)> {
        fn walk<'a>(e: &'a TangleExpr, refl: u32, out: &mut Vec<(&'a TangleExpr, u32)>) {
            if e.is_montesinos() {
                out.push((e, refl));
                return;
            }
            match e {
                TangleExpr::Rational(_) => unreachable!(),
                TangleExpr::Sum(l, r) => {
                    walk(l, refl, out);
                    walk(r, refl, out);
                }
                TangleExpr::Product(l, r) => {
                    walk(l, refl + 1, out);
                    walk(r, refl, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// Exchanges over and under at every crossing.
    pub fn mirror(&self) -> TangleExpr {
        match self {
            TangleExpr::Rational(f) => TangleExpr::Rational(-*f),
            TangleExpr::Sum(l, r) => TangleExpr::sum(l.mirror(), r.mirror()),
            TangleExpr::Product(l, r) => TangleExpr::product(l.mirror(), r.mirror()),
        }
    }

    /// Crossings of the standard diagram: each leaf contributes the sum of
    /// the absolute continued-fraction entries of its slope. This is an upper
    /// bound on the crossing number, not the crossing number.
    pub fn diagram_crossings(&self) -> u64 {
        self.leaves().iter().map(|l| leaf_crossings(l.slope)).sum()
    }

    /// Returns `n` if this expression is `kn(n)`.
    pub fn match_kn(&self) -> Option<i64> {
        let TangleExpr::Product(l, r) = self else {
            return None;
        };
        if l != r {
            return None;
        }
        let TangleExpr::Sum(a, b) = l.as_ref() else {
            return None;
        };
        let (TangleExpr::Rational(a), TangleExpr::Rational(b)) = (a.as_ref(), b.as_ref()) else {
            return None;
        };
        let n = a.den();
        if n >= 2 && a.num() == -1 && b.num() == 1 && b.den() == n + 1 {
            Some(n)
        } else {
            None
        }
    }

    /// Returns `n` if this expression is `kn(n)` or its mirror image.
    pub fn match_kn_family(&self) -> Option<i64> {
        self.match_kn().or_else(|| self.mirror().match_kn())
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
        if parens {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for TangleExpr {
    /// Canonical rendering: single spaces around `+` and `o`, sums inside
    /// products parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpr::Rational(x) => write!(f, "{x}"),
            TangleExpr::Sum(l, r) => {
                l.fmt_operand(f, matches!(**l, TangleExpr::Product(..)))?;
                f.write_str(" + ")?;
                r.fmt_operand(f, !matches!(**r, TangleExpr::Rational(_)))
            }
            TangleExpr::Product(l, r) => {
                l.fmt_operand(f, matches!(**l, TangleExpr::Sum(..)))?;
                f.write_str(" o ")?;
                r.fmt_operand(f, !matches!(**r, TangleExpr::Rational(_)))
            }
        }
    }
}

/// Sum of absolute partial quotients of `|p|/q`.
pub fn leaf_crossings(slope: Fraction) -> u64 {
    let mut p = slope.num().unsigned_abs();
    let mut q = slope.den().unsigned_abs();
    let mut total = 0;
    while q != 0 {
        total += p / q;
        let r = p % q;
        p = q;
        q = r;
    }
    total
}

/// `N((-1/n + 1/(n+1)) o (-1/n + 1/(n+1)))`.
pub fn kn(n: i64) -> Result<TangleExpr> {
    if n < 2 {
        return Err(Error::FamilyRange(n));
    }
    let factor = TangleExpr::montesinos(&[
        Fraction::new(-1, n).unwrap(),
        Fraction::new(1, n + 1).unwrap(),
    ]);
    Ok(TangleExpr::product(factor.clone(), factor))
}

/// Crossing number of `kn(n)`: its reduced alternating diagram has `4n` crossings.
pub fn family_crossing_count(n: i64) -> Result<u64> {
    if n < 2 {
        return Err(Error::FamilyRange(n));
    }
    Ok(4 * n as u64)
}
