//! Sum gluing and the rotation-reflection move on train-track weights.

use serde::{Deserialize, Serialize};

use crate::diagram::WeightState;
use crate::error::{Error, Result};
use crate::fraction::{gcd_i64, Fraction};

/// Result of rotating and reflecting a tangle's boundary train track.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformOutcome {
    pub state: WeightState,
    pub case_id: u8,
    /// Sheets that turn around the knot during the isotopy.
    pub m: i64,
    pub tau_prime: Fraction,
}

/// Glues two states along a shared hemisphere: `(a, b, c1 + c2)`.
pub fn glue_sum(w1: &WeightState, w2: &WeightState) -> Result<WeightState> {
    if (w1.a, w1.b) != (w2.a, w2.b) {
        return Err(Error::MismatchedWeights {
            a1: w1.a,
            b1: w1.b,
            a2: w2.a,
            b2: w2.b,
        });
    }
    Ok(WeightState {
        a: w1.a,
        b: w1.b,
        c: w1.c + w2.c,
        n_inf: w1.n_inf + w2.n_inf,
        has_zero: w1.has_zero || w2.has_zero,
    })
}

/// Smallest factors `(f1, f2)`, each at most `bound`, with
/// `f1 * (a1, b1) = f2 * (a2, b2)`.
pub fn common_scale(w1: &WeightState, w2: &WeightState, bound: i64) -> Option<(i64, i64)> {
    let g1 = gcd_i64(w1.a, w1.b);
    let g2 = gcd_i64(w2.a, w2.b);
    if g1 == 0 || g2 == 0 || (w1.a / g1, w1.b / g1) != (w2.a / g2, w2.b / g2) {
        return None;
    }
    let g = gcd_i64(g1, g2);
    let (f1, f2) = (g2 / g, g1 / g);
    (f1 <= bound && f2 <= bound).then_some((f1, f2))
}

/// Rescales both states to a common `(a, b)` within `bound`, then glues.
pub fn glue_sum_scaled(
    w1: &WeightState,
    w2: &WeightState,
    bound: i64,
) -> Result<(WeightState, i64, i64)> {
    let (f1, f2) = common_scale(w1, w2, bound).ok_or(Error::MismatchedWeights {
        a1: w1.a,
        b1: w1.b,
        a2: w2.a,
        b2: w2.b,
    })?;
    Ok((glue_sum(&w1.scale(f1), &w2.scale(f2))?, f1, f2))
}

/// Weights after reflecting and rotating a tangle by a quarter turn.
///
/// The case follows the boundary edges present: (1) none, (2) slope-0 edges
/// only, (3) `t` slope-infinity edges only with `0 < t < a`, (4) both with
/// `t < a - |c|`.
pub fn rotate_reflect(w: &WeightState) -> Result<TransformOutcome> {
    let (a, b, c, t) = (w.a, w.b, w.c, w.n_inf);
    if c == 0 {
        return Err(Error::UndefinedCase);
    }
    let ac = c.abs();
    let pos = c > 0;
    let (case_id, (x, y, z), n_inf, m) = match (w.has_zero, t > 0) {
        (false, false) => {
            let xyz = if pos {
                (a, c - a, a + b)
            } else {
                (a, ac - a, -(a + b))
            };
            (1, xyz, 0, a)
        }
        (true, false) => {
            let xyz = if pos {
                (c, 0, b + c)
            } else {
                (ac, 0, -(b + ac))
            };
            (2, xyz, a - ac, ac)
        }
        (false, true) => {
            if t >= a {
                return Err(Error::CasePreconditionViolated { t });
            }
            let xyz = if pos {
                (a, c - a + t, a - t)
            } else {
                (a, ac - a + t, t - a)
            };
            (3, xyz, 0, a - t)
        }
        (true, true) => {
            if t >= a - ac {
                return Err(Error::CasePreconditionViolated { t });
            }
            // the c < 0 variant keeps z = -c as stated
            let xyz = if pos { (c + t, 0, c) } else { (ac + t, 0, -c) };
            (4, xyz, a - t - ac, ac)
        }
    };
    if x < 0 || y < 0 || n_inf < 0 {
        return Err(Error::Infeasible { case: case_id });
    }
    let mag = Fraction::new(2 * m, a).ok_or(Error::DegeneratePoint)?;
    Ok(TransformOutcome {
        // slope-0 edges of the output are never tracked
        state: WeightState {
            a: x,
            b: y,
            c: z,
            n_inf,
            has_zero: false,
        },
        case_id,
        m,
        tau_prime: if pos { -mag } else { mag },
    })
}
