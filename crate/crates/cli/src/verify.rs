//! Checks of the `K_n` family against its closed forms.

use std::fmt::Write;

use arborslope::diagram::WeightState;
use arborslope::solver::{kn_system, kn_trace, solve_sn, Bounds};
use arborslope::tangle::{family_crossing_count, kn};
use arborslope::{Fraction, Result};

/// Outcome for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRow {
    pub n: i64,
    pub slope_min: Option<Fraction>,
    pub slope_max: Option<Fraction>,
    pub diameter: Option<Fraction>,
    pub diameter_bound: Fraction,
    pub crossings: u64,
    pub ratio: Option<Fraction>,
    pub ratio_bound: Fraction,
    /// Names of the checks that failed, in the order they were run.
    pub failures: Vec<String>,
}

impl FamilyRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every family check for `kn(n)`.
pub fn check_family(n: i64, bounds: Option<Bounds>) -> Result<FamilyRow> {
    let expr = kn(n)?;
    let bounds = bounds.unwrap_or_else(|| Bounds::default_for(&expr));
    let report = solve_sn(&expr, bounds)?;
    let s = Fraction::integer(2 * (n + 1) * (n + 1) - 4);
    let diameter_bound = Fraction::integer(4 * (n + 1) * (n + 1) - 8);
    let ratio_bound = Fraction::new((n + 1) * (n + 1) - 2, n).expect("n >= 2");
    let crossings = family_crossing_count(n)?;
    let mut failures = Vec::new();
    let mut require = |ok: bool, name: &str| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    require(report.slopes.contains(&-s), "negative family slope found");
    require(report.slopes.contains(&s), "positive family slope found");
    require(
        report.diameter.is_some_and(|d| d >= diameter_bound),
        "diameter bound",
    );
    require(report.crossings == crossings, "crossing number 4n");
    require(
        report.ratio.is_some_and(|r| r >= ratio_bound),
        "ratio bound",
    );

    let q = n * n + n;
    let t = kn_trace(n)?;
    require(
        t.leaf_states
            == [
                WeightState::new(1, q - 1, -n - 1),
                WeightState::new(1, q - 1, n),
            ],
        "trace: constant edgepath triples",
    );
    require(
        t.glued == WeightState::new(1, q - 1, -1),
        "trace: glued left triple",
    );
    require(
        t.transform.state == WeightState::new(1, 0, -q),
        "trace: transformed triple",
    );
    require(t.transform.tau_prime == Fraction::integer(2), "trace: tau'");
    require(
        t.tau_right == Fraction::integer(-2 * (n * n + 2 * n)),
        "trace: tau of right factor",
    );
    require(t.tau == -s, "trace: tau(S)");
    require(t.tau_seifert.is_zero(), "trace: tau(S0)");
    require(t.slope == -s, "trace: slope");

    let known = kn_system(n)?;
    require(
        report
            .systems
            .iter()
            .any(|x| x.edgepaths == known.edgepaths),
        "distinguished system among solver output",
    );
    require(
        report.systems.iter().all(|x| x.check().is_ok()),
        "every system validates",
    );

    Ok(FamilyRow {
        n,
        slope_min: report.slopes.first().copied(),
        slope_max: report.slopes.last().copied(),
        diameter: report.diameter,
        diameter_bound,
        crossings,
        ratio: report.ratio,
        ratio_bound,
        failures,
    })
}

fn opt(f: Option<Fraction>) -> String {
    f.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Aligned pass/fail table.
pub fn render_rows(rows: &[FamilyRow]) -> String {
    let header = [
        "n", "min", "max", "diameter", ">=", "c", "ratio", ">=", "result",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                opt(r.slope_min),
                opt(r.slope_max),
                opt(r.diameter),
                r.diameter_bound.to_string(),
                r.crossings.to_string(),
                opt(r.ratio),
                r.ratio_bound.to_string(),
                if r.passed() {
                    "pass".to_string()
                } else {
                    format!("FAIL: {}", r.failures.join(", "))
                },
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let last = cells.len() - 1;
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == last {
                    c.clone()
                } else {
                    format!("{c:>w$}", w = widths[i])
                }
            })
            .collect();
        writeln!(out, "{}", parts.join("  ")).unwrap();
    };
    line(header.iter().map(|h| h.to_string()).collect());
    for row in body {
        line(row);
    }
    out
}
