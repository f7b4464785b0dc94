//! Drawings of edgepaths in the `(u, v)` strip.

use std::fmt::Write;

use arborslope::diagram::{left_neighbors, vertex_point};
use arborslope::{DiagramPoint, Edgepath, Fraction};

const WIDTH: i64 = 600;
const MARGIN: i64 = 40;
const COLORS: [&str; 6] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// The points an edgepath passes through, in order.
pub fn polyline(path: &Edgepath) -> Vec<DiagramPoint> {
    match path {
        Edgepath::Constant { slope, .. } => vec![vertex_point(*slope), path.endpoint_point()],
        Edgepath::Path { vertices, .. } => {
            let mut pts: Vec<DiagramPoint> = vertices.iter().map(|v| vertex_point(*v)).collect();
            if let Some(last) = pts.last_mut() {
                *last = path.endpoint_point();
            }
            pts
        }
    }
}

/// One block per edgepath: a `# leaf` comment, then `u1 v1 u2 v2` rows.
pub fn render_tsv(paths: &[Edgepath]) -> String {
    let mut out = String::new();
    for (i, p) in paths.iter().enumerate() {
        writeln!(out, "# leaf {i}: {p}").unwrap();
        for w in polyline(p).windows(2) {
            writeln!(out, "{}\t{}\t{}\t{}", w[0].u, w[0].v, w[1].u, w[1].v).unwrap();
        }
    }
    out
}

/// Exact decimal rendering rounded to two places, half away from zero.
fn decimal(f: Fraction) -> String {
    let num = f.num() as i128 * 100;
    let den = f.den() as i128;
    let hundredths = (num.abs() * 2 + den) / (2 * den);
    let sign = if num < 0 && hundredths != 0 { "-" } else { "" };
    format!("{sign}{}.{:02}", hundredths / 100, hundredths % 100)
}

struct Frame {
    v_top: i64,
    v_bottom: i64,
    unit: i64,
}

impl Frame {
    fn new(points: &[DiagramPoint]) -> Frame {
        let lo = points.iter().map(|p| p.v.floor()).min().unwrap_or(0).min(0) - 1;
        let hi = points
            .iter()
            .map(|p| -(-p.v).floor())
            .max()
            .unwrap_or(0)
            .max(0)
            + 1;
        let unit = (WIDTH / (hi - lo)).clamp(2, 60);
        Frame {
            v_top: hi,
            v_bottom: lo,
            unit,
        }
    }

    fn x(&self, u: Fraction) -> Fraction {
        Fraction::integer(MARGIN) + u * WIDTH
    }

    fn y(&self, v: Fraction) -> Fraction {
        Fraction::integer(MARGIN) + (Fraction::integer(self.v_top) - v) * self.unit
    }

    fn height(&self) -> i64 {
        2 * MARGIN + (self.v_top - self.v_bottom) * self.unit
    }

    fn xy(&self, p: DiagramPoint) -> String {
        format!("{},{}", decimal(self.x(p.u)), decimal(self.y(p.v)))
    }
}

/// SVG 1.1 drawing of the strip `0 <= u <= 1` with low-denominator vertices,
/// their edges, and `paths` as coloured polylines. Each polyline carries its
/// exact points in a `data-uv` attribute.
pub fn render_svg(paths: &[Edgepath]) -> String {
    let lines: Vec<Vec<DiagramPoint>> = paths.iter().map(polyline).collect();
    let all: Vec<DiagramPoint> = lines.iter().flatten().copied().collect();
    let fr = Frame::new(&all);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}">"#,
        WIDTH + 2 * MARGIN,
        fr.height()
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    let span = fr.v_top - fr.v_bottom;
    let max_den = if span <= 12 {
        6
    } else if span <= 60 {
        3
    } else {
        1
    };
    let mut vertices = Vec::new();
    for q in 1..=max_den {
        for p in fr.v_bottom * q..=fr.v_top * q {
            if let Some(f) = Fraction::new(p, q).filter(|f| f.den() == q) {
                vertices.push(f);
            }
        }
    }
    writeln!(out, r##"<g stroke="#cccccc" stroke-width="1">"##).unwrap();
    for &f in &vertices {
        let a = vertex_point(f);
        let mut ends: Vec<Fraction> = left_neighbors(f).map(|n| n.to_vec()).unwrap_or_default();
        if f.is_integer() && f.num() < fr.v_top {
            ends.push(f + Fraction::ONE);
        }
        for g in ends {
            let b = vertex_point(g);
            writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                decimal(fr.x(a.u)),
                decimal(fr.y(a.v)),
                decimal(fr.x(b.u)),
                decimal(fr.y(b.v))
            )
            .unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r##"<g fill="#888888">"##).unwrap();
    for &f in &vertices {
        let p = vertex_point(f);
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="2"><title>&lt;{f}&gt;</title></circle>"#,
            decimal(fr.x(p.u)),
            decimal(fr.y(p.v))
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    let tick = if span <= 40 { 1 } else { 10 };
    writeln!(
        out,
        r#"<g font-family="sans-serif" font-size="10" fill="black">"#
    )
    .unwrap();
    for v in (fr.v_bottom..=fr.v_top).filter(|v| v % tick == 0) {
        let y = fr.y(Fraction::integer(v));
        writeln!(out, r#"<text x="4" y="{}">{v}</text>"#, decimal(y)).unwrap();
    }
    writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}">u = 0</text>"#,
        fr.height() - 8
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}">u = 1</text>"#,
        MARGIN + WIDTH - 24,
        fr.height() - 8
    )
    .unwrap();
    writeln!(out, "</g>").unwrap();

    for (i, (p, pts)) in paths.iter().zip(&lines).enumerate() {
        let color = COLORS[i % COLORS.len()];
        let xy: Vec<String> = pts.iter().map(|q| fr.xy(*q)).collect();
        let uv: Vec<String> = pts.iter().map(|q| format!("{},{}", q.u, q.v)).collect();
        writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}" data-uv="{}"><title>leaf {i}: {}</title></polyline>"#,
            xy.join(" "),
            uv.join(" "),
            p.to_string().replace('<', "&lt;").replace('>', "&gt;")
        )
        .unwrap();
        if let Some(end) = pts.last() {
            writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="3" fill="{color}"/>"#,
                decimal(fr.x(end.u)),
                decimal(fr.y(end.v))
            )
            .unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use arborslope::solver::kn_system;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(fr(1, 3)), "0.33");
        assert_eq!(decimal(fr(-5, 6)), "-0.83");
        assert_eq!(decimal(fr(1, 200)), "0.01");
        assert_eq!(decimal(fr(-1, 300)), "0.00");
        assert_eq!(decimal(Fraction::integer(640)), "640.00");
    }

    #[test]
    fn tsv_rows() {
        let p = Edgepath::path(vec![fr(-1, 2), Fraction::ZERO]);
        assert_eq!(
            render_tsv(&[p]),
            "# leaf 0: <-1/2> -> <0>\n1/2\t-1/2\t0\t0\n"
        );
    }

    #[test]
    fn k2_drawing() {
        let sys = kn_system(2).unwrap();
        let svg = render_svg(&sys.edgepaths);
        assert!(svg.contains(r#"data-uv="1/2,-1/2 5/6,-1/2""#));
        assert!(svg.contains(r#"data-uv="2/3,1/3 1/2,1/2 0,1 0,2 0,3 0,4 0,5 0,6""#));
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        let tsv = render_tsv(&sys.edgepaths);
        assert!(tsv.contains("# leaf 2: <-1/2> -> <0>\n1/2\t-1/2\t0\t0\n"));
    }

    #[test]
    fn fractional_end() {
        let p = Edgepath::Path {
            vertices: vec![fr(1, 3), fr(1, 2)],
            final_fraction: fr(1, 2),
            sheets: 1,
        };
        assert_eq!(
            polyline(&p)[1],
            DiagramPoint {
                u: fr(3, 5),
                v: fr(2, 5)
            }
        );
    }
}
