//! Command-line front end: slope reports, family verification and plots.

pub mod document;
pub mod plot;
pub mod verify;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use arborslope::slopecalc::SystemKind;
use arborslope::solver::{kn_system, solve, Bounds, SlopeReport};
use arborslope::tangle::kn;
use arborslope::{parse, Edgepath, TangleExpr};

pub use document::ReportDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EMPTY: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "arborslope",
    version,
    about = "Candidate boundary slopes of arborescent knots"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Search {
    /// Largest |height| of integer endpoints and constant edgepaths.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    c_bound: Option<i64>,
    /// Largest factor used to match weights before gluing.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    scale_bound: Option<i64>,
}

impl Search {
    fn bounds(&self, expr: &TangleExpr) -> Bounds {
        let d = Bounds::default_for(expr);
        Bounds {
            c_bound: self.c_bound.unwrap_or(d.c_bound),
            scale_bound: self.scale_bound.unwrap_or(d.scale_bound),
        }
    }

    fn given(&self) -> bool {
        self.c_bound.is_some() || self.scale_bound.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotFormat {
    Svg,
    Tsv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Candidate slopes of the numerator closure of an expression such as
    /// "(-1/2 + 1/3) o (-1/2 + 1/3)".
    Slopes {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        search: Search,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Slope report for K_n.
    Kn {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        n: i64,
        #[command(flatten)]
        search: Search,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks slopes, diameter, ratio and the distinguished system of K_n
    /// for n = 2..=n-max.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        n_max: i64,
        #[command(flatten)]
        search: Search,
    },
    /// Draws the edgepaths of one system.
    Plot {
        #[arg(
            allow_hyphen_values = true,
            required_unless_present = "n",
            conflicts_with = "n"
        )]
        expr: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        n: Option<i64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = PlotFormat::Svg)]
        format: PlotFormat,
        #[command(flatten)]
        search: Search,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn parse_expr(text: &str) -> Result<TangleExpr, Failure> {
    parse(text).map_err(|e| Failure::new(EXIT_USAGE, format!("cannot parse {text:?}: {e}")))
}

fn run_solver(expr: &TangleExpr, search: &Search) -> Result<SlopeReport, Failure> {
    solve(expr, search.bounds(expr)).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

/// Aligned text rendering of a report.
pub fn render_table(r: &SlopeReport) -> String {
    let list = |v: &[arborslope::Fraction]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let opt =
        |f: Option<arborslope::Fraction>| f.map_or_else(|| "-".to_string(), |x| x.to_string());
    let source = match r.crossing_source {
        arborslope::solver::CrossingSource::FamilyExact => "family-exact",
        arborslope::solver::CrossingSource::DiagramCount => "diagram-count",
    };
    let mut out = String::new();
    writeln!(out, "expression  {}", r.expr).unwrap();
    writeln!(out, "slopes      {}", list(&r.slopes)).unwrap();
    if !r.certified.is_empty() {
        writeln!(out, "certified   {}", list(&r.certified)).unwrap();
    }
    writeln!(out, "diameter    {}", opt(r.diameter)).unwrap();
    writeln!(out, "crossings   {} ({source})", r.crossings).unwrap();
    writeln!(out, "ratio       {}", opt(r.ratio)).unwrap();
    writeln!(
        out,
        "systems     {} found, {} kept",
        r.systems_found,
        r.systems.len()
    )
    .unwrap();
    writeln!(out).unwrap();

    let header = [
        "slope",
        "kind",
        "presentation",
        "sheets",
        "tau",
        "edgepaths",
    ];
    let rows: Vec<[String; 6]> = r
        .systems
        .iter()
        .map(|s| {
            let kind = match s.kind {
                SystemKind::Candidate => "candidate",
                SystemKind::Seifert => "seifert",
            };
            let pres = match s.presentation {
                arborslope::slopecalc::Presentation::Given => "given",
                arborslope::slopecalc::Presentation::Mirror => "mirror",
            };
            let paths: Vec<String> = s.edgepaths.iter().map(Edgepath::to_string).collect();
            [
                s.slope.to_string(),
                kind.to_string(),
                pres.to_string(),
                s.total_sheets().to_string(),
                s.tau.to_string(),
                paths.join(" | "),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut line = |cells: [&str; 6]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == 5 {
                s.push_str(c);
            } else {
                write!(s, "{c:<w$}  ", w = widths[i]).unwrap();
            }
        }
        writeln!(out, "{}", s.trim_end()).unwrap();
    };
    line(header);
    for row in &rows {
        line(row.each_ref().map(String::as_str));
    }
    for d in &r.diagnostics {
        writeln!(out, "note: {d}").unwrap();
    }
    out
}

fn emit_report(
    r: &SlopeReport,
    format: Format,
    out_path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let text = match format {
        Format::Json => ReportDocument::from(r).to_json() + "\n",
        Format::Table => render_table(r),
    };
    match out_path {
        Some(p) => write_file(p, &text)?,
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?,
    }
    for d in &r.diagnostics {
        let _ = writeln!(err, "{d}");
    }
    if r.slopes.is_empty() {
        let _ = writeln!(err, "no candidate slopes within the bounds");
        return Ok(EXIT_EMPTY);
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Slopes {
            expr,
            search,
            format,
            out: path,
        } => {
            let e = parse_expr(&expr)?;
            let r = run_solver(&e, &search)?;
            emit_report(&r, format, path.as_deref(), out, err)
        }
        Command::Kn {
            n,
            search,
            format,
            out: path,
        } => {
            let e = kn(n).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            let r = run_solver(&e, &search)?;
            emit_report(&r, format, path.as_deref(), out, err)
        }
        Command::Verify { n_max, search } => {
            let mut rows = Vec::new();
            for n in 2..=n_max {
                let bounds = search
                    .given()
                    .then(|| search.bounds(&kn(n).expect("n >= 2")));
                let row = verify::check_family(n, bounds)
                    .map_err(|e| Failure::new(EXIT_VERIFY_FAILED, e.to_string()))?;
                rows.push(row);
            }
            out.write_all(verify::render_rows(&rows).as_bytes())
                .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
            match rows.iter().find(|r| !r.passed()) {
                Some(r) => Err(Failure::new(
                    EXIT_VERIFY_FAILED,
                    format!("verification failed at n = {}: {}", r.n, r.failures[0]),
                )),
                None => Ok(EXIT_OK),
            }
        }
        Command::Plot {
            expr,
            n,
            out: path,
            format,
            search,
        } => {
            let e = match (expr, n) {
                (Some(text), _) => parse_expr(&text)?,
                (None, Some(n)) => kn(n).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?,
                (None, None) => return Err(Failure::new(EXIT_USAGE, "give an expression or --n")),
            };
            let paths = match e.match_kn() {
                Some(n) => {
                    kn_system(n)
                        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?
                        .edgepaths
                }
                None => {
                    run_solver(&e, &search)?
                        .systems
                        .into_iter()
                        .find(|s| s.kind == SystemKind::Candidate)
                        .ok_or_else(|| Failure::new(EXIT_EMPTY, "no candidate system to draw"))?
                        .edgepaths
                }
            };
            let text = match format {
                PlotFormat::Svg => plot::render_svg(&paths),
                PlotFormat::Tsv => plot::render_tsv(&paths),
            };
            write_file(&path, &text)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
