use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use isosum_core::functional::functional2;
use isosum_core::geometry::{is_convex, Convexity, Polygon};
use isosum_core::lp::{check_duality, export_lp_text, triangle_to_lp};
use isosum_core::oracle::{check_polygon, check_polyhedron, ResidualSummary};
use isosum_core::partition::{equal_sum_triple, neighbor_check, partition};
use isosum_core::sampling::{map_indexed, polygon_sample, Execution};
use isosum_core::symmetry::{check_corollary3, check_corollary4, detect_symmetries};

use crate::report::{
    analyze, cell_summaries, corollary4_name, fmt9, fmt9e, fmt_point2, prediction_name,
    write_oracle,
};
use crate::scene::{parse_scene, Scene};
use crate::svg::{render_svg, Field};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_TOL: f64 = 1e-9;
const ANALYZE_SAMPLES: u64 = 1000;
const LP_SAMPLES: u64 = 100;

#[derive(Debug, Parser)]
#[command(
    name = "isosum",
    version,
    about = "Distance-sum (Viviani) analysis of polygons and convex polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convexity, CVS classification, symmetries and an oracle check.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Convex cells of a concave polygon with their functionals.
    Partition { file: PathBuf },
    /// Symmetries and the predictions they make.
    Symmetry { file: PathBuf },
    /// Write an SVG of isosum segments.
    Render {
        file: PathBuf,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Linear-program view of a triangle.
    Lp { file: PathBuf },
    /// Seeded Monte-Carlo comparison of affine and direct distance sums.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
}

impl From<isosum_core::Error> for Failure {
    fn from(e: isosum_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// `ISOSUM_TOL` when set and valid, else 1e-9.
pub fn default_tolerance() -> f64 {
    std::env::var("ISOSUM_TOL")
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|t| *t > 0.0 && t.is_finite())
        .unwrap_or(DEFAULT_TOL)
}

fn load(path: &PathBuf) -> Result<Scene, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_scene(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn polygon_of(scene: &Scene, what: &str) -> Result<Polygon, Failure> {
    match scene {
        Scene::Polygon2 { polygon } => Ok(polygon.clone()),
        Scene::Polyhedron3 { .. } => {
            Err(Failure::Input(format!("{what} requires a polygon2 scene")))
        }
    }
}

/// Runs one command; returns the exit code. Reports go to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn status(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn execute(command: Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Analyze { file, tol, json } => {
            let tol = tol.unwrap_or_else(default_tolerance);
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Failure::Input("--tol must be positive".into()));
            }
            let scene = load(&file)?;
            let report = analyze(&scene, tol, ANALYZE_SAMPLES, 0)?;
            let text = if json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.to_text()
            };
            Ok((text, status(report.passed())))
        }
        Command::Partition { file } => {
            let polygon = polygon_of(&load(&file)?, "partition")?;
            if is_convex(&polygon).verdict == Convexity::Convex {
                return Err(Failure::Input(
                    "partition requires a concave polygon".into(),
                ));
            }
            partition_text(&polygon)
        }
        Command::Symmetry { file } => symmetry_text(&load(&file)?),
        Command::Render { file, levels, out } => {
            if levels == 0 {
                return Err(Failure::Input("--levels must be at least 1".into()));
            }
            let polygon = polygon_of(&load(&file)?, "render")?;
            let svg = if is_convex(&polygon).verdict == Convexity::Convex {
                render_svg(&polygon, Field::Affine(&functional2(&polygon)?), levels)?
            } else {
                render_svg(&polygon, Field::Piecewise(&partition(&polygon)?), levels)?
            };
            std::fs::write(&out, &svg)
                .map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            Ok((format!("wrote {}\n", out.display()), EXIT_OK))
        }
        Command::Lp { file } => {
            let polygon = polygon_of(&load(&file)?, "lp")?;
            if polygon.len() != 3 {
                return Err(Failure::Input(format!(
                    "lp requires a triangle, got {} vertices",
                    polygon.len()
                )));
            }
            lp_text(&polygon)
        }
        Command::Verify {
            file,
            samples,
            seed,
        } => {
            let tol = default_tolerance();
            let summary = match load(&file)? {
                Scene::Polygon2 { polygon } => {
                    check_polygon(&polygon, samples, seed, tol, Execution::Parallel)?
                }
                Scene::Polyhedron3 { polyhedron, .. } => {
                    check_polyhedron(&polyhedron, samples, seed, tol, Execution::Parallel)?
                }
            };
            Ok(verify_text(&summary))
        }
    }
}

fn verify_text(summary: &ResidualSummary) -> (String, i32) {
    let mut out = String::new();
    write_oracle(&mut out, summary);
    let _ = writeln!(
        out,
        "status: {}",
        if summary.passed() { "PASSED" } else { "FAILED" }
    );
    (out, status(summary.passed()))
}

fn partition_text(polygon: &Polygon) -> Result<(String, i32), Failure> {
    let tol = default_tolerance();
    let part = partition(polygon)?;
    let mut out = String::new();
    let _ = writeln!(out, "lines: {}", part.lines.len());
    for (i, l) in part.lines.iter().enumerate() {
        let _ = writeln!(
            out,
            "line {i}: {} x + {} y + {} = 0, sides {}",
            fmt9(l.alpha),
            fmt9(l.beta),
            fmt9(l.gamma),
            part.multiplicity(i)
        );
    }
    let _ = writeln!(out, "cells: {}", part.cells.len());
    for (i, (cell, summary)) in part
        .cells
        .iter()
        .zip(cell_summaries(&part, tol))
        .enumerate()
    {
        let pts: Vec<String> = cell
            .shape
            .vertices()
            .iter()
            .map(|&p| fmt_point2(p))
            .collect();
        let _ = writeln!(
            out,
            "cell {i}: signs {}, area {}",
            summary.signs,
            fmt9(summary.area)
        );
        let _ = writeln!(out, "  vertices: {}", pts.join(" "));
        let f = cell.functional;
        let _ = writeln!(
            out,
            "  V = {} x + {} y + {}",
            fmt9(f.grad.x),
            fmt9(f.grad.y),
            fmt9(f.constant)
        );
    }
    let report = neighbor_check(&part);
    for pair in &report.pairs {
        let _ = writeln!(
            out,
            "adjacent {} {}: flipped line {}, functional residual {}",
            pair.cells.0,
            pair.cells.1,
            pair.flipped_line,
            fmt9e(pair.functional_residual)
        );
    }
    for v in &report.violations {
        let _ = writeln!(out, "violation: {v}");
    }
    let mut ok = report.is_valid();
    match equal_sum_triple(polygon) {
        Ok(t) => {
            let pts: Vec<String> = t.iter().map(|&p| fmt_point2(p)).collect();
            let _ = writeln!(out, "equal-sum triple: {}", pts.join(" "));
        }
        Err(e) => {
            ok = false;
            let _ = writeln!(out, "equal-sum triple: {e}");
        }
    }
    let _ = writeln!(out, "status: {}", if ok { "PASSED" } else { "FAILED" });
    Ok((out, status(ok)))
}

fn symmetry_text(scene: &Scene) -> Result<(String, i32), Failure> {
    let mut out = String::new();
    let passed = match scene {
        Scene::Polygon2 { polygon } => {
            let report = detect_symmetries(polygon)?;
            for r in report.rotations.iter().chain(&report.reflections) {
                let _ = writeln!(out, "{}", describe(r));
            }
            let _ = writeln!(out, "prediction: {}", prediction_name(&report.prediction));
            if is_convex(polygon).verdict == Convexity::Convex {
                let check = check_corollary3(polygon)?;
                if let Some(c) = check.axis_cosine {
                    let _ = writeln!(out, "axis cosine: {}", fmt9e(c));
                }
                let cls = if check.classification.is_cvs() {
                    "CVS"
                } else {
                    "NonCVS"
                };
                let _ = writeln!(out, "classification: {cls}");
                let _ = writeln!(
                    out,
                    "symmetry check: {}",
                    if check.passed { "PASS" } else { "FAIL" }
                );
                check.passed
            } else {
                true
            }
        }
        Scene::Polyhedron3 {
            polyhedron,
            symmetry_axes,
        } => {
            let check = check_corollary4(polyhedron, symmetry_axes)?;
            for (a, ok) in symmetry_axes.iter().zip(&check.declared_valid) {
                let _ = writeln!(
                    out,
                    "declared rotation order {} about ({}, {}, {}): {}",
                    a.order,
                    fmt9(a.direction.x),
                    fmt9(a.direction.y),
                    fmt9(a.direction.z),
                    if *ok {
                        "verified"
                    } else {
                        "does not fix the polyhedron"
                    }
                );
            }
            let _ = writeln!(out, "prediction: {}", corollary4_name(check.prediction));
            let cls = if check.classification.is_cvs() {
                "CVS"
            } else {
                "NonCVS"
            };
            let _ = writeln!(out, "classification: {cls}");
            let _ = writeln!(
                out,
                "axis check: {}",
                if check.passed { "PASS" } else { "FAIL" }
            );
            check.passed
        }
    };
    Ok((out, status(passed)))
}

fn describe(iso: &isosum_core::symmetry::Isometry2) -> String {
    use isosum_core::symmetry::Isometry2;
    match *iso {
        Isometry2::Rotation { center, angle } => {
            format!(
                "rotation about {} by {} rad",
                fmt_point2(center),
                fmt9(angle)
            )
        }
        Isometry2::Reflection { point, direction } => {
            format!(
                "reflection across {} along {}",
                fmt_point2(point),
                fmt_point2(direction)
            )
        }
    }
}

fn lp_text(triangle: &Polygon) -> Result<(String, i32), Failure> {
    let tol = default_tolerance();
    let lp = triangle_to_lp(triangle)?;
    let mut out = export_lp_text(&lp);
    let residuals = map_indexed(LP_SAMPLES, Execution::Parallel, |i| {
        check_duality(triangle, polygon_sample(triangle, 0, i))
    })
    .into_iter()
    .collect::<Result<Vec<f64>, _>>()?;
    let max = residuals.iter().copied().fold(0.0, f64::max);
    let bound = tol * (1.0 + 2.0 * lp.area);
    let ok = max <= bound;
    let _ = writeln!(
        out,
        "\\ duality: samples {LP_SAMPLES}, max |F(x) V(P) - 2S| {}, bound {}, {}",
        fmt9e(max),
        fmt9e(bound),
        if ok { "PASSED" } else { "FAILED" }
    );
    Ok((out, status(ok)))
}
