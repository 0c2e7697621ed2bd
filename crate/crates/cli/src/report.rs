//! Analysis reports and their deterministic text form.

use std::fmt::Write as _;

use serde::Serialize;

use isosum_core::functional::{classify, functional2, functional3, Classification};
use isosum_core::geometry::{is_convex, Convexity, Point2, Point3, Polygon, Polyhedron, Sign};
use isosum_core::oracle::{check_partition, check_polygon, check_polyhedron, ResidualSummary};
use isosum_core::partition::{partition, Partition};
use isosum_core::sampling::Execution;
use isosum_core::symmetry::{
    check_corollary3, check_corollary4, detect_symmetries, Corollary4Prediction, RotationAxis3,
    SymmetryPrediction,
};
use isosum_core::Result;

use crate::scene::Scene;

/// Fixed 9-decimal formatting; negative zero prints as zero.
pub fn fmt9(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Exponent form with 9 decimals, for residuals and tolerances.
pub fn fmt9e(x: f64) -> String {
    format!("{x:.9e}")
}

pub fn fmt_point2(p: Point2) -> String {
    format!("({}, {})", fmt9(p.x), fmt9(p.y))
}

pub fn fmt_point3(p: Point3) -> String {
    format!("({}, {}, {})", fmt9(p.x), fmt9(p.y), fmt9(p.z))
}

pub fn fmt_signs(signs: &[Sign]) -> String {
    signs
        .iter()
        .map(|s| if *s == Sign::Pos { '+' } else { '-' })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Verdict {
    Cvs {
        value: f64,
    },
    NonCvs {
        direction: Vec<f64>,
        gradient: Vec<f64>,
        constant: f64,
    },
    /// Concave polygon: one affine piece per cell, never constant overall.
    Piecewise {
        cells: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellSummary {
    pub vertices: Vec<[f64; 2]>,
    pub area: f64,
    pub signs: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetrySummary {
    pub rotations: usize,
    pub reflections: usize,
    pub prediction: String,
    /// Outcome of cross-checking the prediction with the functional.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub kind: String,
    pub convexity: String,
    pub reflex_vertices: Vec<usize>,
    pub verdict: Verdict,
    pub cells: Vec<CellSummary>,
    pub symmetry: SymmetrySummary,
    pub oracle: ResidualSummary,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.oracle.passed() && self.symmetry.consistent != Some(false)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scene: {}", self.kind);
        let _ = writeln!(out, "convexity: {}", self.convexity);
        if !self.reflex_vertices.is_empty() {
            let _ = writeln!(out, "reflex vertices: {:?}", self.reflex_vertices);
        }
        write_verdict(&mut out, "", &self.verdict);
        for (i, cell) in self.cells.iter().enumerate() {
            let _ = writeln!(
                out,
                "cell {i}: {} vertices, area {}, signs {}",
                cell.vertices.len(),
                fmt9(cell.area),
                cell.signs
            );
            write_verdict(&mut out, "  ", &cell.verdict);
        }
        let s = &self.symmetry;
        let _ = writeln!(
            out,
            "symmetry: {} rotations, {} reflections, prediction {}",
            s.rotations, s.reflections, s.prediction
        );
        match s.consistent {
            Some(true) => out.push_str("symmetry check: PASS\n"),
            Some(false) => out.push_str("symmetry check: FAIL\n"),
            None => {}
        }
        write_oracle(&mut out, &self.oracle);
        let _ = writeln!(
            out,
            "status: {}",
            if self.passed() { "PASSED" } else { "FAILED" }
        );
        out
    }
}

fn write_verdict(out: &mut String, indent: &str, v: &Verdict) {
    let vec = |c: &[f64]| {
        format!(
            "({})",
            c.iter().map(|&x| fmt9(x)).collect::<Vec<_>>().join(", ")
        )
    };
    match v {
        Verdict::Cvs { value } => {
            let _ = writeln!(out, "{indent}classification: CVS");
            let _ = writeln!(out, "{indent}value: {}", fmt9(*value));
        }
        Verdict::NonCvs {
            direction,
            gradient,
            constant,
        } => {
            let _ = writeln!(out, "{indent}classification: NonCVS");
            let _ = writeln!(out, "{indent}isosum direction: {}", vec(direction));
            let _ = writeln!(out, "{indent}gradient: {}", vec(gradient));
            let _ = writeln!(out, "{indent}constant: {}", fmt9(*constant));
        }
        Verdict::Piecewise { cells } => {
            let _ = writeln!(
                out,
                "{indent}classification: NonCVS (piecewise, {cells} cells)"
            );
        }
    }
}

pub fn write_oracle(out: &mut String, o: &ResidualSummary) {
    let _ = writeln!(
        out,
        "oracle: samples {}, seed {}, max residual {}, mean residual {}, tolerance {}",
        o.samples,
        o.seed,
        fmt9e(o.max_residual),
        fmt9e(o.mean_residual),
        fmt9e(o.tolerance)
    );
}

pub fn verdict2(c: &Classification<isosum_core::AffineFunctional2>) -> Verdict {
    match c {
        Classification::Cvs { value } => Verdict::Cvs { value: *value },
        Classification::NonCvs {
            direction,
            functional,
        } => Verdict::NonCvs {
            direction: vec![direction.x, direction.y],
            gradient: vec![functional.grad.x, functional.grad.y],
            constant: functional.constant,
        },
    }
}

pub fn verdict3(c: &Classification<isosum_core::AffineFunctional3>) -> Verdict {
    match c {
        Classification::Cvs { value } => Verdict::Cvs { value: *value },
        Classification::NonCvs {
            direction,
            functional,
        } => Verdict::NonCvs {
            direction: vec![direction.x, direction.y, direction.z],
            gradient: vec![functional.grad.x, functional.grad.y, functional.grad.z],
            constant: functional.constant,
        },
    }
}

pub fn cell_summaries(part: &Partition, tol: f64) -> Vec<CellSummary> {
    part.cells
        .iter()
        .map(|c| CellSummary {
            vertices: c.shape.vertices().iter().map(|p| [p.x, p.y]).collect(),
            area: c.shape.area(),
            signs: fmt_signs(&c.sign_vector.signs),
            verdict: verdict2(&classify(&c.functional, tol)),
        })
        .collect()
}

pub fn prediction_name(p: &SymmetryPrediction) -> String {
    match p {
        SymmetryPrediction::MustBeCvs => "MustBeCVS".into(),
        SymmetryPrediction::IsosumPerpendicularTo { point, direction } => {
            format!(
                "IsosumPerpendicularTo(axis through {} along {})",
                fmt_point2(*point),
                fmt_point2(*direction)
            )
        }
        SymmetryPrediction::NoPrediction => "NoPrediction".into(),
    }
}

pub fn corollary4_name(p: Corollary4Prediction) -> &'static str {
    match p {
        Corollary4Prediction::MustBeCvs => "MustBeCVS",
        Corollary4Prediction::NoPrediction => "NoPrediction",
    }
}

/// Full analysis of a scene with an oracle check of `samples` points.
pub fn analyze(scene: &Scene, tol: f64, samples: u64, seed: u64) -> Result<AnalysisReport> {
    match scene {
        Scene::Polygon2 { polygon } => analyze_polygon(polygon, tol, samples, seed),
        Scene::Polyhedron3 {
            polyhedron,
            symmetry_axes,
        } => analyze_polyhedron(polyhedron, symmetry_axes, tol, samples, seed),
    }
}

fn analyze_polygon(polygon: &Polygon, tol: f64, samples: u64, seed: u64) -> Result<AnalysisReport> {
    let convexity = is_convex(polygon);
    let symmetries = detect_symmetries(polygon)?;
    let mut symmetry = SymmetrySummary {
        rotations: symmetries.rotations.len(),
        reflections: symmetries.reflections.len(),
        prediction: prediction_name(&symmetries.prediction),
        consistent: None,
    };
    let (verdict, cells, oracle) = match convexity.verdict {
        Convexity::Convex => {
            let c = classify(&functional2(polygon)?, tol);
            symmetry.consistent = Some(check_corollary3(polygon)?.passed);
            let oracle = check_polygon(polygon, samples, seed, tol, Execution::Parallel)?;
            (verdict2(&c), vec![], oracle)
        }
        _ => {
            let part = partition(polygon)?;
            let oracle = check_partition(polygon, &part, samples, seed, tol, Execution::Parallel);
            (
                Verdict::Piecewise {
                    cells: part.cells.len(),
                },
                cell_summaries(&part, tol),
                oracle,
            )
        }
    };
    Ok(AnalysisReport {
        kind: "polygon2".into(),
        convexity: format!("{:?}", convexity.verdict),
        reflex_vertices: convexity.reflex_vertex_indices,
        verdict,
        cells,
        symmetry,
        oracle,
    })
}

fn analyze_polyhedron(
    poly: &Polyhedron,
    axes: &[RotationAxis3],
    tol: f64,
    samples: u64,
    seed: u64,
) -> Result<AnalysisReport> {
    let c = classify(&functional3(poly)?, tol);
    let check = check_corollary4(poly, axes)?;
    let valid = check.declared_valid.iter().filter(|v| **v).count();
    let symmetry = SymmetrySummary {
        rotations: valid,
        reflections: 0,
        prediction: corollary4_name(check.prediction).into(),
        consistent: Some(check.passed),
    };
    let oracle = check_polyhedron(poly, samples, seed, tol, Execution::Parallel)?;
    Ok(AnalysisReport {
        kind: "polyhedron3".into(),
        convexity: "Convex".into(),
        reflex_vertices: vec![],
        verdict: verdict3(&c),
        cells: vec![],
        symmetry,
        oracle,
    })
}
