//! Polygon symmetry detection and the predictions symmetries make about
//! the distance-sum functional.
//!
//! A nontrivial rotation fixing a convex polygon forces `V` to be constant.
//! A reflection alone forces the isosum segments (if any) to run
//! perpendicular to the mirror axis. For polyhedra, two rotations about
//! non-parallel axes force `V` to be constant; those rotations are declared
//! by the caller and only verified here.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{classify, functional2, functional3, Classification2, Classification3};
use crate::geometry::{is_convex, orient_ccw, Convexity, Point2, Point3, Polygon, Polyhedron, TOL};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Isometry2 {
    /// Counter-clockwise rotation by `angle` in (0, 2pi).
    Rotation { center: Point2, angle: f64 },
    /// Mirror across the line through `point` with unit `direction`.
    Reflection { point: Point2, direction: Point2 },
}

impl Isometry2 {
    pub fn apply(&self, p: Point2) -> Point2 {
        match *self {
            Isometry2::Rotation { center, angle } => center + (p - center).rotated(angle),
            Isometry2::Reflection { point, direction } => {
                let v = p - point;
                point + direction * (2.0 * v.dot(direction)) - v
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SymmetryPrediction {
    MustBeCvs,
    /// Isosum segments, if any, are perpendicular to this mirror axis
    /// (unit direction through `point`).
    IsosumPerpendicularTo {
        point: Point2,
        direction: Point2,
    },
    NoPrediction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub rotations: Vec<Isometry2>,
    pub reflections: Vec<Isometry2>,
    pub prediction: SymmetryPrediction,
}

fn maps_vertices_onto_itself(polygon: &Polygon, iso: &Isometry2) -> bool {
    polygon.vertices().iter().all(|&v| {
        let w = iso.apply(v);
        polygon.vertices().iter().any(|&u| u.distance(w) <= TOL)
    })
}

/// Rotations and reflections fixing the polygon, found among the maps
/// that fix its vertex centroid.
pub fn detect_symmetries(polygon: &Polygon) -> Result<SymmetryReport> {
    let polygon = orient_ccw(polygon)?;
    let c = polygon.vertex_centroid();
    let n = polygon.len();
    let v0 = polygon.vertex(0) - c;

    let mut rotations = Vec::new();
    for k in 1..n {
        let vk = polygon.vertex(k) - c;
        if (vk.norm() - v0.norm()).abs() > TOL {
            continue;
        }
        let angle = v0.cross(vk).atan2(v0.dot(vk)).rem_euclid(TAU);
        if angle <= TOL || angle >= TAU - TOL {
            continue;
        }
        let rot = Isometry2::Rotation { center: c, angle };
        if (0..n).all(|i| rot.apply(polygon.vertex(i)).distance(polygon.vertex(i + k)) <= TOL) {
            rotations.push(rot);
        }
    }

    let mut reflections: Vec<Isometry2> = Vec::new();
    let candidates = (0..n).flat_map(|i| {
        let (a, b) = polygon.edge(i);
        [a, a.lerp(b, 0.5)]
    });
    for through in candidates {
        let Some(direction) = (through - c).normalized() else {
            continue;
        };
        let direction = if direction.x < -TOL || (direction.x.abs() <= TOL && direction.y < 0.0) {
            -direction
        } else {
            direction
        };
        let duplicate = reflections.iter().any(|r| match r {
            Isometry2::Reflection { direction: d, .. } => d.cross(direction).abs() <= TOL,
            _ => false,
        });
        if duplicate {
            continue;
        }
        let refl = Isometry2::Reflection {
            point: c,
            direction,
        };
        if maps_vertices_onto_itself(&polygon, &refl) {
            reflections.push(refl);
        }
    }

    let prediction = if !rotations.is_empty() {
        SymmetryPrediction::MustBeCvs
    } else if let Some(Isometry2::Reflection { point, direction }) = reflections.first().copied() {
        SymmetryPrediction::IsosumPerpendicularTo { point, direction }
    } else {
        SymmetryPrediction::NoPrediction
    };
    Ok(SymmetryReport {
        rotations,
        reflections,
        prediction,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary3Check {
    pub symmetries: SymmetryReport,
    pub classification: Classification2,
    /// `|cos|` of the angle between the isosum direction and the mirror axis,
    /// when both exist.
    pub axis_cosine: Option<f64>,
    pub passed: bool,
}

/// Cross-checks the symmetry prediction against the computed functional.
pub fn check_corollary3(polygon: &Polygon) -> Result<Corollary3Check> {
    if is_convex(polygon).verdict != Convexity::Convex {
        return Err(Error::NotConvex);
    }
    let symmetries = detect_symmetries(polygon)?;
    let classification = classify(&functional2(polygon)?, TOL);
    let mut axis_cosine = None;
    let passed = match symmetries.prediction {
        SymmetryPrediction::MustBeCvs => classification.is_cvs(),
        SymmetryPrediction::IsosumPerpendicularTo { direction, .. } => {
            match classification.direction() {
                None => true,
                Some(d) => {
                    let cos = d.dot(direction).abs();
                    axis_cosine = Some(cos);
                    cos <= TOL
                }
            }
        }
        SymmetryPrediction::NoPrediction => true,
    };
    Ok(Corollary3Check {
        symmetries,
        classification,
        axis_cosine,
        passed,
    })
}

/// A declared rotational symmetry of order `order` about an axis in space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationAxis3 {
    pub point: Point3,
    pub direction: Point3,
    pub order: u32,
}

impl RotationAxis3 {
    pub fn angle(&self) -> f64 {
        TAU / self.order.max(1) as f64
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let axis = self
            .direction
            .normalized()
            .unwrap_or(Point3::new(0.0, 0.0, 1.0));
        self.point + (p - self.point).rotated_about(axis, self.angle())
    }

    /// Whether the rotation maps the vertex set of `poly` onto itself.
    pub fn fixes(&self, poly: &Polyhedron) -> bool {
        self.order >= 2
            && self.direction.normalized().is_some()
            && poly.vertices().iter().all(|&v| {
                let w = self.apply(v);
                poly.vertices().iter().any(|&u| (u - w).norm() <= TOL)
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corollary4Prediction {
    MustBeCvs,
    NoPrediction,
}

/// `MustBeCvs` iff at least two declared axes are non-parallel.
pub fn predict_corollary4(declared: &[RotationAxis3]) -> Corollary4Prediction {
    let dirs: Vec<Point3> = declared
        .iter()
        .filter(|a| a.order >= 2)
        .filter_map(|a| a.direction.normalized())
        .collect();
    let independent = dirs
        .iter()
        .enumerate()
        .any(|(i, a)| dirs[i + 1..].iter().any(|b| a.cross(*b).norm() > TOL));
    if independent {
        Corollary4Prediction::MustBeCvs
    } else {
        Corollary4Prediction::NoPrediction
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary4Check {
    pub prediction: Corollary4Prediction,
    /// Whether each declared rotation actually fixes the polyhedron.
    pub declared_valid: Vec<bool>,
    pub classification: Classification3,
    pub passed: bool,
}

/// Verifies the declared-axis prediction against the functional.
pub fn check_corollary4(poly: &Polyhedron, declared: &[RotationAxis3]) -> Result<Corollary4Check> {
    let declared_valid: Vec<bool> = declared.iter().map(|a| a.fixes(poly)).collect();
    let valid: Vec<RotationAxis3> = declared
        .iter()
        .zip(&declared_valid)
        .filter_map(|(a, ok)| ok.then_some(*a))
        .collect();
    let prediction = predict_corollary4(&valid);
    let classification = classify(&functional3(poly)?, TOL);
    let passed = match prediction {
        Corollary4Prediction::MustBeCvs => classification.is_cvs(),
        Corollary4Prediction::NoPrediction => true,
    };
    Ok(Corollary4Check {
        prediction,
        declared_valid,
        classification,
        passed,
    })
}
