//! Scene files: JSON descriptions of a polygon or a polyhedron.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use isosum_core::geometry::{orient_ccw, Point2, Point3, Polygon, Polyhedron};
use isosum_core::symmetry::RotationAxis3;

#[derive(Debug, Error, PartialEq)]
pub enum SceneError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scene {
    Polygon2 {
        polygon: Polygon,
    },
    Polyhedron3 {
        polyhedron: Polyhedron,
        symmetry_axes: Vec<RotationAxis3>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SceneFile {
    Polygon2 {
        vertices: Vec<[f64; 2]>,
    },
    Polyhedron3 {
        vertices: Vec<[f64; 3]>,
        faces: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        symmetry_axes: Vec<AxisFile>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisFile {
    point: [f64; 3],
    direction: [f64; 3],
    #[serde(default = "half_turn")]
    order: u32,
}

fn half_turn() -> u32 {
    2
}

/// Parses and validates a scene. Polygons are normalized to
/// counter-clockwise order.
pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| SceneError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let invalid = |e: isosum_core::Error| SceneError::Validation(e.to_string());
    match file {
        SceneFile::Polygon2 { vertices } => {
            let polygon = Polygon::from_coords(&vertices)
                .and_then(|p| orient_ccw(&p))
                .map_err(invalid)?;
            Ok(Scene::Polygon2 { polygon })
        }
        SceneFile::Polyhedron3 {
            vertices,
            faces,
            symmetry_axes,
        } => {
            let polyhedron =
                Polyhedron::new(vertices.into_iter().map(Point3::from).collect(), faces)
                    .map_err(invalid)?;
            let symmetry_axes = symmetry_axes
                .into_iter()
                .map(|a| {
                    let direction = Point3::from(a.direction);
                    if direction.normalized().is_none() || a.order < 2 {
                        return Err(SceneError::Validation(
                            "symmetry axis needs a nonzero direction and order >= 2".into(),
                        ));
                    }
                    Ok(RotationAxis3 {
                        point: a.point.into(),
                        direction,
                        order: a.order,
                    })
                })
                .collect::<Result<_, _>>()?;
            Ok(Scene::Polyhedron3 {
                polyhedron,
                symmetry_axes,
            })
        }
    }
}

pub fn serialize_scene(scene: &Scene) -> String {
    let file = match scene {
        Scene::Polygon2 { polygon } => SceneFile::Polygon2 {
            vertices: polygon
                .vertices()
                .iter()
                .map(|p: &Point2| [p.x, p.y])
                .collect(),
        },
        Scene::Polyhedron3 {
            polyhedron,
            symmetry_axes,
        } => SceneFile::Polyhedron3 {
            vertices: polyhedron
                .vertices()
                .iter()
                .map(|p| [p.x, p.y, p.z])
                .collect(),
            faces: polyhedron.faces().to_vec(),
            symmetry_axes: symmetry_axes
                .iter()
                .map(|a| AxisFile {
                    point: [a.point.x, a.point.y, a.point.z],
                    direction: [a.direction.x, a.direction.y, a.direction.z],
                    order: a.order,
                })
                .collect(),
        },
    };
    let mut text = serde_json::to_string_pretty(&file).expect("scene serializes");
    text.push('\n');
    text
}
