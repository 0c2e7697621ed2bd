use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::line::{BoundaryPlane, Plane};
use super::polygon::Containment;
use super::{Bounds3, Point3, TOL};
use crate::error::{Error, Result};

/// A closed polyhedral surface with planar faces, oriented outward.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyhedron {
    vertices: Vec<Point3>,
    faces: Vec<Vec<usize>>,
}

impl Polyhedron {
    /// Validates indices, planarity and closedness. Faces must be
    /// consistently oriented; an inward-facing surface is flipped.
    pub fn new(vertices: Vec<Point3>, faces: Vec<Vec<usize>>) -> Result<Polyhedron> {
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite vertex ({p})")));
        }
        if vertices.len() < 4 || faces.len() < 4 {
            return Err(Error::InvalidInput(
                "a polyhedron needs at least 4 vertices and 4 faces".into(),
            ));
        }
        for (f, face) in faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(Error::InvalidInput(format!(
                    "face {f} has fewer than 3 vertices"
                )));
            }
            if let Some(&i) = face.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::InvalidInput(format!(
                    "face {f} references missing vertex {i}"
                )));
            }
        }

        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for face in &faces {
            for k in 0..face.len() {
                let e = (face[k], face[(k + 1) % face.len()]);
                *directed.entry(e).or_default() += 1;
            }
        }
        for (&(a, b), &count) in &directed {
            if count != 1 {
                return Err(Error::NotClosed(format!(
                    "edge {a}->{b} used {count} times"
                )));
            }
            if !directed.contains_key(&(b, a)) {
                return Err(Error::NotClosed(format!(
                    "edge {a}-{b} borders only one face"
                )));
            }
        }

        let mut poly = Polyhedron { vertices, faces };
        for f in 0..poly.faces.len() {
            let plane = poly.face_plane(f)?;
            for &i in &poly.faces[f] {
                if plane.eval(poly.vertices[i]).abs() > TOL {
                    return Err(Error::InvalidInput(format!("face {f} is not planar")));
                }
            }
        }
        let volume = poly.signed_volume();
        let scale = poly.bounds().diagonal();
        if volume.abs() <= TOL * scale.powi(3) {
            return Err(Error::DegenerateInput("polyhedron has zero volume".into()));
        }
        if volume < 0.0 {
            for face in &mut poly.faces {
                face.reverse();
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_points(&self, f: usize) -> impl Iterator<Item = Point3> + '_ {
        self.faces[f].iter().map(move |&i| self.vertices[i])
    }

    /// Newell normal of face `f`, unnormalized, following the face winding.
    fn newell_normal(&self, f: usize) -> Point3 {
        let face = &self.faces[f];
        let mut n = Point3::ORIGIN;
        for k in 0..face.len() {
            let a = self.vertices[face[k]];
            let b = self.vertices[face[(k + 1) % face.len()]];
            n.x += (a.y - b.y) * (a.z + b.z);
            n.y += (a.z - b.z) * (a.x + b.x);
            n.z += (a.x - b.x) * (a.y + b.y);
        }
        n
    }

    fn face_center(&self, f: usize) -> Point3 {
        let k = self.faces[f].len() as f64;
        self.face_points(f).fold(Point3::ORIGIN, |acc, p| acc + p) * (1.0 / k)
    }

    /// Canonical carrier plane of face `f`.
    pub fn face_plane(&self, f: usize) -> Result<Plane> {
        Plane::with_normal(self.newell_normal(f), self.face_center(f))
            .map_err(|_| Error::DegenerateInput(format!("face {f} has zero area")))
    }

    /// Outward unit normal of face `f`.
    pub fn outward_normal(&self, f: usize) -> Point3 {
        self.newell_normal(f).normalized().unwrap_or(Point3::ORIGIN)
    }

    pub fn signed_volume(&self) -> f64 {
        let o = self.vertices[0];
        let mut six_v = 0.0;
        for face in &self.faces {
            let a = self.vertices[face[0]] - o;
            for k in 1..face.len() - 1 {
                let b = self.vertices[face[k]] - o;
                let c = self.vertices[face[k + 1]] - o;
                six_v += a.dot(b.cross(c));
            }
        }
        six_v / 6.0
    }

    pub fn volume(&self) -> f64 {
        self.signed_volume().abs()
    }

    /// Mean of the vertices; strictly interior for convex polyhedra.
    pub fn vertex_centroid(&self) -> Point3 {
        let n = self.vertices.len() as f64;
        self.vertices.iter().fold(Point3::ORIGIN, |acc, &p| acc + p) * (1.0 / n)
    }

    pub fn bounds(&self) -> Bounds3 {
        Bounds3::of(&self.vertices)
    }

    pub fn is_convex(&self) -> bool {
        (0..self.faces.len()).all(|f| {
            let n = self.outward_normal(f);
            let c = self.face_center(f);
            self.vertices.iter().all(|&v| n.dot(v - c) <= TOL)
        })
    }

    /// Face planes with inward signs; requires convexity.
    pub fn boundary_planes(&self) -> Result<Vec<BoundaryPlane>> {
        if !self.is_convex() {
            return Err(Error::NotConvex);
        }
        let anchor = self.vertex_centroid();
        (0..self.faces.len())
            .map(|f| Ok(BoundaryPlane::anchored(self.face_plane(f)?, anchor)))
            .collect()
    }

    pub fn map(&self, f: impl Fn(Point3) -> Point3) -> Result<Polyhedron> {
        Polyhedron::new(
            self.vertices.iter().map(|&p| f(p)).collect(),
            self.faces.clone(),
        )
    }
}

pub fn boundary_plane_of_face(poly: &Polyhedron, face_index: usize) -> Result<BoundaryPlane> {
    if face_index >= poly.faces().len() {
        return Err(Error::InvalidInput(format!(
            "face index {face_index} out of range"
        )));
    }
    poly.boundary_planes().map(|planes| planes[face_index])
}

/// Classification against a convex polyhedron.
pub fn contains_convex(poly: &Polyhedron, p: Point3) -> Containment {
    let mut on_boundary = false;
    for f in 0..poly.faces().len() {
        let n = poly.outward_normal(f);
        let d = n.dot(p - poly.vertices()[poly.faces()[f][0]]);
        if d > TOL {
            return Containment::Outside;
        }
        if d >= -TOL {
            on_boundary = true;
        }
    }
    if on_boundary {
        Containment::OnBoundary
    } else {
        Containment::Inside
    }
}

/// Axis-aligned box `[0,a]x[0,b]x[0,c]`.
pub fn cuboid(a: f64, b: f64, c: f64) -> Result<Polyhedron> {
    let v = vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(a, 0.0, 0.0),
        Point3::new(a, b, 0.0),
        Point3::new(0.0, b, 0.0),
        Point3::new(0.0, 0.0, c),
        Point3::new(a, 0.0, c),
        Point3::new(a, b, c),
        Point3::new(0.0, b, c),
    ];
    let faces = vec![
        vec![0, 3, 2, 1],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    Polyhedron::new(v, faces)
}

/// Right prism of height `height` over a polygon lying in the plane z = 0.
pub fn right_prism(base: &super::Polygon, height: f64) -> Result<Polyhedron> {
    let base = super::orient_ccw(base)?;
    let n = base.len();
    let mut vertices: Vec<Point3> = base
        .vertices()
        .iter()
        .map(|p| Point3::new(p.x, p.y, 0.0))
        .collect();
    vertices.extend(
        base.vertices()
            .iter()
            .map(|p| Point3::new(p.x, p.y, height)),
    );
    let mut faces = vec![(0..n).rev().collect::<Vec<_>>(), (n..2 * n).collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push(vec![i, j, n + j, n + i]);
    }
    Polyhedron::new(vertices, faces)
}

/// Pyramid with apex (0,0,apex) over the rhombus (±b,0,0), (0,±c,0).
pub fn rhombic_pyramid(apex: f64, b: f64, c: f64) -> Result<Polyhedron> {
    let vertices = vec![
        Point3::new(0.0, 0.0, apex),
        Point3::new(b, 0.0, 0.0),
        Point3::new(0.0, c, 0.0),
        Point3::new(-b, 0.0, 0.0),
        Point3::new(0.0, -c, 0.0),
    ];
    let faces = vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 1],
        vec![1, 4, 3, 2],
    ];
    Polyhedron::new(vertices, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cube_is_closed_and_convex() {
        let cube = cuboid(1.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(cube.volume(), 1.0, epsilon = 1e-15);
        assert!(cube.signed_volume() > 0.0);
        assert!(cube.is_convex());
        assert_eq!(
            contains_convex(&cube, Point3::new(0.3, 0.3, 0.3)),
            Containment::Inside
        );
        assert_eq!(
            contains_convex(&cube, Point3::new(1.0, 0.3, 0.3)),
            Containment::OnBoundary
        );
        assert_eq!(
            contains_convex(&cube, Point3::new(1.3, 0.3, 0.3)),
            Containment::Outside
        );
    }

    #[test]
    fn inward_surface_is_flipped() {
        let cube = cuboid(1.0, 2.0, 3.0).unwrap();
        let flipped: Vec<Vec<usize>> = cube
            .faces()
            .iter()
            .map(|f| f.iter().rev().copied().collect())
            .collect();
        let again = Polyhedron::new(cube.vertices().to_vec(), flipped).unwrap();
        assert!(again.signed_volume() > 0.0);
    }

    #[test]
    fn open_surface_is_rejected() {
        let cube = cuboid(1.0, 1.0, 1.0).unwrap();
        let faces = cube.faces()[..5].to_vec();
        let extra = vec![vec![0, 1, 2]];
        assert!(matches!(
            Polyhedron::new(cube.vertices().to_vec(), [faces, extra].concat()),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn non_planar_face_is_rejected() {
        let mut v = cuboid(1.0, 1.0, 1.0).unwrap().vertices().to_vec();
        let faces = cuboid(1.0, 1.0, 1.0).unwrap().faces().to_vec();
        v[6].z = 1.2;
        assert!(matches!(
            Polyhedron::new(v, faces),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn pyramid_face_plane() {
        let p = rhombic_pyramid(2.0, 1.0, 1.0).unwrap();
        assert!(p.is_convex());
        let planes = p.boundary_planes().unwrap();
        for bp in &planes {
            assert_abs_diff_eq!(bp.plane.normal().norm(), 1.0, epsilon = 1e-12);
            assert!(bp.epsilon.value() * bp.plane.eval(Point3::new(0.0, 0.0, 0.5)) > 0.0);
        }
    }
}
