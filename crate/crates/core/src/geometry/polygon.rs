use serde::{Deserialize, Serialize};

use super::line::{BoundaryLine, Line};
use super::{Bounds2, Point2, TOL};
use crate::error::{Error, Result};

/// A simple polygon, closed implicitly from the last vertex to the first.
///
/// Construction removes repeated vertices and merges collinear runs, so every
/// side lies on its own carrier and no vertex is flat.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct Polygon {
    vertices: Vec<Point2>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convexity {
    Convex,
    Concave,
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub verdict: Convexity,
    pub reflex_vertex_indices: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Inside,
    OnBoundary,
    Outside,
}

impl Polygon {
    pub fn new(vertices: Vec<Point2>) -> Result<Polygon> {
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite vertex ({p})")));
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "a polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let vertices = simplify(vertices);
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput(
                "fewer than 3 vertices remain after merging collinear runs".into(),
            ));
        }
        let polygon = Polygon { vertices };
        polygon.check_simple()?;
        Ok(polygon)
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Polygon> {
        Polygon::new(coords.iter().map(|&c| c.into()).collect())
    }

    #[inline]
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Side `i` runs from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    /// Canonical carrier line of side `i`.
    pub fn carrier(&self, i: usize) -> Line {
        let (a, b) = self.edge(i);
        Line::through(a, b).expect("adjacent vertices are distinct after construction")
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| a.cross(b)).sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2 {
        // Shift to the first vertex to keep the cross products well scaled.
        let o = self.vertices[0];
        let mut acc = Point2::ORIGIN;
        let mut twice_area = 0.0;
        for (a, b) in self.edges() {
            let (a, b) = (a - o, b - o);
            let w = a.cross(b);
            twice_area += w;
            acc = acc + (a + b) * w;
        }
        o + acc * (1.0 / (3.0 * twice_area))
    }

    pub fn vertex_centroid(&self) -> Point2 {
        let n = self.len() as f64;
        self.vertices.iter().fold(Point2::ORIGIN, |acc, &p| acc + p) * (1.0 / n)
    }

    pub fn bounds(&self) -> Bounds2 {
        Bounds2::of(&self.vertices)
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > 0.0
    }

    /// Image under a point map; fails if the image is degenerate.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Polygon> {
        Polygon::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    fn check_simple(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                if segments_touch(a, b, c, d) {
                    return Err(Error::NotSimple(i, j));
                }
            }
        }
        // Adjacent sides may only share their common vertex; a spike folds back
        // onto the previous side.
        for i in 0..n {
            let (a, b) = (self.vertex(i), self.vertex(i + 1));
            let c = self.vertex(i + 2);
            if (b - a).dot(c - b) < 0.0 && point_segment_distance(c, a, b) <= TOL {
                return Err(Error::NotSimple(i, (i + 1) % n));
            }
        }
        Ok(())
    }
}

impl TryFrom<Vec<Point2>> for Polygon {
    type Error = Error;

    fn try_from(v: Vec<Point2>) -> Result<Polygon> {
        Polygon::new(v)
    }
}

impl From<Polygon> for Vec<Point2> {
    fn from(p: Polygon) -> Vec<Point2> {
        p.vertices
    }
}

/// Drop repeated vertices and vertices lying on the segment between their
/// neighbours, until neither remains.
fn simplify(mut v: Vec<Point2>) -> Vec<Point2> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut removed = None;
        for i in 0..n {
            let prev = v[(i + n - 1) % n];
            let cur = v[i];
            let next = v[(i + 1) % n];
            if cur.distance(next) <= TOL {
                removed = Some(i);
                break;
            }
            let chord = next - prev;
            let len = chord.norm();
            if len > TOL && (cur - prev).cross(chord).abs() / len <= TOL {
                let t = (cur - prev).dot(chord) / (len * len);
                if (0.0..=1.0).contains(&t) {
                    log::warn!("merging collinear vertex {i} ({cur})");
                    removed = Some(i);
                    break;
                }
            }
        }
        match removed {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

pub(crate) fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Closed segments `ab` and `cd` intersect or come within tolerance.
fn segments_touch(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    point_segment_distance(c, a, b) <= TOL
        || point_segment_distance(d, a, b) <= TOL
        || point_segment_distance(a, c, d) <= TOL
        || point_segment_distance(b, c, d) <= TOL
}

/// The same polygon in counter-clockwise order.
pub fn orient_ccw(polygon: &Polygon) -> Result<Polygon> {
    let area = polygon.signed_area();
    let scale = polygon.bounds().diagonal();
    if area.abs() <= TOL * scale * scale {
        return Err(Error::DegenerateInput("polygon has zero area".into()));
    }
    if area > 0.0 {
        return Ok(polygon.clone());
    }
    let mut vertices = polygon.vertices.clone();
    vertices.reverse();
    // Keep the first vertex in place.
    vertices.rotate_right(1);
    Ok(Polygon { vertices })
}

pub fn is_convex(polygon: &Polygon) -> ConvexityReport {
    let area = polygon.signed_area();
    if area == 0.0 {
        return ConvexityReport {
            verdict: Convexity::Degenerate,
            reflex_vertex_indices: vec![],
        };
    }
    let orientation = area.signum();
    let n = polygon.len();
    let reflex: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = polygon.vertex(i + n - 1);
            let cur = polygon.vertex(i);
            let next = polygon.vertex(i + 1);
            let (e1, e2) = (cur - prev, next - cur);
            let sine = e1.cross(e2) / (e1.norm() * e2.norm());
            orientation * sine < -TOL
        })
        .collect();
    let verdict = if reflex.is_empty() {
        Convexity::Convex
    } else {
        Convexity::Concave
    };
    ConvexityReport {
        verdict,
        reflex_vertex_indices: reflex,
    }
}

/// Carrier of side `edge_index` with its inward sign anchored at the centroid.
pub fn boundary_line_of_edge(polygon: &Polygon, edge_index: usize) -> Result<BoundaryLine> {
    if edge_index >= polygon.len() {
        return Err(Error::InvalidInput(format!(
            "edge index {edge_index} out of range for {} sides",
            polygon.len()
        )));
    }
    if is_convex(polygon).verdict != Convexity::Convex {
        return Err(Error::NotConvex);
    }
    Ok(BoundaryLine::anchored(
        polygon.carrier(edge_index),
        polygon.centroid(),
    ))
}

/// All boundary lines of a convex polygon, in side order.
pub fn boundary_lines(polygon: &Polygon) -> Result<Vec<BoundaryLine>> {
    if is_convex(polygon).verdict != Convexity::Convex {
        return Err(Error::NotConvex);
    }
    let anchor = polygon.centroid();
    Ok((0..polygon.len())
        .map(|i| BoundaryLine::anchored(polygon.carrier(i), anchor))
        .collect())
}

pub fn contains(polygon: &Polygon, p: Point2) -> Containment {
    if polygon
        .edges()
        .any(|(a, b)| point_segment_distance(p, a, b) <= TOL)
    {
        return Containment::OnBoundary;
    }
    let mut inside = false;
    for (a, b) in polygon.edges() {
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}
