//! The distance-sum functional `V` of convex polygons and convex polyhedra.
//!
//! Inside a convex region every side's carrier keeps one sign, so
//! `V(p) = sum_i epsilon_i * (alpha_i x + beta_i y + gamma_i)` is affine. Its
//! gradient decides whether `V` is constant; otherwise the level sets are
//! parallel segments (planar sections in 3D).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    boundary_lines, contains, contains_convex, is_convex, point_segment_distance, BoundaryLine,
    BoundaryPlane, Containment, Convexity, Point2, Point3, Polygon, Polyhedron, TOL,
};

/// `V(p) = grad . p + constant`, built from `terms` unit-normal carriers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineFunctional2 {
    pub grad: Point2,
    pub constant: f64,
    pub terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineFunctional3 {
    pub grad: Point3,
    pub constant: f64,
    pub terms: usize,
}

impl AffineFunctional2 {
    pub fn from_lines<'a>(lines: impl IntoIterator<Item = &'a BoundaryLine>) -> Self {
        let mut f = AffineFunctional2 {
            grad: Point2::ORIGIN,
            constant: 0.0,
            terms: 0,
        };
        for b in lines {
            let e = b.epsilon.value();
            f.grad = f.grad + b.line.normal() * e;
            f.constant += e * b.line.gamma;
            f.terms += 1;
        }
        f
    }

    #[inline]
    pub fn eval(&self, p: Point2) -> f64 {
        self.grad.dot(p) + self.constant
    }
}

impl AffineFunctional3 {
    pub fn from_planes<'a>(planes: impl IntoIterator<Item = &'a BoundaryPlane>) -> Self {
        let mut f = AffineFunctional3 {
            grad: Point3::ORIGIN,
            constant: 0.0,
            terms: 0,
        };
        for b in planes {
            let e = b.epsilon.value();
            f.grad = f.grad + b.plane.normal() * e;
            f.constant += e * b.plane.delta;
            f.terms += 1;
        }
        f
    }

    #[inline]
    pub fn eval(&self, p: Point3) -> f64 {
        self.grad.dot(p) + self.constant
    }
}

/// Common surface of the 2D and 3D functionals used by [`classify`].
pub trait Affine: Copy {
    type Vector: Copy + std::fmt::Debug + PartialEq;

    fn grad_norm(&self) -> f64;
    fn constant(&self) -> f64;
    fn terms(&self) -> usize;
    /// Unit direction describing the level sets, in canonical sign.
    fn isosum_direction(&self) -> Option<Self::Vector>;
}

impl Affine for AffineFunctional2 {
    type Vector = Point2;

    fn grad_norm(&self) -> f64 {
        self.grad.norm()
    }

    fn constant(&self) -> f64 {
        self.constant
    }

    fn terms(&self) -> usize {
        self.terms
    }

    /// Direction of the isosum lines: the gradient turned a quarter,
    /// first nonzero component positive.
    fn isosum_direction(&self) -> Option<Point2> {
        let d = self.grad.perp().normalized()?;
        let first = if d.x.abs() > TOL { d.x } else { d.y };
        Some(if first < 0.0 { -d } else { d })
    }
}

impl Affine for AffineFunctional3 {
    type Vector = Point3;

    fn grad_norm(&self) -> f64 {
        self.grad.norm()
    }

    fn constant(&self) -> f64 {
        self.constant
    }

    fn terms(&self) -> usize {
        self.terms
    }

    /// Normal of the isosum planes: the normalized gradient, first nonzero
    /// component positive.
    fn isosum_direction(&self) -> Option<Point3> {
        let d = self.grad.normalized()?;
        let first = if d.x.abs() > TOL {
            d.x
        } else if d.y.abs() > TOL {
            d.y
        } else {
            d.z
        };
        Some(if first < 0.0 { -d } else { d })
    }
}

/// Per-side distances from an interior point and their sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub distances: Vec<f64>,
    pub total: f64,
}

impl DistanceProfile {
    fn from_distances(distances: Vec<f64>) -> Self {
        let total = distances.iter().sum();
        DistanceProfile { distances, total }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Classification<F: Affine> {
    /// `V` is constant with this value.
    Cvs { value: f64 },
    /// `V` varies; `direction` is the isosum line direction (2D) or the
    /// isosum plane normal (3D).
    NonCvs { direction: F::Vector, functional: F },
}

impl<F: Affine> Classification<F> {
    pub fn is_cvs(&self) -> bool {
        matches!(self, Classification::Cvs { .. })
    }

    pub fn direction(&self) -> Option<F::Vector> {
        match self {
            Classification::Cvs { .. } => None,
            Classification::NonCvs { direction, .. } => Some(*direction),
        }
    }
}

pub type Classification2 = Classification<AffineFunctional2>;
pub type Classification3 = Classification<AffineFunctional3>;

/// Euclidean distances from `p` to every side carrier, computed from the
/// side endpoints alone.
///
/// This is the reference the affine form is checked against; it shares no
/// code with the carrier normalization.
pub fn carrier_distances(polygon: &Polygon, p: Point2) -> Vec<f64> {
    polygon
        .edges()
        .map(|(a, b)| {
            let ab = b - a;
            (ab.cross(p - a) / ab.norm()).abs()
        })
        .collect()
}

/// Direct distance sum at `p`; valid for any simple polygon.
pub fn direct_distance_sum(polygon: &Polygon, p: Point2) -> f64 {
    carrier_distances(polygon, p).iter().sum()
}

/// Reference distance profile of an interior point.
pub fn distance_profile(polygon: &Polygon, p: Point2) -> Result<DistanceProfile> {
    if contains(polygon, p) != Containment::Inside {
        return Err(Error::OutsideRegion(p.to_string()));
    }
    Ok(DistanceProfile::from_distances(carrier_distances(
        polygon, p,
    )))
}

/// Reference distance profile inside a convex polyhedron, measured to each
/// face's plane through three of its vertices.
pub fn distance_profile3(poly: &Polyhedron, p: Point3) -> Result<DistanceProfile> {
    if !poly.is_convex() {
        return Err(Error::NotConvex);
    }
    if contains_convex(poly, p) != Containment::Inside {
        return Err(Error::OutsideRegion(p.to_string()));
    }
    let distances = poly
        .faces()
        .iter()
        .map(|face| {
            let v = poly.vertices();
            let a = v[face[0]];
            // Widest triangle fan from the first vertex gives the best normal.
            let n = (1..face.len() - 1)
                .map(|k| (v[face[k]] - a).cross(v[face[k + 1]] - a))
                .max_by(|x, y| x.norm().total_cmp(&y.norm()))
                .expect("faces have at least 3 vertices");
            (n.dot(p - a) / n.norm()).abs()
        })
        .collect();
    Ok(DistanceProfile::from_distances(distances))
}

/// Affine distance-sum functional of a convex polygon.
pub fn functional2(polygon: &Polygon) -> Result<AffineFunctional2> {
    Ok(AffineFunctional2::from_lines(&boundary_lines(polygon)?))
}

/// Affine distance-sum functional of a convex polyhedron.
pub fn functional3(poly: &Polyhedron) -> Result<AffineFunctional3> {
    Ok(AffineFunctional3::from_planes(&poly.boundary_planes()?))
}

/// CVS when the gradient norm is at most `tol` times the number of terms.
pub fn classify<F: Affine>(f: &F, tol: f64) -> Classification<F> {
    if f.grad_norm() <= tol * f.terms().max(1) as f64 {
        return Classification::Cvs {
            value: f.constant(),
        };
    }
    match f.isosum_direction() {
        Some(direction) => Classification::NonCvs {
            direction,
            functional: *f,
        },
        None => Classification::Cvs {
            value: f.constant(),
        },
    }
}

/// The level set `V = level` clipped to a convex polygon.
///
/// Returns `None` when the level misses the polygon; a level attained only
/// at a vertex gives a zero-length segment.
pub fn isosum_segment(
    polygon: &Polygon,
    f: &AffineFunctional2,
    level: f64,
) -> Result<Option<(Point2, Point2)>> {
    if classify(f, TOL).is_cvs() {
        return Err(Error::CvsRegion);
    }
    if is_convex(polygon).verdict != Convexity::Convex {
        return Err(Error::NotConvex);
    }
    let tol = TOL * (1.0 + level.abs());
    let offsets: Vec<f64> = polygon
        .vertices()
        .iter()
        .map(|&v| f.eval(v) - level)
        .collect();
    let n = polygon.len();
    let mut hits = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let (si, sj) = (offsets[i], offsets[j]);
        if si.abs() <= tol {
            hits.push(polygon.vertex(i));
        } else if sj.abs() > tol && (si < 0.0) != (sj < 0.0) {
            let (a, b) = polygon.edge(i);
            hits.push(a.lerp(b, si / (si - sj)));
        }
    }
    let dir = f.grad.perp();
    let by_position = |a: &&Point2, b: &&Point2| dir.dot(**a).total_cmp(&dir.dot(**b));
    let lo = hits.iter().min_by(by_position);
    let hi = hits.iter().max_by(by_position);
    Ok(lo.zip(hi).map(|(a, b)| (*a, *b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointTestVerdict {
    /// Equal sums at points in general position: the region is CVS.
    ImpliesCvs,
    /// Equal sums at three collinear points.
    Collinear,
    /// Equal sums at four coplanar points.
    Coplanar,
    NotEqualSums,
}

fn sums_equal(totals: &[f64], tol: f64) -> bool {
    totals.iter().all(|&a| {
        totals
            .iter()
            .all(|&b| (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())))
    })
}

/// Equal distance sums at three non-collinear interior points force the
/// convex polygon to be CVS.
pub fn three_point_cvs_test(
    polygon: &Polygon,
    points: [Point2; 3],
    tol: f64,
) -> Result<PointTestVerdict> {
    if is_convex(polygon).verdict != Convexity::Convex {
        return Err(Error::NotConvex);
    }
    let totals = points
        .iter()
        .map(|&p| distance_profile(polygon, p).map(|d| d.total))
        .collect::<Result<Vec<_>>>()?;
    if !sums_equal(&totals, tol) {
        return Ok(PointTestVerdict::NotEqualSums);
    }
    let [a, b, c] = points;
    let area = 0.5 * (b - a).cross(c - a).abs();
    let diag = polygon.bounds().diagonal();
    if area > 1e-12 * diag * diag {
        Ok(PointTestVerdict::ImpliesCvs)
    } else {
        Ok(PointTestVerdict::Collinear)
    }
}

/// Four-point analogue for convex polyhedra.
pub fn four_point_cvs_test(
    poly: &Polyhedron,
    points: [Point3; 4],
    tol: f64,
) -> Result<PointTestVerdict> {
    let totals = points
        .iter()
        .map(|&p| distance_profile3(poly, p).map(|d| d.total))
        .collect::<Result<Vec<_>>>()?;
    if !sums_equal(&totals, tol) {
        return Ok(PointTestVerdict::NotEqualSums);
    }
    let [a, b, c, d] = points;
    let volume = (b - a).dot((c - a).cross(d - a)).abs() / 6.0;
    let diag = poly.bounds().diagonal();
    if volume > 1e-12 * diag.powi(3) {
        Ok(PointTestVerdict::ImpliesCvs)
    } else {
        Ok(PointTestVerdict::Coplanar)
    }
}

/// Distance of `p` from the polygon boundary.
pub(crate) fn boundary_clearance(polygon: &Polygon, p: Point2) -> f64 {
    polygon
        .edges()
        .map(|(a, b)| point_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{cuboid, rhombic_pyramid};
    use approx::assert_abs_diff_eq;

    fn poly(c: &[[f64; 2]]) -> Polygon {
        Polygon::from_coords(c).unwrap()
    }

    fn square() -> Polygon {
        poly(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    }

    fn quad() -> Polygon {
        poly(&[[0.0, 0.0], [3.0, 0.0], [1.0, 2.0], [0.0, 1.0]])
    }

    fn equilateral() -> Polygon {
        poly(&[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]])
    }

    #[test]
    fn square_profile() {
        let d = distance_profile(&square(), Point2::new(0.25, 0.5)).unwrap();
        let expected = [0.5, 0.75, 0.5, 0.25];
        for (got, want) in d.distances.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(d.total, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn equilateral_profile_is_height() {
        let d = distance_profile(&equilateral(), Point2::new(0.5, 3f64.sqrt() / 6.0)).unwrap();
        assert_abs_diff_eq!(d.total, 3f64.sqrt() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn profile_rejects_outside_points() {
        assert!(matches!(
            distance_profile(&square(), Point2::new(1.0, 0.5)),
            Err(Error::OutsideRegion(_))
        ));
        assert!(matches!(
            distance_profile3(&cuboid(1.0, 1.0, 1.0).unwrap(), Point3::new(2.0, 0.5, 0.5)),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn cube_profile() {
        let d =
            distance_profile3(&cuboid(1.0, 1.0, 1.0).unwrap(), Point3::new(0.3, 0.3, 0.3)).unwrap();
        assert_abs_diff_eq!(d.total, 3.0, epsilon = 1e-15);
    }

    #[test]
    fn square_functional_is_constant() {
        let f = functional2(&square()).unwrap();
        assert_abs_diff_eq!(f.grad.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f.constant, 2.0, epsilon = 1e-15);
        assert_eq!(classify(&f, TOL), Classification::Cvs { value: f.constant });
    }

    #[test]
    fn quadrilateral_gradient() {
        let f = functional2(&quad()).unwrap();
        let s2 = 2f64.sqrt();
        assert_abs_diff_eq!(f.grad.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.grad.y, 1.0 - s2, epsilon = 1e-12);
        let d = classify(&f, TOL).direction().unwrap();
        assert_abs_diff_eq!(d.y / d.x, 1.0 + s2, epsilon = 1e-12);
    }

    #[test]
    fn functional_needs_convex_polygon() {
        let kite = poly(&[[0.0, 8.0], [-6.0, 0.0], [0.0, 2.5], [6.0, 0.0]]);
        assert_eq!(functional2(&kite), Err(Error::NotConvex));
    }

    #[test]
    fn pyramid_functionals() {
        let a = (15.0f64 / 2.0).sqrt();
        let f = functional3(&rhombic_pyramid(a, 1.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(f.grad.norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.constant, a, epsilon = 1e-12);

        let g = functional3(&rhombic_pyramid(1.0, 1.0, 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(g.grad.x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.grad.y, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.grad.z, 1.0 - 4.0 / 3f64.sqrt(), epsilon = 1e-12);
        assert_eq!(
            classify(&g, TOL).direction(),
            Some(Point3::new(0.0, 0.0, 1.0))
        );
    }

    #[test]
    fn isosum_segment_endpoints_hit_the_level() {
        let q = quad();
        let f = functional2(&q).unwrap();
        let level = f.eval(q.centroid());
        let (a, b) = isosum_segment(&q, &f, level).unwrap().unwrap();
        assert_abs_diff_eq!(f.eval(a), level, epsilon = 1e-9);
        assert_abs_diff_eq!(f.eval(b), level, epsilon = 1e-9);
        assert_abs_diff_eq!((b.y - a.y) / (b.x - a.x), 1.0 + 2f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn isosum_segment_misses_and_touches() {
        let q = quad();
        let f = functional2(&q).unwrap();
        let values: Vec<f64> = q.vertices().iter().map(|&v| f.eval(v)).collect();
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(isosum_segment(&q, &f, max + 1.0).unwrap(), None);
        let (a, b) = isosum_segment(&q, &f, max).unwrap().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn isosum_segment_on_cvs_region_fails() {
        let f = functional2(&square()).unwrap();
        assert_eq!(isosum_segment(&square(), &f, 2.0), Err(Error::CvsRegion));
    }

    #[test]
    fn three_point_verdicts() {
        let t = equilateral();
        let pts = [
            Point2::new(0.3, 0.2),
            Point2::new(0.6, 0.3),
            Point2::new(0.5, 0.6),
        ];
        assert_eq!(
            three_point_cvs_test(&t, pts, TOL).unwrap(),
            PointTestVerdict::ImpliesCvs
        );

        let q = quad();
        let f = functional2(&q).unwrap();
        let level = f.eval(q.centroid());
        let (a, b) = isosum_segment(&q, &f, level).unwrap().unwrap();
        let on_segment = [a.lerp(b, 0.25), a.lerp(b, 0.5), a.lerp(b, 0.75)];
        assert_eq!(
            three_point_cvs_test(&q, on_segment, TOL).unwrap(),
            PointTestVerdict::Collinear
        );

        let generic = [
            Point2::new(0.5, 0.5),
            Point2::new(1.0, 0.5),
            Point2::new(1.0, 1.0),
        ];
        assert_eq!(
            three_point_cvs_test(&q, generic, TOL).unwrap(),
            PointTestVerdict::NotEqualSums
        );

        let outside = [
            Point2::new(5.0, 5.0),
            Point2::new(1.0, 0.5),
            Point2::new(1.0, 1.0),
        ];
        assert!(matches!(
            three_point_cvs_test(&q, outside, TOL),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn four_point_verdicts() {
        let cube = cuboid(1.0, 1.0, 1.0).unwrap();
        let pts = [
            Point3::new(0.2, 0.2, 0.2),
            Point3::new(0.8, 0.2, 0.3),
            Point3::new(0.3, 0.7, 0.4),
            Point3::new(0.4, 0.4, 0.9),
        ];
        assert_eq!(
            four_point_cvs_test(&cube, pts, TOL).unwrap(),
            PointTestVerdict::ImpliesCvs
        );

        let pyramid = rhombic_pyramid(1.0, 1.0, 1.0).unwrap();
        let flat = [
            Point3::new(0.1, 0.0, 0.2),
            Point3::new(-0.1, 0.0, 0.2),
            Point3::new(0.0, 0.1, 0.2),
            Point3::new(0.0, -0.1, 0.2),
        ];
        assert_eq!(
            four_point_cvs_test(&pyramid, flat, TOL).unwrap(),
            PointTestVerdict::Coplanar
        );
        let tilted = [
            Point3::new(0.1, 0.0, 0.1),
            Point3::new(-0.1, 0.0, 0.1),
            Point3::new(0.0, 0.1, 0.1),
            Point3::new(0.0, 0.0, 0.4),
        ];
        assert_eq!(
            four_point_cvs_test(&pyramid, tilted, TOL).unwrap(),
            PointTestVerdict::NotEqualSums
        );
    }
}
