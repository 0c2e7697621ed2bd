//! Carrier lines and planes of polygon sides and polyhedron faces.
//!
//! A carrier is stored in normalized form (unit normal) and in a canonical
//! orientation: the constant term is negative whenever the carrier misses
//! the origin, so the origin always lies on the negative side. Otherwise
//! the first nonzero normal component is positive.

use serde::{Deserialize, Serialize};

use super::{Point2, Point3, TOL};
use crate::error::{Error, Result};

/// Side of a carrier, as a multiplier in {+1, -1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    /// Sign of `value`; zero counts as positive.
    pub fn of(value: f64) -> Sign {
        if value < 0.0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Pos => 1.0,
            Sign::Neg => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// The line `alpha*x + beta*y + gamma = 0` with `alpha^2 + beta^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Line {
    /// The canonical carrier through two distinct points.
    pub fn through(a: Point2, b: Point2) -> Result<Line> {
        let normal = (b - a)
            .perp()
            .normalized()
            .filter(|_| a.distance(b) > TOL)
            .ok_or_else(|| Error::DegenerateInput(format!("coincident points ({a})")))?;
        Ok(Line::from_normal(normal, -normal.dot(a)))
    }

    fn from_normal(normal: Point2, gamma: f64) -> Line {
        let flip = if gamma.abs() > TOL {
            gamma > 0.0
        } else if normal.x.abs() > TOL {
            normal.x < 0.0
        } else {
            normal.y < 0.0
        };
        let s = if flip { -1.0 } else { 1.0 };
        Line {
            alpha: s * normal.x,
            beta: s * normal.y,
            gamma: s * gamma,
        }
    }

    #[inline]
    pub fn normal(&self) -> Point2 {
        Point2::new(self.alpha, self.beta)
    }

    /// Value of the normalized left-hand side at `p`: a signed distance.
    #[inline]
    pub fn eval(&self, p: Point2) -> f64 {
        self.alpha * p.x + self.beta * p.y + self.gamma
    }

    /// Whether two carriers describe the same point set, either orientation.
    pub fn coincides(&self, other: &Line) -> bool {
        let d = |s: f64| {
            (self.alpha - s * other.alpha).abs()
                + (self.beta - s * other.beta).abs()
                + (self.gamma - s * other.gamma).abs()
        };
        d(1.0) <= TOL || d(-1.0) <= TOL
    }

    /// Intersection point, or `None` for (near-)parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<Point2> {
        let det = self.alpha * other.beta - self.beta * other.alpha;
        if det.abs() <= TOL {
            return None;
        }
        let x = (self.beta * other.gamma - other.beta * self.gamma) / det;
        let y = (other.alpha * self.gamma - self.alpha * other.gamma) / det;
        Some(Point2::new(x, y))
    }
}

/// A carrier line together with the inward sign `epsilon`: for interior
/// points of the owning convex region `epsilon * line.eval(p) >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryLine {
    pub line: Line,
    pub epsilon: Sign,
}

impl BoundaryLine {
    /// Orient `line` so that `anchor` (an interior point) is on the inner side.
    pub fn anchored(line: Line, anchor: Point2) -> BoundaryLine {
        BoundaryLine {
            line,
            epsilon: Sign::of(line.eval(anchor)),
        }
    }

    pub fn alpha(&self) -> f64 {
        self.line.alpha
    }

    pub fn beta(&self) -> f64 {
        self.line.beta
    }

    pub fn gamma(&self) -> f64 {
        self.line.gamma
    }

    /// Unit normal pointing into the region.
    pub fn inward_normal(&self) -> Point2 {
        self.line.normal() * self.epsilon.value()
    }
}

/// Distance of `p` from the carrier, positive on the inner side.
#[inline]
pub fn signed_inward_distance(line: &BoundaryLine, p: Point2) -> f64 {
    line.epsilon.value() * line.line.eval(p)
}

/// The plane `alpha*x + beta*y + gamma*z + delta = 0` with unit normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Plane {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl Plane {
    /// Canonical plane with the given (not necessarily unit) normal through `point`.
    pub fn with_normal(normal: Point3, point: Point3) -> Result<Plane> {
        let n = normal
            .normalized()
            .ok_or_else(|| Error::DegenerateInput("zero plane normal".into()))?;
        let delta = -n.dot(point);
        let flip = if delta.abs() > TOL {
            delta > 0.0
        } else if n.x.abs() > TOL {
            n.x < 0.0
        } else if n.y.abs() > TOL {
            n.y < 0.0
        } else {
            n.z < 0.0
        };
        let s = if flip { -1.0 } else { 1.0 };
        Ok(Plane {
            alpha: s * n.x,
            beta: s * n.y,
            gamma: s * n.z,
            delta: s * delta,
        })
    }

    #[inline]
    pub fn normal(&self) -> Point3 {
        Point3::new(self.alpha, self.beta, self.gamma)
    }

    #[inline]
    pub fn eval(&self, p: Point3) -> f64 {
        self.alpha * p.x + self.beta * p.y + self.gamma * p.z + self.delta
    }
}

/// A face plane with its inward sign.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPlane {
    pub plane: Plane,
    pub epsilon: Sign,
}

impl BoundaryPlane {
    pub fn anchored(plane: Plane, anchor: Point3) -> BoundaryPlane {
        BoundaryPlane {
            plane,
            epsilon: Sign::of(plane.eval(anchor)),
        }
    }

    pub fn inward_normal(&self) -> Point3 {
        self.plane.normal() * self.epsilon.value()
    }
}

#[inline]
pub fn signed_inward_distance3(plane: &BoundaryPlane, p: Point3) -> f64 {
    plane.epsilon.value() * plane.plane.eval(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn canonical_constant_is_negative() {
        let l = Line::through(Point2::new(0.0, 8.0), Point2::new(-6.0, 0.0)).unwrap();
        assert_abs_diff_eq!(l.alpha, -0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(l.beta, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(l.gamma, -4.8, epsilon = 1e-14);
        let reversed = Line::through(Point2::new(-6.0, 0.0), Point2::new(0.0, 8.0)).unwrap();
        assert_eq!(l, reversed);
    }

    #[test]
    fn line_through_origin_has_positive_leading_component() {
        let l = Line::through(Point2::new(1.0, 1.0), Point2::new(-2.0, -2.0)).unwrap();
        assert!(l.alpha > 0.0);
        assert_abs_diff_eq!(l.gamma, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coincident_points_are_rejected() {
        let p = Point2::new(1.0, 2.0);
        assert!(matches!(
            Line::through(p, p),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn inward_distance_on_horizontal_line() {
        let l = Line::through(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)).unwrap();
        let b = BoundaryLine::anchored(l, Point2::new(0.5, 0.5));
        assert_eq!(signed_inward_distance(&b, Point2::new(3.0, 2.0)), 2.0);
        assert_eq!(signed_inward_distance(&b, Point2::new(7.0, 0.0)), 0.0);
    }

    #[test]
    fn intersection_of_kite_lines() {
        let l1 = Line::through(Point2::new(0.0, 8.0), Point2::new(-6.0, 0.0)).unwrap();
        let l3 = Line::through(Point2::new(0.0, 2.5), Point2::new(6.0, 0.0)).unwrap();
        let e = l1.intersect(&l3).unwrap();
        assert_abs_diff_eq!(e.x, -22.0 / 7.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.y, 80.0 / 21.0, epsilon = 1e-12);
    }
}
