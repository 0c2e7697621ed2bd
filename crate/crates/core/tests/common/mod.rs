#![allow(dead_code)]

use std::f64::consts::TAU;

use isosum_core::geometry::{Point2, Polygon};
use proptest::prelude::*;

pub fn regular(n: usize, radius: f64) -> Polygon {
    Polygon::new(
        (0..n)
            .map(|k| Point2::new(radius, 0.0).rotated(TAU * k as f64 / n as f64))
            .collect(),
    )
    .unwrap()
}

/// Convex polygons inscribed in the unit circle, with jittered angles.
pub fn convex_polygon() -> impl Strategy<Value = Polygon> {
    (3usize..=9)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0.15f64..0.85, n), 0.0..TAU))
        .prop_map(|(n, jitter, phase)| {
            let step = TAU / n as f64;
            let pts = (0..n)
                .map(|k| {
                    let t = phase + step * (k as f64 + jitter[k] - 0.5);
                    Point2::new(t.cos(), t.sin())
                })
                .collect();
            Polygon::new(pts).unwrap()
        })
}

/// Star-shaped polygons around the origin that have at least one reflex vertex.
pub fn concave_polygon() -> impl Strategy<Value = Polygon> {
    (5usize..=9)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(0.2f64..0.8, n),
                prop::collection::vec(0.35f64..1.0, n),
            )
        })
        .prop_filter_map("convex or degenerate", |(n, jitter, radii)| {
            let step = TAU / n as f64;
            let pts: Vec<Point2> = (0..n)
                .map(|k| {
                    let t = step * (k as f64 + jitter[k] - 0.5);
                    Point2::new(t.cos(), t.sin()) * radii[k]
                })
                .collect();
            let p = Polygon::new(pts).ok()?;
            (isosum_core::geometry::is_convex(&p).verdict
                == isosum_core::geometry::Convexity::Concave)
                .then_some(p)
        })
}

/// Rotation by `angle` followed by translation.
pub fn rigid(angle: f64, shift: Point2) -> impl Fn(Point2) -> Point2 {
    move |p| p.rotated(angle) + shift
}
