mod common;

use common::regular;
use isosum_core::functional::{direct_distance_sum, functional3};
use isosum_core::geometry::{cuboid, Point2, Point3, Polygon};
use isosum_core::lp::{
    barycentric_normalize, check_duality, export_lp_text, parse_lp_text, triangle_to_lp,
};
use isosum_core::oracle::{check_convex_polygon, check_polyhedron};
use isosum_core::sampling::{map_indexed, polygon_sample, polyhedron_sample, Execution};
use isosum_core::symmetry::{check_corollary3, detect_symmetries, RotationAxis3};
use proptest::prelude::*;

fn triangle() -> impl Strategy<Value = Polygon> {
    prop::array::uniform6(-10.0f64..10.0).prop_filter_map("degenerate", |c| {
        let [a, b, d] = [
            Point2::new(c[0], c[1]),
            Point2::new(c[2], c[3]),
            Point2::new(c[4], c[5]),
        ];
        let area = 0.5 * (b - a).cross(d - a).abs();
        let diag = a.distance(b).max(b.distance(d)).max(d.distance(a));
        (area > 0.05 * diag * diag)
            .then(|| Polygon::new(vec![a, b, d]).ok())
            .flatten()
    })
}

#[test]
fn detected_symmetries_preserve_v() {
    let shapes = [
        regular(6, 2.0),
        Polygon::from_coords(&[[0.0, 2.0], [-1.0, 0.0], [0.0, -1.0], [1.0, 0.0]]).unwrap(),
        Polygon::from_coords(&[[-2.0, -1.0], [2.0, -1.0], [2.0, 1.0], [-2.0, 1.0]]).unwrap(),
    ];
    for p in shapes {
        let report = detect_symmetries(&p).unwrap();
        assert!(!report.rotations.is_empty() || !report.reflections.is_empty());
        for iso in report.rotations.iter().chain(&report.reflections) {
            for i in 0..200 {
                let q = polygon_sample(&p, 11, i);
                let (a, b) = (
                    direct_distance_sum(&p, q),
                    direct_distance_sum(&p, iso.apply(q)),
                );
                assert!((a - b).abs() <= 1e-9, "{iso:?}");
            }
        }
        assert!(check_corollary3(&p).unwrap().passed);
    }
}

#[test]
fn box_rotations_fix_the_box_and_preserve_v() {
    let b = cuboid(1.0, 2.0, 3.0).unwrap();
    let f = functional3(&b).unwrap();
    let c = Point3::new(0.5, 1.0, 1.5);
    for dir in [
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(0.0, 1.0, 0.0),
        Point3::new(0.0, 0.0, 1.0),
    ] {
        let axis = RotationAxis3 {
            point: c,
            direction: dir,
            order: 2,
        };
        assert!(axis.fixes(&b));
        for i in 0..200 {
            let q = polyhedron_sample(&b, 5, i);
            assert!((f.eval(q) - f.eval(axis.apply(q))).abs() <= 1e-9);
        }
    }
}

#[test]
fn execution_modes_agree() {
    let p = regular(7, 3.0);
    let seq = map_indexed(500, Execution::Sequential, |i| polygon_sample(&p, 3, i));
    let par = map_indexed(500, Execution::Parallel, |i| polygon_sample(&p, 3, i));
    assert_eq!(seq, par);
    let a = check_convex_polygon(&p, 2000, 9, 1e-9, Execution::Sequential).unwrap();
    let b = check_convex_polygon(&p, 2000, 9, 1e-9, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    let cube = cuboid(1.0, 1.0, 1.0).unwrap();
    let a = check_polyhedron(&cube, 1000, 2, 1e-9, Execution::Sequential).unwrap();
    let b = check_polyhedron(&cube, 1000, 2, 1e-9, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn barycentric_matches_area_ratios(t in triangle(), seed in any::<u64>()) {
        let lp = triangle_to_lp(&t).unwrap();
        let v = t.vertices();
        for i in 0..1000 {
            let p = polygon_sample(&t, seed, i);
            let x = barycentric_normalize(&t, p).unwrap();
            // Area of the sub-triangle opposite each vertex.
            let sub = [
                0.5 * (v[2] - v[1]).cross(p - v[1]).abs(),
                0.5 * (v[0] - v[2]).cross(p - v[2]).abs(),
                0.5 * (v[1] - v[0]).cross(p - v[0]).abs(),
            ];
            let weights: [f64; 3] = std::array::from_fn(|k| sub[k] / lp.side_lengths[k]);
            let total: f64 = weights.iter().sum();
            for (xk, wk) in x.x.iter().zip(weights) {
                prop_assert!((xk - wk / total).abs() <= 1e-9);
            }
            prop_assert!((x.x.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert!(check_duality(&t, p).unwrap() <= 1e-9 * (1.0 + lp.area));
        }
    }

    #[test]
    fn lp_text_round_trips(t in triangle()) {
        let lp = triangle_to_lp(&t).unwrap();
        let back = parse_lp_text(&export_lp_text(&lp)).unwrap();
        for k in 0..3 {
            let (a, b) = (lp.side_lengths[k], back.side_lengths[k]);
            prop_assert!((a - b).abs() <= 1e-11 * a.abs());
        }
        prop_assert!((lp.area - back.area).abs() <= 1e-11 * lp.area);
    }
}
