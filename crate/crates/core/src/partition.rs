//! Convex partition of a concave polygon by the arrangement of its side
//! carriers.
//!
//! Inside one arrangement cell every carrier keeps its sign, so the distance
//! sum is affine there. Neighbouring cells lie on opposite sides of exactly
//! one carrier and their affine pieces differ only in that carrier's term.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{boundary_clearance, classify, direct_distance_sum, AffineFunctional2};
use crate::geometry::{
    contains, is_convex, orient_ccw, BoundaryLine, Containment, Convexity, Line, Point2, Polygon,
    Sign, TOL,
};

/// Side of each distinct carrier on which a cell lies, as the sign of the
/// carrier's canonical expression. Canonical carriers that miss the origin
/// are negative on the origin's side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector {
    pub signs: Vec<Sign>,
}

impl SignVector {
    pub fn at(lines: &[Line], p: Point2) -> SignVector {
        SignVector {
            signs: lines.iter().map(|l| Sign::of(l.eval(p))).collect(),
        }
    }

    /// Indices where the two vectors disagree.
    pub fn differences(&self, other: &SignVector) -> Vec<usize> {
        self.signs
            .iter()
            .zip(&other.signs)
            .enumerate()
            .filter_map(|(i, (a, b))| (a != b).then_some(i))
            .collect()
    }

    /// For each carrier, whether the cell lies on the same side as `reference`.
    pub fn same_side_as(&self, lines: &[Line], reference: Point2) -> Vec<bool> {
        self.signs
            .iter()
            .zip(lines)
            .map(|(s, l)| *s == Sign::of(l.eval(reference)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionCell {
    pub shape: Polygon,
    pub sign_vector: SignVector,
    pub functional: AffineFunctional2,
}

/// Two cells sharing a positive-length edge on carrier `flipped_line`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Adjacency {
    pub cells: (usize, usize),
    pub flipped_line: usize,
    pub shared_edge: (Point2, Point2),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// Distinct side carriers.
    pub lines: Vec<Line>,
    /// Carrier index of each polygon side.
    pub side_line: Vec<usize>,
    /// Cells in lexicographic order of their centroids.
    pub cells: Vec<PartitionCell>,
    pub adjacency: Vec<Adjacency>,
    /// Same-sign neighbour pairs whose union was not convex and stayed split.
    pub unmerged: Vec<(usize, usize)>,
}

impl Partition {
    /// Number of polygon sides carried by line `l`.
    pub fn multiplicity(&self, l: usize) -> usize {
        self.side_line.iter().filter(|&&k| k == l).count()
    }

    /// Index of a cell whose closure contains `p`.
    pub fn locate(&self, p: Point2) -> Option<usize> {
        self.cells
            .iter()
            .position(|c| contains(&c.shape, p) == Containment::Inside)
            .or_else(|| {
                self.cells
                    .iter()
                    .position(|c| contains(&c.shape, p) == Containment::OnBoundary)
            })
    }

    /// Piecewise-affine distance sum at `p`.
    pub fn eval(&self, p: Point2) -> Option<f64> {
        self.locate(p).map(|i| self.cells[i].functional.eval(p))
    }
}

/// Distinct carriers of the sides and the carrier index of each side.
pub fn distinct_lines(polygon: &Polygon) -> (Vec<Line>, Vec<usize>) {
    let mut lines: Vec<Line> = Vec::new();
    let mut side_line = Vec::with_capacity(polygon.len());
    for i in 0..polygon.len() {
        let l = polygon.carrier(i);
        match lines.iter().position(|m| m.coincides(&l)) {
            Some(k) => side_line.push(k),
            None => {
                side_line.push(lines.len());
                lines.push(l);
            }
        }
    }
    (lines, side_line)
}

/// Part of a convex polygon where `side * line.eval(p) >= 0`.
fn clip(cell: &[Point2], line: &Line, side: f64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(cell.len() + 1);
    let n = cell.len();
    for i in 0..n {
        let a = cell[i];
        let b = cell[(i + 1) % n];
        let (va, vb) = (side * line.eval(a), side * line.eval(b));
        if va >= -TOL {
            out.push(a);
        }
        if (va > TOL && vb < -TOL) || (va < -TOL && vb > TOL) {
            out.push(a.lerp(b, va / (va - vb)));
        }
    }
    out
}

fn shoelace(points: &[Point2]) -> f64 {
    let n = points.len();
    0.5 * (0..n)
        .map(|i| points[i].cross(points[(i + 1) % n]))
        .sum::<f64>()
}

fn mean(points: &[Point2]) -> Point2 {
    points.iter().fold(Point2::ORIGIN, |a, &p| a + p) * (1.0 / points.len() as f64)
}

fn convex_hull(mut points: Vec<Point2>) -> Vec<Point2> {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    points.dedup_by(|a, b| a.distance(*b) <= TOL);
    if points.len() < 3 {
        return points;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * points.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(points.iter())
        } else {
            Box::new(points.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if (b - a).cross(p - b) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Distance-sum functional on a cell: every side of `polygon` contributes
/// its own term, with the sign it has at the cell's centroid.
pub fn cell_functional(polygon: &Polygon, cell: &PartitionCell) -> AffineFunctional2 {
    functional_at(polygon, cell.shape.centroid())
}

fn functional_at(polygon: &Polygon, anchor: Point2) -> AffineFunctional2 {
    let lines: Vec<BoundaryLine> = (0..polygon.len())
        .map(|i| BoundaryLine::anchored(polygon.carrier(i), anchor))
        .collect();
    AffineFunctional2::from_lines(&lines)
}

/// Shared positive-length segment of two convex cells on a common carrier.
fn shared_edge(a: &Polygon, b: &Polygon) -> Option<(Line, (Point2, Point2))> {
    for (p, q) in a.edges() {
        let la = Line::through(p, q).ok()?;
        for (r, s) in b.edges() {
            let Ok(lb) = Line::through(r, s) else {
                continue;
            };
            if !la.coincides(&lb) {
                continue;
            }
            let dir = (q - p) * (1.0 / p.distance(q));
            let t = |x: Point2| (x - p).dot(dir);
            let (r0, r1) = (t(r).min(t(s)), t(r).max(t(s)));
            let lo = r0.max(0.0);
            let hi = r1.min(p.distance(q));
            if hi - lo > TOL {
                return Some((la, (p + dir * lo, p + dir * hi)));
            }
        }
    }
    None
}

/// Splits a concave polygon into convex cells of its carrier arrangement.
pub fn partition(polygon: &Polygon) -> Result<Partition> {
    let polygon = orient_ccw(polygon)?;
    if is_convex(&polygon).verdict != Convexity::Concave {
        return Err(Error::NotConcave);
    }
    let (lines, side_line) = distinct_lines(&polygon);
    let bounds = polygon.bounds();
    let min_area = 1e-12 * bounds.diagonal().powi(2);

    let mut pieces: Vec<Vec<Point2>> = vec![bounds.corners().to_vec()];
    for line in &lines {
        pieces = pieces
            .into_iter()
            .flat_map(|cell| [clip(&cell, line, 1.0), clip(&cell, line, -1.0)])
            .filter(|c| c.len() >= 3 && shoelace(c) > min_area)
            .collect();
    }
    pieces.retain(|c| contains(&polygon, mean(c)) == Containment::Inside);

    let mut shapes = pieces
        .into_iter()
        .map(Polygon::new)
        .collect::<Result<Vec<_>>>()?;

    // Union neighbours that sit on the same side of every carrier.
    let mut unmerged_pairs: Vec<(Polygon, Polygon)> = Vec::new();
    'merge: loop {
        for i in 0..shapes.len() {
            for j in i + 1..shapes.len() {
                let (a, b) = (&shapes[i], &shapes[j]);
                if SignVector::at(&lines, a.centroid()) != SignVector::at(&lines, b.centroid())
                    || shared_edge(a, b).is_none()
                {
                    continue;
                }
                let hull = convex_hull([a.vertices(), b.vertices()].concat());
                let total = a.area() + b.area();
                if (shoelace(&hull) - total).abs() <= TOL * total {
                    let merged = Polygon::new(hull)?;
                    shapes.swap_remove(j);
                    shapes[i] = merged;
                    continue 'merge;
                }
                if !unmerged_pairs.iter().any(|(x, y)| x == a && y == b) {
                    log::warn!("same-sign neighbour cells have a non-convex union; kept split");
                    unmerged_pairs.push((a.clone(), b.clone()));
                }
            }
        }
        break;
    }

    shapes.sort_by(|a, b| {
        let (ca, cb) = (a.centroid(), b.centroid());
        ca.x.total_cmp(&cb.x).then(ca.y.total_cmp(&cb.y))
    });

    let cells: Vec<PartitionCell> = shapes
        .into_iter()
        .map(|shape| {
            let c = shape.centroid();
            PartitionCell {
                sign_vector: SignVector::at(&lines, c),
                functional: functional_at(&polygon, c),
                shape,
            }
        })
        .collect();

    let mut adjacency = Vec::new();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if let Some((line, edge)) = shared_edge(&cells[i].shape, &cells[j].shape) {
                let flipped_line = lines
                    .iter()
                    .position(|l| l.coincides(&line))
                    .expect("cell edges lie on side carriers");
                adjacency.push(Adjacency {
                    cells: (i, j),
                    flipped_line,
                    shared_edge: edge,
                });
            }
        }
    }
    let index_of = |s: &Polygon| cells.iter().position(|c| &c.shape == s);
    let unmerged = unmerged_pairs
        .iter()
        .filter_map(|(a, b)| Some((index_of(a)?, index_of(b)?)))
        .collect();

    Ok(Partition {
        lines,
        side_line,
        cells,
        adjacency,
        unmerged,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeighborCheck {
    pub cells: (usize, usize),
    pub flipped_line: usize,
    pub differing_entries: Vec<usize>,
    /// Largest deviation of `f_a - f_b` from `2 m epsilon_a l` over gradient
    /// components and constant.
    pub functional_residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NeighborReport {
    pub pairs: Vec<NeighborCheck>,
    pub violations: Vec<String>,
}

impl NeighborReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that neighbours differ in exactly the carrier of their shared
/// edge, and that their functionals differ by twice that carrier's terms.
pub fn neighbor_check(partition: &Partition) -> NeighborReport {
    let mut report = NeighborReport::default();
    for adj in &partition.adjacency {
        let (a, b) = (&partition.cells[adj.cells.0], &partition.cells[adj.cells.1]);
        let differing = a.sign_vector.differences(&b.sign_vector);
        let line = partition.lines[adj.flipped_line];
        let m = partition.multiplicity(adj.flipped_line) as f64;
        let e = a.sign_vector.signs[adj.flipped_line].value();
        let expected_grad = line.normal() * (2.0 * m * e);
        let expected_const = 2.0 * m * e * line.gamma;
        let dg = a.functional.grad - b.functional.grad - expected_grad;
        let dc = a.functional.constant - b.functional.constant - expected_const;
        let residual = dg.x.abs().max(dg.y.abs()).max(dc.abs());

        if differing != [adj.flipped_line] {
            report.violations.push(format!(
                "cells {:?}: sign vectors differ at {:?}, shared edge lies on line {}",
                adj.cells, differing, adj.flipped_line
            ));
        }
        if residual > TOL * (1.0 + expected_const.abs()) {
            report.violations.push(format!(
                "cells {:?}: functional difference off by {residual:e}",
                adj.cells
            ));
        }
        report.pairs.push(NeighborCheck {
            cells: adj.cells,
            flipped_line: adj.flipped_line,
            differing_entries: differing,
            functional_residual: residual,
        });
    }
    report
}

/// Unit step from `origin` along the isosum direction of `cell`, turned to
/// point into the cell; `None` if that direction runs along `edge_dir`.
fn step_into(cell: &PartitionCell, origin: Point2, edge_dir: Point2) -> Option<Point2> {
    let toward = cell.shape.centroid() - origin;
    let normal = edge_dir.perp();
    let inward = if normal.dot(toward) < 0.0 {
        -normal
    } else {
        normal
    };
    let dir = match classify(&cell.functional, TOL).direction() {
        Some(d) => d,
        None => toward.normalized()?,
    };
    if dir.cross(edge_dir).abs() <= 1e-6 {
        return None;
    }
    Some(if dir.dot(inward) < 0.0 { -dir } else { dir })
}

fn push_inside(cell: &PartitionCell, origin: Point2, dir: Point2) -> Option<Point2> {
    let inradius = boundary_clearance(&cell.shape, cell.shape.centroid());
    let mut t = 1e-3 * inradius;
    for _ in 0..60 {
        let q = origin + dir * t;
        if contains(&cell.shape, q) == Containment::Inside {
            return Some(q);
        }
        t *= 0.5;
    }
    None
}

/// Three non-collinear interior points with equal distance sums: the
/// midpoint of an interior cell edge and a step from it along each
/// neighbour's isosum direction.
pub fn equal_sum_triple(polygon: &Polygon) -> Result<[Point2; 3]> {
    let part = partition(polygon)?;
    let diag = polygon.bounds().diagonal();
    for adj in &part.adjacency {
        let (a, b) = (&part.cells[adj.cells.0], &part.cells[adj.cells.1]);
        let (e0, e1) = adj.shared_edge;
        let p = e0.lerp(e1, 0.5);
        let Some(edge_dir) = (e1 - e0).normalized() else {
            continue;
        };
        let (Some(da), Some(db)) = (step_into(a, p, edge_dir), step_into(b, p, edge_dir)) else {
            continue;
        };
        let (Some(qa), Some(qb)) = (push_inside(a, p, da), push_inside(b, p, db)) else {
            continue;
        };
        let sums = [p, qa, qb].map(|x| direct_distance_sum(polygon, x));
        let equal = sums
            .iter()
            .all(|s| (s - sums[0]).abs() <= TOL * (1.0 + sums[0].abs()));
        let area = 0.5 * (qa - p).cross(qb - p).abs();
        if equal && area > 1e-12 * diag * diag {
            return Ok([p, qa, qb]);
        }
    }
    Err(Error::NoInteriorEdge)
}
