//! Monte-Carlo comparison of the affine functionals with direct distance
//! sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{
    direct_distance_sum, distance_profile, distance_profile3, functional2, functional3,
};
use crate::geometry::{is_convex, Convexity, Polygon, Polyhedron};
use crate::partition::{partition, Partition};
use crate::sampling::{map_indexed, polygon_sample, polyhedron_sample, Execution};

/// Scaled residuals `|V_affine - V_direct| / (1 + |V_direct|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub samples: u64,
    pub seed: u64,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
}

impl ResidualSummary {
    fn from_residuals(residuals: &[f64], seed: u64, tolerance: f64) -> Self {
        // Sequential reduction keeps the summary independent of thread count.
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        let mean_residual = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().sum::<f64>() / residuals.len() as f64
        };
        ResidualSummary {
            samples: residuals.len() as u64,
            seed,
            max_residual,
            mean_residual,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

fn scaled(affine: f64, direct: f64) -> f64 {
    (affine - direct).abs() / (1.0 + direct.abs())
}

/// Convex polygons use the global functional, concave ones their partition.
pub fn check_polygon(
    polygon: &Polygon,
    samples: u64,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> Result<ResidualSummary> {
    match is_convex(polygon).verdict {
        Convexity::Convex => check_convex_polygon(polygon, samples, seed, tol, exec),
        Convexity::Concave => {
            let part = partition(polygon)?;
            Ok(check_partition(polygon, &part, samples, seed, tol, exec))
        }
        Convexity::Degenerate => Err(Error::DegenerateInput("polygon has zero area".into())),
    }
}

pub fn check_convex_polygon(
    polygon: &Polygon,
    samples: u64,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> Result<ResidualSummary> {
    let f = functional2(polygon)?;
    let residuals = map_indexed(samples, exec, |i| {
        let p = polygon_sample(polygon, seed, i);
        let direct = distance_profile(polygon, p)
            .expect("sample is interior")
            .total;
        scaled(f.eval(p), direct)
    });
    Ok(ResidualSummary::from_residuals(&residuals, seed, tol))
}

/// Piecewise functional of a concave polygon against direct sums to every
/// side carrier.
pub fn check_partition(
    polygon: &Polygon,
    part: &Partition,
    samples: u64,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> ResidualSummary {
    let residuals = map_indexed(samples, exec, |i| {
        let p = polygon_sample(polygon, seed, i);
        match part.eval(p) {
            Some(v) => scaled(v, direct_distance_sum(polygon, p)),
            None => f64::INFINITY,
        }
    });
    ResidualSummary::from_residuals(&residuals, seed, tol)
}

pub fn check_polyhedron(
    poly: &Polyhedron,
    samples: u64,
    seed: u64,
    tol: f64,
    exec: Execution,
) -> Result<ResidualSummary> {
    let f = functional3(poly)?;
    let residuals = map_indexed(samples, exec, |i| {
        let p = polyhedron_sample(poly, seed, i);
        let direct = distance_profile3(poly, p)
            .expect("sample is interior")
            .total;
        scaled(f.eval(p), direct)
    });
    Ok(ResidualSummary::from_residuals(&residuals, seed, tol))
}
