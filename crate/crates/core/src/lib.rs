//! Distance-sum (Viviani) functionals for polygons and convex polyhedra.
//!
//! For a convex region the sum of distances from an interior point to the
//! side carriers is an affine function `V`. This crate builds `V`, decides
//! whether it is constant (the CVS property), clips its level sets,
//! partitions concave polygons into convex cells with one affine piece each,
//! detects polygon symmetries and checks the predictions they make, and
//! exposes the linear-program view of the triangle case. Every affine form
//! can be checked against direct distance sums over seeded random samples.

pub mod error;
pub mod functional;
pub mod geometry;
pub mod lp;
pub mod oracle;
pub mod partition;
pub mod sampling;
pub mod symmetry;

pub use error::{Error, Result};
pub use functional::{
    classify, distance_profile, distance_profile3, four_point_cvs_test, functional2, functional3,
    isosum_segment, three_point_cvs_test, Affine, AffineFunctional2, AffineFunctional3,
    Classification, Classification2, Classification3, DistanceProfile, PointTestVerdict,
};
pub use geometry::{Point2, Point3, Polygon, Polyhedron, TOL};
