//! Planar and spatial primitives.

mod line;
mod point;
mod polygon;
mod polyhedron;

pub use line::{
    signed_inward_distance, signed_inward_distance3, BoundaryLine, BoundaryPlane, Line, Plane, Sign,
};
pub use point::{Bounds2, Bounds3, Point2, Point3};
pub(crate) use polygon::point_segment_distance;
pub use polygon::{
    boundary_line_of_edge, boundary_lines, contains, is_convex, orient_ccw, Containment, Convexity,
    ConvexityReport, Polygon,
};
pub use polyhedron::{
    boundary_plane_of_face, contains_convex, cuboid, rhombic_pyramid, right_prism, Polyhedron,
};

/// Absolute tolerance for predicates on unit-normal quantities.
pub const TOL: f64 = 1e-9;
