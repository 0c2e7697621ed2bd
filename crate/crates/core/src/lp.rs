//! The linear-program view of a triangle.
//!
//! For a point inside triangle ABC with side distances `h_i`, the weights
//! `x_i = h_i / sum(h)` lie on the simplex face `x1 + x2 + x3 = 1`, and the
//! objective `F(x) = sum(a_i x_i)` (with `a_i` the side opposite vertex `i`)
//! satisfies `F(x) * V(P) = 2S`. `F` is constant on the face exactly when
//! the side lengths are equal.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::distance_profile;
use crate::geometry::{Point2, Polygon};

/// `maximize sum(a_i x_i)` subject to `sum(x_i) <= 1`, `x_i >= 0`, together
/// with the triangle's area.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    /// `a_1 = |BC|`, `a_2 = |CA|`, `a_3 = |AB|`.
    pub side_lengths: [f64; 3],
    pub area: f64,
}

impl LpProblem {
    pub fn objective_coeffs(&self) -> [f64; 3] {
        self.side_lengths
    }

    pub fn objective(&self, x: &SimplexPoint) -> f64 {
        self.side_lengths
            .iter()
            .zip(x.x)
            .map(|(a, xi)| a * xi)
            .sum()
    }

    /// Whether the objective is a multiple of (1, 1, 1), within `tol`
    /// relative to the longest side.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let [a, b, c] = self.side_lengths;
        let scale = a.max(b).max(c);
        (a - b).abs() <= tol * scale && (b - c).abs() <= tol * scale
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    pub x: [f64; 3],
}

fn vertices(triangle: &Polygon) -> Result<[Point2; 3]> {
    match triangle.vertices() {
        &[a, b, c] => Ok([a, b, c]),
        v => Err(Error::InvalidInput(format!(
            "expected a triangle, got {} vertices",
            v.len()
        ))),
    }
}

/// Builds the program for triangle `ABC`, taking the vertices in order.
pub fn triangle_to_lp(triangle: &Polygon) -> Result<LpProblem> {
    let [a, b, c] = vertices(triangle)?;
    let side_lengths = [b.distance(c), c.distance(a), a.distance(b)];
    let area = 0.5 * (b - a).cross(c - a).abs();
    let [x, y, z] = side_lengths;
    if area <= 0.0 || x >= y + z || y >= x + z || z >= x + y {
        return Err(Error::DegenerateInput("triangle has zero area".into()));
    }
    Ok(LpProblem { side_lengths, area })
}

/// Side distances ordered by the opposite vertex: `(h_BC, h_CA, h_AB)`.
fn opposite_distances(triangle: &Polygon, p: Point2) -> Result<([f64; 3], f64)> {
    vertices(triangle)?;
    let d = distance_profile(triangle, p)?;
    Ok(([d.distances[1], d.distances[2], d.distances[0]], d.total))
}

pub fn barycentric_normalize(triangle: &Polygon, p: Point2) -> Result<SimplexPoint> {
    let (h, total) = opposite_distances(triangle, p)?;
    Ok(SimplexPoint {
        x: h.map(|hi| hi / total),
    })
}

/// `|F(x) V(p) - 2S|` at an interior point.
pub fn check_duality(triangle: &Polygon, p: Point2) -> Result<f64> {
    let lp = triangle_to_lp(triangle)?;
    let (h, total) = opposite_distances(triangle, p)?;
    let x = SimplexPoint {
        x: h.map(|hi| hi / total),
    };
    Ok((lp.objective(&x) * total - 2.0 * lp.area).abs())
}

/// `x` with 12 significant digits, in the shortest of fixed or exponent form.
pub fn format_sig12(x: f64) -> String {
    const DIGITS: usize = 12;
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS as i32).contains(&exp) {
        let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Plain-text listing of the program; LF line endings, ASCII only.
pub fn export_lp_text(lp: &LpProblem) -> String {
    let [a1, a2, a3] = lp.side_lengths.map(format_sig12);
    let mut out = String::new();
    out.push_str("\\ triangle distance-sum program; a_i is the side opposite vertex i\n");
    let _ = writeln!(out, "\\ area: {}", format_sig12(lp.area));
    out.push_str("maximize\n");
    let _ = writeln!(out, " obj: {a1} x1 + {a2} x2 + {a3} x3");
    out.push_str("subject to\n");
    out.push_str(" simplex: x1 + x2 + x3 <= 1\n");
    out.push_str("bounds\n");
    for i in 1..=3 {
        let _ = writeln!(out, " x{i} >= 0");
    }
    out.push_str("end\n");
    out
}

/// Reads back the output of [`export_lp_text`].
pub fn parse_lp_text(text: &str) -> Result<LpProblem> {
    let bad = |msg: &str| Error::InvalidInput(format!("lp text: {msg}"));
    let mut area = None;
    let mut coeffs = None;
    for line in text.lines().map(str::trim) {
        if let Some(rest) = line.strip_prefix("\\ area:") {
            area = Some(rest.trim().parse::<f64>().map_err(|_| bad("bad area"))?);
        } else if let Some(rest) = line.strip_prefix("obj:") {
            let terms: Vec<&str> = rest.split('+').map(str::trim).collect();
            if terms.len() != 3 {
                return Err(bad("objective must have three terms"));
            }
            let mut c = [0.0; 3];
            for (i, term) in terms.iter().enumerate() {
                let (num, var) = term.split_once(' ').ok_or_else(|| bad("malformed term"))?;
                if var.trim() != format!("x{}", i + 1) {
                    return Err(bad("variables out of order"));
                }
                c[i] = num.parse().map_err(|_| bad("bad coefficient"))?;
            }
            coeffs = Some(c);
        }
    }
    match (coeffs, area) {
        (Some(side_lengths), Some(area)) => Ok(LpProblem { side_lengths, area }),
        _ => Err(bad("missing objective or area")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tri(c: &[[f64; 2]]) -> Polygon {
        Polygon::from_coords(c).unwrap()
    }

    #[test]
    fn equilateral_program() {
        let t = tri(&[[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]);
        let lp = triangle_to_lp(&t).unwrap();
        for a in lp.side_lengths {
            assert_abs_diff_eq!(a, 1.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(lp.area, 3f64.sqrt() / 4.0, epsilon = 1e-15);
        assert!(lp.is_uniform(1e-12));
    }

    #[test]
    fn three_four_five() {
        let lp = triangle_to_lp(&tri(&[[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]])).unwrap();
        assert_eq!(lp.side_lengths, [5.0, 4.0, 3.0]);
        assert_eq!(lp.area, 6.0);
        assert!(!lp.is_uniform(1e-9));
    }

    #[test]
    fn non_triangles_are_rejected() {
        let sq = tri(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(triangle_to_lp(&sq), Err(Error::InvalidInput(_))));
        let flat = Polygon::from_coords(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        assert!(matches!(flat, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn centroid_and_incenter_normalize_to_thirds() {
        let s3 = 3f64.sqrt();
        let eq = tri(&[[0.0, 0.0], [1.0, 0.0], [0.5, s3 / 2.0]]);
        let x = barycentric_normalize(&eq, Point2::new(0.5, s3 / 6.0)).unwrap();
        for xi in x.x {
            assert_abs_diff_eq!(xi, 1.0 / 3.0, epsilon = 1e-15);
        }
        // Incenter of the 3-4-5 triangle is (1, 1).
        let t = tri(&[[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]]);
        let x = barycentric_normalize(&t, Point2::new(1.0, 1.0)).unwrap();
        for xi in x.x {
            assert_abs_diff_eq!(xi, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn duality_at_equilateral_centroid() {
        let s3 = 3f64.sqrt();
        let eq = tri(&[[0.0, 0.0], [1.0, 0.0], [0.5, s3 / 2.0]]);
        assert!(check_duality(&eq, Point2::new(0.5, s3 / 6.0)).unwrap() <= 1e-12);
        assert!(matches!(
            check_duality(&eq, Point2::new(2.0, 2.0)),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn lp_text_listing() {
        let text = export_lp_text(&LpProblem {
            side_lengths: [1.0, 1.0, 1.0],
            area: 0.5,
        });
        assert!(text.contains("1 x1 + 1 x2 + 1 x3"));
        assert!(text.contains("x1 + x2 + x3 <= 1"));
        assert!(text.is_ascii());
        assert!(!text.contains('\r'));
        let text = export_lp_text(&LpProblem {
            side_lengths: [5.0, 4.0, 3.0],
            area: 6.0,
        });
        assert!(text.contains("obj: 5 x1 + 4 x2 + 3 x3"));
        assert_eq!(
            parse_lp_text(&text).unwrap(),
            LpProblem {
                side_lengths: [5.0, 4.0, 3.0],
                area: 6.0
            }
        );
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(5.0), "5");
        assert_eq!(format_sig12(0.5), "0.5");
        assert_eq!(format_sig12(3f64.sqrt() / 4.0), "0.433012701892");
        assert_eq!(format_sig12(-2.25), "-2.25");
        assert_eq!(format_sig12(1.0e15), "1e15");
        assert_eq!(format_sig12(1.5e-7), "1.5e-7");
        assert_eq!(format_sig12(123456789012.0), "123456789012");
    }
}
