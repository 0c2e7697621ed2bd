//! SVG rendering of isosum level sets.
//!
//! Output is SVG 1.1 with every number printed at 9 decimals, so the same
//! input always renders to the same bytes. The y axis is flipped so the
//! picture has the usual mathematical orientation.

use std::fmt::Write as _;

use isosum_core::functional::{classify, isosum_segment, AffineFunctional2};
use isosum_core::geometry::{contains, Containment, Point2, Polygon, TOL};
use isosum_core::partition::Partition;
use isosum_core::Result;

use crate::report::fmt9;

const GRID: usize = 64;

/// What to draw level sets of.
pub enum Field<'a> {
    /// A single affine functional on a convex polygon.
    Affine(&'a AffineFunctional2),
    /// One affine piece per cell of a concave polygon.
    Piecewise(&'a Partition),
}

/// `k` levels at the quantiles `(j + 1/2) / k` of `f` over a grid of
/// interior points, clipped to the range attained at the vertices.
pub fn choose_levels(region: &Polygon, f: &AffineFunctional2, k: usize) -> Vec<f64> {
    let b = region.bounds();
    let (w, h) = (b.max.x - b.min.x, b.max.y - b.min.y);
    let mut values: Vec<f64> = (0..GRID * GRID)
        .map(|n| {
            let (i, j) = (n % GRID, n / GRID);
            Point2::new(
                b.min.x + w * (i as f64 + 0.5) / GRID as f64,
                b.min.y + h * (j as f64 + 0.5) / GRID as f64,
            )
        })
        .filter(|&p| contains(region, p) == Containment::Inside)
        .map(|p| f.eval(p))
        .collect();
    let at_vertices = region.vertices().iter().map(|&v| f.eval(v));
    let lo = at_vertices.clone().fold(f64::INFINITY, f64::min);
    let hi = at_vertices.fold(f64::NEG_INFINITY, f64::max);
    if values.is_empty() {
        return (0..k)
            .map(|j| lo + (hi - lo) * (j as f64 + 0.5) / k as f64)
            .collect();
    }
    values.sort_by(f64::total_cmp);
    (0..k)
        .map(|j| {
            let q = (j as f64 + 0.5) / k as f64;
            let idx = ((q * values.len() as f64) as usize).min(values.len() - 1);
            values[idx].clamp(lo, hi)
        })
        .collect()
}

struct Canvas {
    body: String,
    stroke: f64,
    font: f64,
}

impl Canvas {
    fn xy(p: Point2) -> (String, String) {
        (fmt9(p.x), fmt9(-p.y))
    }

    fn outline(&mut self, poly: &Polygon, class: &str, extra: &str) {
        let pts: Vec<String> = poly
            .vertices()
            .iter()
            .map(|&p| {
                let (x, y) = Canvas::xy(p);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            "  <polygon class=\"{class}\" points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"{extra}/>",
            pts.join(" "),
            fmt9(self.stroke)
        );
    }

    fn text(&mut self, at: Point2, label: &str) {
        let (x, y) = Canvas::xy(at);
        let _ = writeln!(
            self.body,
            "  <text x=\"{x}\" y=\"{y}\" font-size=\"{}\" font-family=\"sans-serif\">{label}</text>",
            fmt9(self.font)
        );
    }

    fn region(&mut self, region: &Polygon, f: &AffineFunctional2, k: usize) -> Result<()> {
        if let Some(value) = classify(f, TOL).is_cvs().then_some(f.constant) {
            self.text(region.centroid(), &format!("CVS, V={}", fmt9(value)));
            return Ok(());
        }
        for level in choose_levels(region, f, k) {
            let Some((a, b)) = isosum_segment(region, f, level)? else {
                continue;
            };
            let ((x1, y1), (x2, y2)) = (Canvas::xy(a), Canvas::xy(b));
            let _ = writeln!(
                self.body,
                "  <line class=\"isosum\" data-level=\"{}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"steelblue\" stroke-width=\"{}\"/>",
                fmt9(level),
                fmt9(self.stroke)
            );
            self.text(a.lerp(b, 0.5), &fmt9(level));
        }
        Ok(())
    }
}

/// Polygon outline plus `levels` labelled isosum segments per region.
pub fn render_svg(polygon: &Polygon, field: Field<'_>, levels: usize) -> Result<String> {
    let b = polygon.bounds();
    let (w, h) = (b.max.x - b.min.x, b.max.y - b.min.y);
    let (mx, my) = (0.05 * w, 0.05 * h);
    let diag = b.diagonal();
    let mut canvas = Canvas {
        body: String::new(),
        stroke: 0.004 * diag,
        font: 0.025 * diag,
    };

    canvas.outline(polygon, "outline", "");
    match field {
        Field::Affine(f) => canvas.region(polygon, f, levels)?,
        Field::Piecewise(part) => {
            let dash = format!(" stroke-dasharray=\"{}\"", fmt9(3.0 * canvas.stroke));
            for cell in &part.cells {
                canvas.outline(&cell.shape, "cell", &dash);
            }
            for cell in &part.cells {
                canvas.region(&cell.shape, &cell.functional, levels)?;
            }
        }
    }

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        fmt9(b.min.x - mx),
        fmt9(-b.max.y - my),
        fmt9(w + 2.0 * mx),
        fmt9(h + 2.0 * my)
    );
    out.push_str(&canvas.body);
    out.push_str("</svg>\n");
    Ok(out)
}
