//! Deterministic SVG rendering of scattering diagrams and tropical curves.
//!
//! The viewBox is computed from the finite points of the object plus a 10%
//! margin; unbounded walls are clipped to the box, rays get arrowheads, and
//! curve vertices are labeled with their refined multiplicities.

use num_traits::ToPrimitive;

use crate::curve::TropicalCurve;
use crate::diagram::ScatterDiagram;
use crate::geom::{Support, SupportKind};
use crate::rat::Rat;

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Canvas {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
    body: String,
}

impl Canvas {
    fn new(points: &[(f64, f64)]) -> Self {
        let mut min_x = f64::INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for (x, y) in points {
            min_x = min_x.min(*x);
            min_y = min_y.min(*y);
            max_x = max_x.max(*x);
            max_y = max_y.max(*y);
        }
        if !min_x.is_finite() {
            (min_x, min_y, max_x, max_y) = (-1.0, -1.0, 1.0, 1.0);
        }
        // degenerate boxes get unit size, then a 10% margin all around
        if max_x - min_x < 1e-9 {
            min_x -= 0.5;
            max_x += 0.5;
        }
        if max_y - min_y < 1e-9 {
            min_y -= 0.5;
            max_y += 0.5;
        }
        let mx = 0.1 * (max_x - min_x);
        let my = 0.1 * (max_y - min_y);
        Canvas {
            min_x: min_x - mx,
            min_y: min_y - my,
            max_x: max_x + mx,
            max_y: max_y + my,
            body: String::new(),
        }
    }

    /// Flip the y axis so the mathematical orientation matches the screen.
    fn tx(&self, x: f64) -> f64 {
        x
    }

    fn ty(&self, y: f64) -> f64 {
        self.max_y + self.min_y - y
    }

    fn segment(&mut self, a: (f64, f64), b: (f64, f64), class: &str) {
        self.body.push_str(&format!(
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" class=\"{}\"/>\n",
            self.tx(a.0),
            self.ty(a.1),
            self.tx(b.0),
            self.ty(b.1),
            class
        ));
    }

    fn arrow(&mut self, a: (f64, f64), b: (f64, f64), class: &str) {
        self.body.push_str(&format!(
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" class=\"{}\" marker-end=\"url(#tip)\"/>\n",
            self.tx(a.0),
            self.ty(a.1),
            self.tx(b.0),
            self.ty(b.1),
            class
        ));
    }

    fn dot(&mut self, p: (f64, f64)) {
        self.body.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\" class=\"vertex\"/>\n",
            self.tx(p.0),
            self.ty(p.1),
            0.008 * self.width().max(self.height())
        ));
    }

    fn label(&mut self, p: (f64, f64), text: &str) {
        self.body.push_str(&format!(
            "  <text x=\"{:.4}\" y=\"{:.4}\" class=\"label\">{}</text>\n",
            self.tx(p.0) + 0.01 * self.width(),
            self.ty(p.1) - 0.01 * self.height(),
            text
        ));
    }

    fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    /// Clip `base + t dir` to the box; returns entry and exit points. For
    /// rays only `t >= 0` is kept.
    fn clip(&self, base: (f64, f64), dir: (f64, f64), ray: bool) -> Option<((f64, f64), (f64, f64))> {
        let mut t0 = f64::NEG_INFINITY;
        let mut t1 = f64::INFINITY;
        for (p, d, lo, hi) in [
            (base.0, dir.0, self.min_x, self.max_x),
            (base.1, dir.1, self.min_y, self.max_y),
        ] {
            if d.abs() < 1e-12 {
                if p < lo || p > hi {
                    return None;
                }
            } else {
                let (a, b) = ((lo - p) / d, (hi - p) / d);
                let (a, b) = (a.min(b), a.max(b));
                t0 = t0.max(a);
                t1 = t1.min(b);
            }
        }
        if ray {
            t0 = t0.max(0.0);
        }
        if t0 >= t1 {
            return None;
        }
        Some((
            (base.0 + t0 * dir.0, base.1 + t0 * dir.1),
            (base.0 + t1 * dir.0, base.1 + t1 * dir.1),
        ))
    }

    fn finish(self, title: &str) -> String {
        let w = self.width();
        let h = self.height();
        let font = 0.03 * w.max(h);
        let stroke = 0.004 * w.max(h);
        format!(
            concat!(
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\">\n",
                "  <title>{}</title>\n",
                "  <defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" ",
                "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\">",
                "<path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n",
                "  <style>line{{stroke:#333;stroke-width:{:.5}}}",
                ".ray{{stroke:#b03030}}.axisline{{stroke:#3050a0}}.edge{{stroke:#207040}}",
                ".vertex{{fill:#000}}",
                "text{{font-family:monospace;font-size:{:.5}px;fill:#222}}</style>\n",
                "{}",
                "</svg>\n"
            ),
            self.min_x, self.min_y, w, h, title, stroke, font, self.body
        )
    }
}

fn support_points(s: &Support) -> (f64, f64) {
    (f(&s.base.x), f(&s.base.y))
}

/// Render a scattering diagram: initial lines, scattered rays with
/// arrowheads and direction annotations.
pub fn render_diagram(diagram: &ScatterDiagram) -> String {
    let mut pts: Vec<(f64, f64)> = diagram
        .walls
        .iter()
        .map(|w| support_points(&w.support))
        .collect();
    pts.extend(
        diagram
            .points
            .keys()
            .map(|p| (f(&p.x), f(&p.y))),
    );
    let mut canvas = Canvas::new(&pts);
    for wall in &diagram.walls {
        let base = support_points(&wall.support);
        let dir = (wall.support.dir.a as f64, wall.support.dir.b as f64);
        let is_ray = wall.support.kind == SupportKind::Ray;
        if let Some((a, b)) = canvas.clip(base, dir, is_ray) {
            if is_ray {
                canvas.arrow(a, b, "ray");
                canvas.label(b, &format!("{}", wall.dir_vec));
            } else {
                canvas.segment(a, b, "axisline");
            }
        }
    }
    for p in diagram.points.keys() {
        canvas.dot((f(&p.x), f(&p.y)));
    }
    canvas.finish("scattering diagram")
}

/// Render a tropical curve: bounded edges, incoming ends, the outgoing ray,
/// and vertex labels `[m]_q`.
pub fn render_curve(curve: &TropicalCurve) -> String {
    let pts: Vec<(f64, f64)> = curve
        .vertices
        .iter()
        .map(|v| (f(&v.point.x), f(&v.point.y)))
        .collect();
    let mut canvas = Canvas::new(&pts);
    for (i, v) in curve.vertices.iter().enumerate() {
        let here = (f(&v.point.x), f(&v.point.y));
        for (child, dir) in [(v.left_from, v.left_dir), (v.right_from, v.right_dir)] {
            match child {
                Some(c) => {
                    let cp = &curve.vertices[c].point;
                    canvas.segment((f(&cp.x), f(&cp.y)), here, "edge");
                }
                None => {
                    // unbounded incoming end: extends from infinity along -dir
                    if let Some((a, b)) =
                        canvas.clip(here, (-dir.a as f64, -dir.b as f64), true)
                    {
                        canvas.segment(a, b, "edge");
                    }
                }
            }
        }
        if i == curve.root {
            let dir = (v.out_dir.a as f64, v.out_dir.b as f64);
            if let Some((a, b)) = canvas.clip(here, dir, true) {
                canvas.arrow(a, b, "ray");
            }
        }
    }
    for (i, v) in curve.vertices.iter().enumerate() {
        let here = (f(&v.point.x), f(&v.point.y));
        canvas.dot(here);
        canvas.label(here, &format!("[{}]_q", curve.vertex_multiplicity(i)));
    }
    canvas.finish("tropical curve")
}

/// Render a collection of supports with labels (merged direction views).
pub fn render_supports(walls: &[(Support, String)]) -> String {
    let pts: Vec<(f64, f64)> = walls.iter().map(|(s, _)| support_points(s)).collect();
    let mut canvas = Canvas::new(&pts);
    for (support, label) in walls {
        let base = support_points(support);
        let dir = (support.dir.a as f64, support.dir.b as f64);
        let is_ray = support.kind == SupportKind::Ray;
        if let Some((a, b)) = canvas.clip(base, dir, is_ray) {
            if is_ray {
                canvas.arrow(a, b, "ray");
                canvas.label(b, label);
            } else {
                canvas.segment(a, b, "axisline");
                canvas.label(b, label);
            }
        }
    }
    canvas.finish("diagram")
}

/// Empty-diagram placeholder: the coordinate axes only.
pub fn render_axes() -> String {
    let mut canvas = Canvas::new(&[(-1.0, -1.0), (1.0, 1.0)]);
    canvas.segment((-1.1, 0.0), (1.1, 0.0), "axisline");
    canvas.segment((0.0, -1.1), (0.0, 1.1), "axisline");
    canvas.finish("empty diagram")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::perturb_and_saturate;
    use crate::factorize::commutator_lines;
    use crate::lattice::LatticeVec;

    #[test]
    fn diagram_svg_deterministic() {
        let d = perturb_and_saturate(&commutator_lines(1, 1), 1, 7).unwrap();
        let a = render_diagram(&d);
        let b = render_diagram(&d);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        // two lines plus one ray: three drawn walls
        assert_eq!(a.matches("<line").count(), 3);
        assert!(a.contains("marker-end"));
    }

    #[test]
    fn curve_svg_labels_multiplicity() {
        let (_, curves) = crate::curve::enumerate_curves(
            &[LatticeVec::X, LatticeVec::Y],
            &[vec![2], vec![1]],
            5,
        )
        .unwrap();
        let svg = render_curve(&curves[0]);
        assert!(svg.contains("[2]_q"));
    }

    #[test]
    fn axes_svg() {
        assert!(render_axes().contains("<svg"));
    }
}
