//! Deterministic SVG drawing of a diagram: the black polygon outline,
//! filled black points, hollow white points, and labels.

use std::fmt::Write;

use galeforge::{Color, Diagram};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const RADIUS: f64 = 5.0;

pub fn render(x: &Diagram) -> String {
    let pts: Vec<(f64, f64)> = x.points().iter().map(|p| (p.position.x.to_f64(), p.position.y.to_f64())).collect();
    let (min_x, max_x) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
    let (min_y, max_y) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
    let span = (max_x - min_x).max(max_y - min_y);
    let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };
    // centre the drawing and flip y so counterclockwise reads as usual
    let off_x = (SIZE - (max_x - min_x) * scale) / 2.0;
    let off_y = (SIZE - (max_y - min_y) * scale) / 2.0;
    let map = |(px, py): (f64, f64)| (off_x + (px - min_x) * scale, SIZE - off_y - (py - min_y) * scale);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let outline: Vec<String> = x
        .black_cycle()
        .iter()
        .map(|&i| {
            let (sx, sy) = map(pts[i]);
            format!("{sx:.2},{sy:.2}")
        })
        .collect();
    let _ = writeln!(s, r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="1"/>"#, outline.join(" "));
    for (i, p) in x.points().iter().enumerate() {
        let (sx, sy) = map(pts[i]);
        let fill = match p.color {
            Color::Black => "black",
            Color::White => "white",
        };
        let _ = writeln!(
            s,
            r#"  <circle cx="{sx:.2}" cy="{sy:.2}" r="{RADIUS}" fill="{fill}" stroke="black" stroke-width="1.5"/>"#
        );
        let _ = writeln!(
            s,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            sx + RADIUS + 2.0,
            sy - RADIUS - 2.0,
            p.label
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use galeforge::construct::build_diagram;
    use galeforge::trees::enumerate_trees;

    #[test]
    fn base_diagram_has_three_filled_and_one_hollow_point() {
        let (x, _) = build_diagram(&enumerate_trees(3).unwrap()[0]).unwrap();
        let svg = render(&x);
        assert_eq!(svg.matches(r#"fill="black" stroke"#).count(), 3);
        assert_eq!(svg.matches(r#"fill="white" stroke"#).count(), 1);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg, render(&x));
    }

    #[test]
    fn every_point_appears_once() {
        let (x, _) = build_diagram(&enumerate_trees(7).unwrap()[3]).unwrap();
        let svg = render(&x);
        assert_eq!(svg.matches("<circle").count(), x.len());
        for p in x.points() {
            assert_eq!(svg.matches(&format!(">{}</text>", p.label)).count(), 1);
        }
    }
}
