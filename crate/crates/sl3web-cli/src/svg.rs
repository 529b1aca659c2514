use sl3web::{build_arrangement, Color, MDiagram};
use std::fmt::Write;

const STEP: f64 = 10.0;
const MARGIN: f64 = 10.0;

/// Arcs as semicircles over boundary points at integer abscissae, crossings
/// marked in green.
pub fn render(d: &MDiagram) -> String {
    let len = (3 * d.n()) as f64;
    let x = |t: f64| MARGIN + STEP * t;
    let width = x(len + 1.0);
    let height = STEP * (len + 1.0) / 2.0 + 2.0 * MARGIN;
    let base = height - MARGIN;
    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#).unwrap();
    writeln!(s, r#"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="black" stroke-width="0.5"/>"#, x(0.5), x(len + 0.5)).unwrap();
    writeln!(s, r#"<g fill="none" stroke-width="1">"#).unwrap();
    for arc in d.arcs() {
        let (a, b) = (x(arc.start as f64), x(arc.end as f64));
        let r = (b - a) / 2.0;
        let color = match arc.color {
            Color::Red => "red",
            Color::Blue => "blue",
        };
        writeln!(s, r#"<path d="M {a} {base} A {r} {r} 0 0 1 {b} {base}" stroke="{color}"/>"#).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, r#"<g fill="green">"#).unwrap();
    let arcs = d.arcs();
    for c in build_arrangement(d).crossings() {
        let cx = *c.x.numer() as f64 / *c.x.denom() as f64;
        let arc = arcs[c.red_arc];
        let (mid, r) = ((arc.start + arc.end) as f64 / 2.0, (arc.end - arc.start) as f64 / 2.0);
        let cy = (r * r - (cx - mid) * (cx - mid)).max(0.0).sqrt();
        writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="1.5"/>"#, x(cx), base - STEP * cy).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    s.push_str("</svg>\n");
    s
}
