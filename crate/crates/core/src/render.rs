//! DOT and SVG output. Layouts are presentational only.

use std::collections::BTreeMap;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Color, VertexId};
use crate::io::Document;

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Blue => "blue",
        Color::None => "black",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(doc: &Document) -> String {
    let g = &doc.graph;
    let mut out = String::from("graph G {\n  node [shape=circle, fontsize=10];\n");
    for (v, vx) in g.vertices().iter().enumerate() {
        let shape = if doc.anchors.contains(&v) { ", shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  {} [color={}{shape}];", quote(&vx.name), color_name(vx.color));
    }
    for e in g.edges() {
        let mut attrs = vec![format!("label={}", quote(&e.weight.to_string()))];
        if e.forbidden {
            attrs.push("style=dashed".into());
        }
        let (cu, cv) = (g.vertex(e.u).color, g.vertex(e.v).color);
        if cu == cv && cu != Color::None {
            attrs.push(format!("color={}", color_name(cu)));
        }
        let _ = writeln!(out, "  {} -- {} [{}];", quote(g.name(e.u)), quote(g.name(e.v)), attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

/// Vertex positions in the unit square. Frame documents put P1, P0 and P2
/// on horizontal bands; otherwise anchors sit on a circle. The remaining
/// vertices are placed by barycentric relaxation from seeded positions.
pub fn layout(doc: &Document, seed: u64) -> Vec<(f64, f64)> {
    let g = &doc.graph;
    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.2..0.8), rng.gen_range(0.2..0.8))).collect();
    let mut fixed = vec![false; n];
    let bands = [("P1", 0.75), ("P0", 0.5), ("P2", 0.25)];
    for (name, y) in bands {
        let Ok(edges) = doc.feature_edges(name) else { continue };
        let mut seq: Vec<VertexId> = Vec::new();
        for &e in edges {
            for v in [g.edge(e).u, g.edge(e).v] {
                if !seq.contains(&v) {
                    seq.push(v);
                }
            }
        }
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = (0.05 + 0.9 * i as f64 / (seq.len().max(2) - 1) as f64, y);
            fixed[v] = true;
        }
    }
    let ring: Vec<VertexId> = if fixed.contains(&true) {
        Vec::new()
    } else if doc.anchors.len() >= 3 {
        doc.anchors.clone()
    } else {
        (0..n).collect()
    };
    for (i, &v) in ring.iter().enumerate() {
        let t = std::f64::consts::TAU * i as f64 / ring.len() as f64;
        pos[v] = (0.5 + 0.45 * t.cos(), 0.5 - 0.45 * t.sin());
        fixed[v] = true;
    }
    let inc = g.incident_edges();
    for _ in 0..300 {
        for v in (0..n).filter(|&v| !fixed[v] && !inc[v].is_empty()) {
            let (mut x, mut y) = (0.0, 0.0);
            for &e in &inc[v] {
                let p = pos[g.edge(e).other(v)];
                x += p.0;
                y += p.1;
            }
            let d = inc[v].len() as f64;
            pos[v] = (x / d, y / d);
        }
    }
    pos
}

pub fn to_svg(doc: &Document, seed: u64) -> String {
    let g = &doc.graph;
    let pos = layout(doc, seed);
    let (w, h) = (1000.0, 800.0);
    let at = |v: VertexId| (20.0 + pos[v].0 * (w - 40.0), 20.0 + pos[v].1 * (h - 40.0));
    let mut out = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    let mut by_color: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for e in g.edges() {
        let ((x1, y1), (x2, y2)) = (at(e.u), at(e.v));
        let (cu, cv) = (g.vertex(e.u).color, g.vertex(e.v).color);
        let c = if cu == cv { color_name(cu) } else { "gray" };
        let dash = if e.forbidden { " stroke-dasharray=\"4 3\"" } else { "" };
        by_color.entry(c).or_default().push(format!(
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{c}\"{dash}><title>{}</title></line>",
            escape(&e.weight.to_string())
        ));
    }
    for lines in by_color.values() {
        for l in lines {
            out.push_str(l);
            out.push('\n');
        }
    }
    for (v, vx) in g.vertices().iter().enumerate() {
        let (x, y) = at(v);
        let r = if doc.anchors.contains(&v) { 5 } else { 3 };
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{r}\" fill=\"{}\"><title>{}</title></circle>",
            color_name(vx.color),
            escape(&vx.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fig1a;

    #[test]
    fn outputs_are_deterministic() {
        let doc = Document::from_anchored(&fig1a());
        assert_eq!(to_svg(&doc, 3), to_svg(&doc, 3));
        let dot = to_dot(&doc);
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), doc.graph.edge_count());
    }
}
