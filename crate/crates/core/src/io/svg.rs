//! SVG rendering of a routed layout.

use std::fmt::Write as _;

use crate::geometry::Point;
use crate::layout::Layout;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Pixels per grid unit.
    pub scale: u32,
    /// Vertex circle radius in pixels.
    pub radius: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            scale: 40,
            radius: 9,
        }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Renders vertices as labelled circles and edges as polylines. Bundled
/// edges draw their own source-to-bend leg; the shared bend-to-target leg is
/// emitted once per bundle. Output bytes depend only on the inputs.
pub fn emit_svg(layout: &Layout, labels: &[String], options: &SvgOptions) -> String {
    let scale = options.scale as i64;
    let coords = layout.coords();
    let px = |p: Point| format!("{},{}", p.x * scale, p.y * scale);
    let polyline = |out: &mut String, class: &str, pts: &[Point], arrow: bool| {
        let points: Vec<String> = pts.iter().map(|&p| px(p)).collect();
        let _ = writeln!(
            out,
            r#"<polyline class="{class}" points="{}"{}/>"#,
            points.join(" "),
            if arrow {
                r#" marker-end="url(#arrow)""#
            } else {
                ""
            }
        );
    };

    let max_x = coords
        .placements()
        .iter()
        .map(|p| p.point.x)
        .max()
        .unwrap_or(0);
    let max_y = coords
        .placements()
        .iter()
        .map(|p| p.point.y)
        .max()
        .unwrap_or(0);
    let (width, height) = ((max_x + 2) * scale, (max_y + 1) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" markerUnits="userSpaceOnUse" markerWidth="10" markerHeight="10" refX="{}" refY="5" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
        10 + options.radius
    );
    let _ = writeln!(
        out,
        r##"<g class="edges" fill="none" stroke="#333" stroke-width="1.5">"##
    );
    let bundle_of = layout.bundle_of_edge();
    for (i, e) in layout.edges().iter().enumerate() {
        let class = match e.class {
            crate::decomposition::EdgeClass::Path => "path",
            crate::decomposition::EdgeClass::Cross => "cross",
        };
        let pts = e.polyline(coords);
        match bundle_of[i] {
            Some(_) => polyline(&mut out, class, &pts[..2], false),
            None => polyline(&mut out, class, &pts, true),
        }
    }
    for b in layout.bundles() {
        polyline(&mut out, "bundle", &[b.bend, coords.point(b.target)], true);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<g class="vertices" font-family="sans-serif" font-size="10" text-anchor="middle">"##
    );
    for (v, pl) in coords.placements().iter().enumerate() {
        let (cx, cy) = (pl.point.x * scale, pl.point.y * scale);
        let _ = writeln!(
            out,
            r##"<circle cx="{cx}" cy="{cy}" r="{}" fill="#fff" stroke="#000"/>"##,
            options.radius
        );
        let _ = writeln!(
            out,
            r#"<text x="{cx}" y="{}">{}</text>"#,
            cy + 3,
            escape(&labels[v])
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
