use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use anyhow::Result;
use positroid_lab::cluster::build_seed;
use positroid_lab::plabic::polygon_edges;
use positroid_lab::{BicoloredSubdivision, Color};

use crate::open_out;
use crate::records::parse_object;

const SIZE: f64 = 640.0;
const CENTER: f64 = SIZE / 2.0;
const RADIUS: f64 = 240.0;
const BLUE: &str = "#1f5fbf";
const RED: &str = "#c0392b";

type Pt = (f64, f64);

/// Corner `i` of the n-gon; labels run clockwise from the top.
fn corner(i: usize, n: usize, r: f64) -> Pt {
    let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * (i as f64 - 1.0) / n as f64;
    (CENTER + r * t.cos(), CENTER + r * t.sin())
}

/// Point on the circle halfway between corners `i - 1` and `i`.
fn between(i: usize, n: usize, r: f64) -> Pt {
    let t = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * (i as f64 - 1.5) / n as f64;
    (CENTER + r * t.cos(), CENTER + r * t.sin())
}

fn centroid(vs: &[usize], n: usize) -> Pt {
    let pts: Vec<Pt> = vs.iter().map(|&v| corner(v, n, RADIUS)).collect();
    let m = pts.len() as f64;
    (pts.iter().map(|p| p.0).sum::<f64>() / m, pts.iter().map(|p| p.1).sum::<f64>() / m)
}

fn mid(a: Pt, b: Pt) -> Pt {
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

fn lerp(a: Pt, b: Pt, t: f64) -> Pt {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

fn side(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn line(svg: &mut String, a: Pt, b: Pt, style: &str) {
    let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#, a.0, a.1, b.0, b.1);
}

fn dot(svg: &mut String, p: Pt, r: f64, style: &str) {
    let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" {style}/>"#, p.0, p.1);
}

fn text(svg: &mut String, p: Pt, size: u32, fill: &str, body: &str) {
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="{size}" fill="{fill}" text-anchor="middle" dominant-baseline="middle">{body}</text>"#,
        p.0, p.1
    );
}

fn polygon_points(vs: &[usize], n: usize) -> String {
    vs.iter().map(|&v| corner(v, n, RADIUS)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ")
}

/// Deterministic SVG of a subdivision: polygon on a circle, black polygons filled,
/// dual tree in black, T-dual graph in blue, diagonals labelled `area/punc`.
pub fn render_svg(s: &BicoloredSubdivision, quiver: bool) -> Result<String> {
    let n = s.n();
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif">"#
    );
    let _ = writeln!(
        svg,
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="{RED}"/></marker></defs>"#
    );
    let _ = writeln!(svg, r##"<rect width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);

    let all: Vec<usize> = (1..=n).collect();
    let _ = writeln!(svg, r##"<polygon points="{}" fill="none" stroke="#222" stroke-width="1.5"/>"##, polygon_points(&all, n));
    for p in s.black() {
        let _ = writeln!(
            svg,
            r##"<polygon points="{}" fill="#b5b5b5" stroke="#222" stroke-width="1.5"/>"##,
            polygon_points(p, n)
        );
    }
    for i in 1..=n {
        text(&mut svg, corner(i, n, RADIUS + 24.0), 16, "#000", &i.to_string());
    }

    let polys = s.polygons();
    for p in s.black() {
        for (a, b) in polygon_edges(p) {
            let (a, b) = side(a, b);
            if b - a == 1 || (a == 1 && b == n) {
                continue;
            }
            let at = lerp(mid(corner(a, n, RADIUS), corner(b, n, RADIUS)), (CENTER, CENTER), 0.06);
            let area = s.area(a, b).unwrap_or(0);
            text(&mut svg, at, 11, "#444", &format!("{area}/0"));
        }
    }

    // Dual tree: a node per polygon, a boundary vertex on each side {i, i+1}.
    let mut owner: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (idx, (_, p)) in polys.iter().enumerate() {
        for (a, b) in polygon_edges(p) {
            owner.entry(side(a, b)).or_default().push(idx);
        }
    }
    let node: Vec<Pt> = polys.iter().map(|(_, p)| centroid(p, n)).collect();
    let tree = r##"stroke="#000" stroke-width="2""##;
    for (&(a, b), owners) in &owner {
        match owners.as_slice() {
            [x, y] => line(&mut svg, node[*x], node[*y], tree),
            [x] => {
                let at = mid(corner(a, n, RADIUS), corner(b, n, RADIUS));
                line(&mut svg, node[*x], at, tree);
                dot(&mut svg, at, 3.0, r##"fill="#000""##);
            }
            _ => {}
        }
    }
    for ((color, _), &p) in polys.iter().zip(&node) {
        let style = match color {
            Color::Black => r##"fill="#000""##,
            Color::White => r##"fill="#fff" stroke="#000" stroke-width="2""##,
        };
        dot(&mut svg, p, 6.0, style);
    }

    // T-dual graph: B_i near corner i, W_t in black triangle t, boundary î between i - 1 and i.
    let t = s.canonical_triangulation();
    let bpos: Vec<Pt> = (1..=n).map(|i| corner(i, n, RADIUS * 0.9)).collect();
    let blue = format!(r#"stroke="{BLUE}" stroke-width="1.6""#);
    for i in 1..=n {
        let hat = between(i, n, RADIUS + 6.0);
        line(&mut svg, hat, bpos[i - 1], &blue);
        dot(&mut svg, hat, 2.5, &format!(r#"fill="{BLUE}""#));
    }
    let wpos: Vec<Pt> = t.black().iter().map(|tri| centroid(tri, n)).collect();
    for (tri, &w) in t.black().iter().zip(&wpos) {
        for &v in tri {
            line(&mut svg, w, bpos[v - 1], &blue);
        }
    }
    for (i, &p) in bpos.iter().enumerate() {
        dot(&mut svg, p, 4.5, &format!(r#"fill="{BLUE}""#));
        text(&mut svg, lerp(p, (CENTER, CENTER), 0.09), 10, BLUE, &format!("B{}", i + 1));
    }
    for (j, &p) in wpos.iter().enumerate() {
        let w = lerp(p, mid(p, (CENTER, CENTER)), 0.18);
        dot(&mut svg, p, 4.5, &format!(r##"fill="#fff" stroke="{BLUE}" stroke-width="1.6""##));
        text(&mut svg, (w.0, w.1 + 12.0), 10, BLUE, &format!("W{}", j + 1));
    }

    if quiver {
        let seed = build_seed(&t, None)?;
        let black = s.black();
        let pos: Vec<Pt> = seed
            .quiver
            .vertices
            .iter()
            .map(|v| lerp(mid(corner(v.arc.0, n, RADIUS), corner(v.arc.1, n, RADIUS)), centroid(&black[v.polygon], n), 0.2))
            .collect();
        for (i, j, m) in seed.quiver.arrows() {
            let (a, b) = (lerp(pos[i], pos[j], 0.12), lerp(pos[i], pos[j], 0.88));
            for _ in 0..m {
                line(&mut svg, a, b, &format!(r#"stroke="{RED}" stroke-width="1.4" marker-end="url(#arrow)""#));
            }
        }
        for (v, &p) in seed.quiver.vertices.iter().zip(&pos) {
            if v.frozen {
                let _ = writeln!(
                    svg,
                    r#"<rect x="{:.2}" y="{:.2}" width="8" height="8" fill="{RED}"/>"#,
                    p.0 - 4.0,
                    p.1 - 4.0
                );
            } else {
                dot(&mut svg, p, 4.5, &format!(r#"fill="{RED}""#));
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn cmd_render(object: &str, out: Option<&Path>, quiver: bool) -> Result<()> {
    let s = parse_object(object)?;
    let svg = render_svg(&s, quiver)?;
    let mut w = open_out(out)?;
    w.write_all(svg.as_bytes())?;
    w.flush()?;
    Ok(())
}
