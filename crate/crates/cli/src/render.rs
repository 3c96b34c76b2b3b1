use std::collections::HashMap;
use std::fmt::Write;

use boroczky::boroczky::{build_config, incidence_report};
use boroczky::projective::ProjLine;
use boroczky::symmetry::orbit_decompose;
use serde_json::{json, Value};

use crate::{Outcome, Tag};

pub const DEFAULT_RADIUS: f64 = 2.2;
const PIXELS: u32 = 640;

pub struct Segment {
    pub index: usize,
    pub ends: [(f64, f64); 2],
    pub dotted: bool,
}

pub struct Marker {
    pub x: f64,
    pub y: f64,
    pub orbit_size: Option<usize>,
}

pub struct Scene {
    pub n: usize,
    pub radius: f64,
    pub segments: Vec<Segment>,
    pub markers: Vec<Marker>,
}

/// Real coefficients of a line defined over a real subfield, up to scale.
fn real_coeffs(l: &ProjLine) -> [f64; 3] {
    let z = l.coeffs().clone().map(|c| c.embed_numeric());
    let big = *z
        .iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("three entries");
    z.map(|c| (c / big).re)
}

/// The part of `a x + b y + c = 0` inside `[-r, r]^2`.
fn clip(l: [f64; 3], r: f64) -> Option<[(f64, f64); 2]> {
    let [a, b, c] = l;
    let eps = 1e-9 * r;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    for s in [-r, r] {
        if b.abs() > 1e-12 {
            hits.push((s, -(a * s + c) / b));
        }
        if a.abs() > 1e-12 {
            hits.push((-(b * s + c) / a, s));
        }
    }
    hits.retain(|&(x, y)| x.abs() <= r + eps && y.abs() <= r + eps);
    let mut best: Option<([(f64, f64); 2], f64)> = None;
    for (i, p) in hits.iter().enumerate() {
        for q in &hits[i + 1..] {
            let d = (p.0 - q.0).hypot(p.1 - q.1);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some(([*p, *q], d));
            }
        }
    }
    best.filter(|(_, d)| *d > eps).map(|(s, _)| s)
}

pub fn scene(n: usize, radius: f64) -> Outcome<Scene> {
    let c = build_config(n).tag("boroczky")?;
    let r = incidence_report(&c).tag("projplane")?;
    let dotted = if n.is_multiple_of(3) {
        c.mirror_line_indices()
    } else {
        Vec::new()
    };
    let segments = c
        .lines
        .iter()
        .enumerate()
        .filter_map(|(i, l)| {
            clip(real_coeffs(l), radius).map(|ends| Segment {
                index: i,
                ends,
                dotted: dotted.contains(&i),
            })
        })
        .collect();
    let triple = r.triple_points();
    let sizes: HashMap<_, usize> = if n.is_multiple_of(3) {
        orbit_decompose(&triple)
            .tag("symmetry")?
            .iter()
            .flat_map(|o| o.points.iter().map(move |p| (p.key(), o.size())))
            .collect()
    } else {
        HashMap::new()
    };
    let markers = triple
        .iter()
        .filter(|p| !p.coords()[2].is_zero())
        .map(|p| {
            let c = p.coords();
            let z = c[2].embed_numeric();
            Marker {
                x: (c[0].embed_numeric() / z).re,
                y: (c[1].embed_numeric() / z).re,
                orbit_size: sizes.get(&p.key()).copied(),
            }
        })
        .collect();
    Ok(Scene {
        n,
        radius,
        segments,
        markers,
    })
}

fn style(size: Option<usize>) -> (&'static str, &'static str) {
    match size {
        Some(1) => ("orbit-1", "#c0392b"),
        Some(3) => ("orbit-3", "#2471a3"),
        Some(6) => ("orbit-6", "#1e8449"),
        _ => ("orbit-none", "#000000"),
    }
}

impl Scene {
    pub fn to_svg(&self) -> String {
        let r = self.radius;
        let w = r / 250.0;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PIXELS}" height="{PIXELS}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
            -r,
            -r,
            2.0 * r,
            2.0 * r
        );
        let _ = writeln!(s, "  <title>B{} configuration</title>", self.n);
        let _ = writeln!(
            s,
            r##"  <rect class="background" x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="#ffffff"/>"##,
            -r,
            -r,
            2.0 * r,
            2.0 * r
        );
        let _ = writeln!(
            s,
            r##"  <circle class="unit-circle" cx="0" cy="0" r="1" fill="none" stroke="#888888" stroke-width="{w:.6}"/>"##
        );
        let _ = writeln!(s, r#"  <g class="lines">"#);
        for seg in &self.segments {
            let [(x1, y1), (x2, y2)] = seg.ends;
            let dash = if seg.dotted {
                format!(r#" stroke-dasharray="{:.6} {:.6}""#, 2.0 * w, 4.0 * w)
            } else {
                String::new()
            };
            let class = if seg.dotted {
                "config-line mirror"
            } else {
                "config-line"
            };
            let _ = writeln!(
                s,
                r##"    <line class="{class}" data-index="{}" x1="{x1:.6}" y1="{:.6}" x2="{x2:.6}" y2="{:.6}" stroke="#000000" stroke-width="{w:.6}"{dash}/>"##,
                seg.index, -y1, -y2
            );
        }
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(s, r#"  <g class="points">"#);
        for m in &self.markers {
            let (class, color) = style(m.orbit_size);
            let _ = writeln!(
                s,
                r#"    <circle class="triple-point {class}" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{color}"/>"#,
                m.x,
                -m.y,
                4.0 * w
            );
        }
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(
            s,
            r#"  <g class="legend" font-family="sans-serif" font-size="{:.6}">"#,
            12.0 * w
        );
        let mut y = -r + 16.0 * w;
        let _ = writeln!(
            s,
            r#"    <text x="{:.6}" y="{y:.6}">n = {}, {} triple points</text>"#,
            -r + 8.0 * w,
            self.n,
            self.markers.len()
        );
        let sizes: Vec<Option<usize>> = {
            let mut v: Vec<Option<usize>> = self.markers.iter().map(|m| m.orbit_size).collect();
            v.sort();
            v.dedup();
            v
        };
        for size in sizes.into_iter().flatten() {
            y += 16.0 * w;
            let (_, color) = style(Some(size));
            let _ = writeln!(
                s,
                r#"    <circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{color}"/>"#,
                -r + 12.0 * w,
                y - 4.0 * w,
                4.0 * w
            );
            let _ = writeln!(
                s,
                r#"    <text x="{:.6}" y="{y:.6}">orbit of size {size}</text>"#,
                -r + 20.0 * w
            );
        }
        let _ = writeln!(s, "  </g>");
        let _ = writeln!(s, "</svg>");
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "radius": self.radius,
            "lines": self.segments.iter().map(|g| json!({
                "index": g.index,
                "from": [g.ends[0].0, g.ends[0].1],
                "to": [g.ends[1].0, g.ends[1].1],
                "dotted": g.dotted,
            })).collect::<Vec<_>>(),
            "points": self.markers.iter().map(|m| json!({ "x": m.x, "y": m.y, "orbit_size": m.orbit_size })).collect::<Vec<_>>(),
        })
    }
}
