//! SVG figures of planar certificates.

use std::fmt::Write;

use helly::certify::{CertificateKind, Configuration};
use helly::exactgeom::rational::to_f64;
use helly::exactgeom::CorePolytope;
use helly::format::CertificateFile;
use helly::pointsets::Window;
use helly::{Error, Result};

/// Pixels per unit.
pub const SCALE: f64 = 40.0;
const MARGIN: f64 = 1.0;

type P = (f64, f64);

fn cross(o: P, a: P, b: P) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counterclockwise hull of approximate points, for drawing only.
fn hull(mut pts: Vec<P>) -> Vec<P> {
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut h: Vec<P> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let seq: Vec<P> = if pass == 0 { pts.clone() } else { pts.iter().rev().copied().collect() };
        for p in seq {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], p) <= 0.0 {
                h.pop();
            }
            h.push(p);
        }
        h.pop();
    }
    h
}

/// Clips a polygon to `a·x ≤ b`.
fn clip(poly: &[P], a: P, b: f64) -> Vec<P> {
    let f = |p: P| a.0 * p.0 + a.1 * p.1 - b;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fp, fq) = (f(p), f(q));
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
        }
    }
    out
}

fn points_of(cfg: &Configuration) -> Vec<P> {
    cfg.points.iter().map(|p| {
        let a = p.approx();
        (a[0], a[1])
    }).collect()
}

fn face_polygon(cfg: &Configuration, w: &Window) -> Vec<P> {
    let (x0, y0) = (w.lower[0] as f64 - MARGIN, w.lower[1] as f64 - MARGIN);
    let (x1, y1) = (w.upper[0] as f64 + MARGIN, w.upper[1] as f64 + MARGIN);
    let mut poly = vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    for h in &cfg.halfspaces {
        poly = clip(&poly, (to_f64(&h.normal[0]), to_f64(&h.normal[1])), to_f64(&h.offset));
    }
    poly
}

fn polygon(out: &mut String, pts: &[P], style: &str, to: &dyn Fn(P) -> P) {
    let list: Vec<String> = pts.iter().map(|&p| {
        let (x, y) = to(p);
        format!("{x:.2},{y:.2}")
    }).collect();
    let _ = writeln!(out, r##"  <polygon points="{}" {style}/>"##, list.join(" "));
}

/// Draws the background `S`-points of the window, the configuration and its
/// hull, and the core for Hoffman certificates.
pub fn render_svg(cert: &CertificateFile) -> Result<String> {
    let cfg = &cert.configuration;
    let d = cfg.descriptor.dim();
    if d != 2 {
        return Err(Error::Invalid(format!("only planar certificates can be drawn, this one has dimension {d}")));
    }
    let mut extent: Vec<P> = points_of(cfg);
    let window = match &cert.metadata.window {
        Some(w) => w.clone(),
        None => {
            let xs: Vec<f64> = extent.iter().map(|p| p.0).collect();
            let ys: Vec<f64> = extent.iter().map(|p| p.1).collect();
            let lo = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min).floor() as i64 - 1;
            let hi = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;
            if xs.is_empty() {
                Window::cube(2, -3, 3)
            } else {
                Window::new(vec![lo(&xs), lo(&ys)], vec![hi(&xs), hi(&ys)])?
            }
        }
    };
    extent.push((window.lower[0] as f64, window.lower[1] as f64));
    extent.push((window.upper[0] as f64, window.upper[1] as f64));
    let min_x = extent.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_x = extent.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let min_y = extent.iter().map(|p| p.1).fold(f64::INFINITY, f64::min) - MARGIN;
    let max_y = extent.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max) + MARGIN;
    let (width, height) = ((max_x - min_x) * SCALE, (max_y - min_y) * SCALE);
    let to = move |p: P| ((p.0 - min_x) * SCALE, (max_y - p.1) * SCALE);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" data-scale="{SCALE}">"##
    );
    let _ = writeln!(out, r##"  <rect width="100%" height="100%" fill="white"/>"##);

    if cfg.descriptor.is_discrete() {
        for q in cfg.descriptor.enumerate(&window)? {
            let a = q.approx();
            let (x, y) = to((a[0], a[1]));
            let _ = writeln!(out, r##"  <circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="#999999"/>"##);
        }
    }

    match cfg.kind {
        CertificateKind::FacePolytope => {
            let poly = face_polygon(cfg, &window);
            polygon(&mut out, &poly, r##"fill="#cfe3f7" stroke="#1f5f9f" stroke-width="2""##, &to);
        }
        _ => {
            let h = hull(points_of(cfg));
            polygon(&mut out, &h, r##"fill="#cfe3f7" fill-opacity="0.6" stroke="#1f5f9f" stroke-width="2""##, &to);
            if cfg.kind == CertificateKind::Hoffman && cfg.points.len() >= 2 {
                let core = CorePolytope::new(&cfg.points)?;
                let vs: Vec<P> = core.vertices_approx()?.iter().map(|v| (v[0], v[1])).collect();
                let style = r##"fill="#f7c9c9" stroke="#a02020" stroke-width="2""##;
                match vs.len() {
                    0 => {}
                    1 => {
                        let (x, y) = to(vs[0]);
                        let _ = writeln!(out, r##"  <circle cx="{x:.2}" cy="{y:.2}" r="4" {style}/>"##);
                    }
                    _ => polygon(&mut out, &hull(vs), style, &to),
                }
            }
            for p in points_of(cfg) {
                let (x, y) = to(p);
                let _ = writeln!(out, r##"  <circle cx="{x:.2}" cy="{y:.2}" r="5" fill="#1f5f9f"/>"##);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
