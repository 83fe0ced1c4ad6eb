//! Cross-sections of three-dimensional fans by affine planes, drawn as SVG.
//!
//! The plane `<h, x> = c` is parametrized by the two coordinates other than
//! the first index `k` with `h_k != 0`. Cones with an unbounded slice are cut
//! off by a square frame at twice the largest vertex coordinate.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use toriq_core::{Cone, IntVec};

use crate::report::RegionOut;

type Q = BigRational;
type Point = [Q; 2];

/// Pixels per unit of the plane coordinates.
const SCALE: i64 = 100;
const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub label: String,
    pub vertices: Vec<Point>,
    pub clipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub axes: [usize; 2],
    pub frame: Q,
    pub regions: Vec<Region>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceError {
    NotThreeDimensional(usize),
    BadNormal(String),
}

impl std::fmt::Display for SliceError {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        match self {
            SliceError::NotThreeDimensional(n) => write!(f, "slice plots need a fan in rank 3, found rank {n}"),
            SliceError::BadNormal(m) => write!(f, "normal vector: {m}"),
        }
    }
}

fn q(x: &BigInt) -> Q {
    Q::from_integer(x.clone())
}

/// Affine form `a s + b t + g` on plane coordinates.
struct Form {
    a: Q,
    b: Q,
    g: Q,
}

impl Form {
    fn at(&self, p: &Point) -> Q {
        &self.a * &p[0] + &self.b * &p[1] + &self.g
    }
}

struct Plane {
    k: usize,
    axes: [usize; 2],
    h: Vec<Q>,
    c: Q,
}

impl Plane {
    fn new(h: &IntVec, c: &Q) -> Result<Plane, SliceError> {
        if h.len() != 3 {
            return Err(SliceError::BadNormal(format!("expected 3 entries, found {}", h.len())));
        }
        let k = (0..3)
            .find(|&i| !h.entries()[i].is_zero())
            .ok_or_else(|| SliceError::BadNormal("must be nonzero".into()))?;
        let axes: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        Ok(Plane { k, axes: [axes[0], axes[1]], h: h.entries().iter().map(q).collect(), c: c.clone() })
    }

    /// The restriction of `x -> <u, x>` to the plane.
    fn restrict(&self, u: &IntVec) -> Form {
        let u: Vec<Q> = u.entries().iter().map(q).collect();
        let r = &u[self.k] / &self.h[self.k];
        Form {
            a: &u[self.axes[0]] - &r * &self.h[self.axes[0]],
            b: &u[self.axes[1]] - &r * &self.h[self.axes[1]],
            g: &r * &self.c,
        }
    }

    /// Where the ray through `v` meets the plane, if it does so at a
    /// positive parameter.
    fn hit(&self, v: &IntVec) -> Option<Point> {
        let hv: Q = v.entries().iter().zip(&self.h).map(|(x, h)| q(x) * h).sum();
        if hv.is_zero() || self.c.is_zero() || hv.is_positive() != self.c.is_positive() {
            return None;
        }
        let t = &self.c / hv;
        Some([q(&v.entries()[self.axes[0]]) * &t, q(&v.entries()[self.axes[1]]) * &t])
    }
}

/// Keeps the part of a convex polygon where `f >= 0`.
fn clip(poly: &[Point], f: &Form) -> Vec<Point> {
    let mut out = Vec::new();
    for k in 0..poly.len() {
        let p = &poly[k];
        let r = &poly[(k + 1) % poly.len()];
        let (fp, fr) = (f.at(p), f.at(r));
        if !fp.is_negative() {
            out.push(p.clone());
        }
        if (fp.is_negative() && fr.is_positive()) || (fp.is_positive() && fr.is_negative()) {
            let t = &fp / (&fp - &fr);
            out.push([&p[0] + (&r[0] - &p[0]) * &t, &p[1] + (&r[1] - &p[1]) * &t]);
        }
    }
    let mut dedup: Vec<Point> = Vec::new();
    for p in out {
        if dedup.last() != Some(&p) {
            dedup.push(p);
        }
    }
    while dedup.len() > 1 && dedup.first() == dedup.last() {
        dedup.pop();
    }
    dedup
}

/// Slices each cone by `<normal, x> = level`; `labels` names the cones.
pub fn slice(cones: &[(String, Cone)], normal: &IntVec, level: &Q) -> Result<Slice, SliceError> {
    if let Some((_, c)) = cones.iter().find(|(_, c)| c.ambient_rank() != 3) {
        return Err(SliceError::NotThreeDimensional(c.ambient_rank()));
    }
    let plane = Plane::new(normal, level)?;
    let mut extent = Q::one();
    for (_, c) in cones {
        for g in c.generators() {
            if let Some(p) = plane.hit(&g) {
                for x in &p {
                    if x.abs() > extent {
                        extent = x.abs();
                    }
                }
            }
        }
    }
    let frame = extent * Q::from_integer(2.into());
    let box_: Vec<Point> = vec![
        [-frame.clone(), -frame.clone()],
        [frame.clone(), -frame.clone()],
        [frame.clone(), frame.clone()],
        [-frame.clone(), frame.clone()],
    ];
    let mut regions = Vec::new();
    for (label, c) in cones {
        let mut poly = box_.clone();
        for u in c.facets() {
            poly = clip(&poly, &plane.restrict(u));
        }
        for e in c.equations().basis() {
            poly = clip(&poly, &plane.restrict(e));
            poly = clip(&poly, &plane.restrict(&e.neg()));
        }
        if poly.is_empty() {
            continue;
        }
        let clipped = poly.iter().any(|p| p.iter().any(|x| x.abs() == frame));
        regions.push(Region { label: label.clone(), vertices: poly, clipped });
    }
    Ok(Slice { axes: plane.axes, frame, regions })
}

pub fn rational_text(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `x` rounded half away from zero to three decimals.
fn fixed(x: &Q) -> String {
    let scaled = x * Q::from_integer(1000.into());
    let r = scaled.round().to_integer();
    let neg = r.is_negative();
    let a = r.abs();
    let (whole, frac) = (&a / 1000, &a % 1000);
    let digits = format!("{whole}.{:03}", frac);
    let trimmed = digits.trim_end_matches('0').trim_end_matches('.');
    if neg && trimmed != "0" {
        format!("-{trimmed}")
    } else {
        trimmed.to_string()
    }
}

pub fn regions_out(s: &Slice) -> Vec<RegionOut> {
    s.regions
        .iter()
        .map(|r| RegionOut {
            label: r.label.clone(),
            vertices: r.vertices.iter().map(|p| [rational_text(&p[0]), rational_text(&p[1])]).collect(),
            clipped: r.clipped,
        })
        .collect()
}

fn pixel(p: &Point) -> (String, String) {
    let s = Q::from_integer(SCALE.into());
    (fixed(&(&p[0] * &s)), fixed(&(-&p[1] * &s)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn svg(s: &Slice, title: &str) -> String {
    let half = &s.frame * Q::from_integer(SCALE.into());
    let (h, w) = (fixed(&half), fixed(&(&half * Q::from_integer(2.into()))));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-{h} -{h} {w} {w}" width="{w}" height="{w}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, r##"  <rect x="-{h}" y="-{h}" width="{w}" height="{w}" fill="#ffffff"/>"##);
    let _ = writeln!(out, r##"  <line x1="-{h}" y1="0" x2="{h}" y2="0" stroke="#bbbbbb" stroke-width="1"/>"##);
    let _ = writeln!(out, r##"  <line x1="0" y1="-{h}" x2="0" y2="{h}" stroke="#bbbbbb" stroke-width="1"/>"##);
    for (k, r) in s.regions.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = r
            .vertices
            .iter()
            .map(|p| {
                let (x, y) = pixel(p);
                format!("{x},{y}")
            })
            .collect();
        match r.vertices.len() {
            1 => {
                let (x, y) = pixel(&r.vertices[0]);
                let _ = writeln!(out, r#"  <circle cx="{x}" cy="{y}" r="4" fill="{color}"/>"#);
            }
            2 => {
                let _ = writeln!(
                    out,
                    r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="3"/>"#,
                    pts.join(" ")
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    r##"  <polygon points="{}" fill="{color}" fill-opacity="0.5" stroke="#000000" stroke-width="1"/>"##,
                    pts.join(" ")
                );
            }
        }
        let n = Q::from_integer((r.vertices.len() as i64).into());
        let centre: Point = [
            r.vertices.iter().map(|p| p[0].clone()).sum::<Q>() / &n,
            r.vertices.iter().map(|p| p[1].clone()).sum::<Q>() / &n,
        ];
        let (x, y) = pixel(&centre);
        let _ = writeln!(
            out,
            r#"  <text x="{x}" y="{y}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            escape(&r.label)
        );
    }
    out.push_str("</svg>\n");
    out
}
