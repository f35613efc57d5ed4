//! Supporting-line chords and slab intersections of convex polygons.

use crate::error::{GeomError, Result};
use crate::geom::{det2, Point};
use crate::polygon::{clip_chain, ConvexPolygon, Keep};
use crate::support_fn::{Direction, SupportFunction, SupportingLine};
use crate::tolerance::ToleranceConfig;

/// How a line passing within tolerance of a polygon vertex is treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VertexPolicy {
    /// Compute the intersection anyway; a line touching only a vertex
    /// yields a zero-length chord.
    #[default]
    Collapse,
    /// Return [`Chord::DegenerateVertexTouch`] so the caller can skip the direction.
    Report,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SectionConfig {
    pub tol: ToleranceConfig,
    pub vertex_policy: VertexPolicy,
}

impl SectionConfig {
    pub fn report() -> Self {
        Self {
            vertex_policy: VertexPolicy::Report,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Chord {
    Segment(Segment),
    Empty,
    DegenerateVertexTouch,
}

impl Chord {
    pub fn length(&self) -> Option<f64> {
        match self {
            Chord::Segment(s) => Some(s.length()),
            Chord::Empty => Some(0.0),
            Chord::DegenerateVertexTouch => None,
        }
    }
}

fn touches_vertex(p: &ConvexPolygon, line: &SupportingLine, tol: f64) -> bool {
    p.vertices().iter().any(|&v| line.contains(v, tol))
}

/// Orders the extreme points along the line by their `ξ⊥` coordinate.
fn span(line: &SupportingLine, pts: &[Point]) -> Option<Segment> {
    let by_coord = |a: &&Point, b: &&Point| line.coordinate(**a).total_cmp(&line.coordinate(**b));
    let start = *pts.iter().min_by(by_coord)?;
    let end = *pts.iter().max_by(by_coord)?;
    Some(Segment { start, end })
}

/// `P ∩ H` by solving `⟨u + ℓ s, ξ⟩ = offset` on each edge:
/// `p = u + ℓ (offset − ⟨u, ξ⟩) / ⟨ℓ, ξ⟩`.
///
/// Edges with `|⟨ℓ, ξ⟩| < tol` are skipped; an edge lying on the line is still
/// picked up through its two neighbours.
pub fn chord(p: &ConvexPolygon, line: &SupportingLine, cfg: &SectionConfig) -> Chord {
    let tol = cfg.tol.geometric;
    if cfg.vertex_policy == VertexPolicy::Report && touches_vertex(p, line, tol) {
        return Chord::DegenerateVertexTouch;
    }
    let xi = line.direction.unit();
    let mut hits = Vec::with_capacity(4);
    for e in p.edges() {
        let along = e.dir.dot(xi);
        if along.abs() < tol {
            continue;
        }
        let s = (line.offset - e.base.dot(xi)) / along;
        if s >= -tol && s <= e.length + tol {
            hits.push(e.base + e.dir * s.clamp(0.0, e.length));
        }
    }
    match span(line, &hits) {
        Some(seg) => Chord::Segment(seg),
        None => Chord::Empty,
    }
}

/// `P ∩ H` recovered from the thin slab `|⟨x, ξ⟩ − offset| ≤ w`, `w = tol`.
///
/// The clipped strip has two vertices on each boundary line; since polygon
/// edges are straight, the chord endpoints are the midpoints of the
/// corresponding upper and lower crossings.
pub fn chord_by_clipping(p: &ConvexPolygon, line: &SupportingLine, cfg: &SectionConfig) -> Chord {
    let w = cfg.tol.geometric;
    if touches_vertex(p, line, w) {
        return match cfg.vertex_policy {
            VertexPolicy::Report => Chord::DegenerateVertexTouch,
            VertexPolicy::Collapse => collapse_by_clipping(p, line, w),
        };
    }
    let d = line.direction;
    let upper = clip_chain(p.vertices(), d, line.offset + w, Keep::Below);
    let strip = clip_chain(&upper, d, line.offset - w, Keep::Above);
    let (mut hi, mut lo) = (Vec::new(), Vec::new());
    for v in strip {
        if line.residual(v) > 0.0 {
            hi.push(v);
        } else {
            lo.push(v);
        }
    }
    match (span(line, &hi), span(line, &lo)) {
        (Some(a), Some(b)) => Chord::Segment(Segment {
            start: a.start.midpoint(b.start),
            end: a.end.midpoint(b.end),
        }),
        _ => Chord::Empty,
    }
}

/// Vertex-touching fallback: the line's own one-sided clip, whose vertices on
/// the line bound the chord.
fn collapse_by_clipping(p: &ConvexPolygon, line: &SupportingLine, w: f64) -> Chord {
    let below = clip_chain(p.vertices(), line.direction, line.offset, Keep::Below);
    let on: Vec<Point> = below.into_iter().filter(|&v| line.contains(v, w)).collect();
    match span(line, &on) {
        Some(seg) => Chord::Segment(seg),
        None => Chord::Empty,
    }
}

/// `vol₁(P ∩ H(ξ))` for the supporting line of `h` at `d`.
pub fn chord_length(
    p: &ConvexPolygon,
    h: &SupportFunction,
    d: Direction,
    cfg: &SectionConfig,
) -> Result<f64> {
    chord(p, &h.supporting_line(d), cfg)
        .length()
        .ok_or(GeomError::DegenerateDirection { theta: d.theta() })
}

/// The region `lower ≤ ⟨x, ξ⟩ ≤ upper`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slab {
    pub direction: Direction,
    pub lower: f64,
    pub upper: f64,
}

impl Slab {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: Point, tol: f64) -> bool {
        let t = x.dot(self.direction.unit());
        t >= self.lower - tol && t <= self.upper + tol
    }
}

/// `S(ξ) = {−h(−ξ) ≤ ⟨x, ξ⟩ ≤ h(ξ)}`.
pub fn slab_region(h: &SupportFunction, d: Direction) -> Result<Slab> {
    let upper = h.evaluate(d);
    let lower = -h.evaluate(d.opposite());
    if upper < lower - h.tolerances().geometric {
        return Err(GeomError::InvertedSlab {
            theta: d.theta(),
            lower,
            upper,
        });
    }
    Ok(Slab {
        direction: d,
        lower,
        upper,
    })
}

pub fn slab_clip(p: &ConvexPolygon, slab: &Slab) -> Option<ConvexPolygon> {
    p.clip_halfplane(slab.direction, slab.upper, Keep::Below)?
        .clip_halfplane(slab.direction, slab.lower, Keep::Above)
}

/// `vol₂(P ∩ S(ξ))`.
pub fn slab_area(
    p: &ConvexPolygon,
    h: &SupportFunction,
    d: Direction,
    _cfg: &SectionConfig,
) -> Result<f64> {
    let slab = slab_region(h, d)?;
    Ok(slab_clip(p, &slab).map_or(0.0, |c| c.area()))
}

/// Directions of the two polygon sides meeting at a boundary crossing:
/// `ell` on one polygon, `m` on the other.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgePair {
    pub ell: Point,
    pub m: Point,
}

impl EdgePair {
    pub fn new(ell: Point, m: Point) -> Self {
        Self { ell, m }
    }

    pub fn swapped(self) -> Self {
        Self {
            ell: self.m,
            m: self.ell,
        }
    }
}

/// Parameter `s` with `⟨base + s·dir, ξ⟩ = offset`.
fn chord_parameter(base: Point, dir: Point, offset: f64, xi: Point, tol: f64, theta: f64) -> Result<f64> {
    let denom = dir.dot(xi);
    if denom.abs() < tol {
        return Err(GeomError::DegenerateDirection { theta });
    }
    Ok((offset - base.dot(xi)) / denom)
}

/// Signed area of the triangle `(u, u + a·m, u + b·ℓ)` cut off by the line
/// `⟨x, ξ⟩ = offset`, in closed form:
/// `½ (offset − ⟨u, ξ⟩)² / (⟨ℓ, ξ⟩⟨m, ξ⟩) · |m, ℓ|`.
pub fn triangle_area_at(
    apex: Point,
    dirs: EdgePair,
    offset: f64,
    d: Direction,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let xi = d.unit();
    let (dl, dm) = (dirs.ell.dot(xi), dirs.m.dot(xi));
    if dl.abs() < tol.geometric || dm.abs() < tol.geometric {
        return Err(GeomError::DegenerateDirection { theta: d.theta() });
    }
    let gap = offset - apex.dot(xi);
    Ok(0.5 * gap * gap / (dl * dm) * det2(dirs.m, dirs.ell))
}

pub fn wedge_area_triangle(
    apex: Point,
    dirs: EdgePair,
    h: &SupportFunction,
    d: Direction,
    tol: &ToleranceConfig,
) -> Result<f64> {
    triangle_area_at(apex, dirs, h.evaluate(d), d, tol)
}

/// Signed area of the quadrilateral `(v, w, w + d·m, v + c·ℓ)`:
/// `½ (c |w − v, ℓ| + d |w − v, m| + c d |m, ℓ|)`.
pub fn quad_area_at(
    v: Point,
    w: Point,
    dirs: EdgePair,
    offset: f64,
    d: Direction,
    tol: &ToleranceConfig,
) -> Result<f64> {
    let xi = d.unit();
    let theta = d.theta();
    let c = chord_parameter(v, dirs.ell, offset, xi, tol.geometric, theta)?;
    let dd = chord_parameter(w, dirs.m, offset, xi, tol.geometric, theta)?;
    let wv = w - v;
    Ok(0.5 * (c * det2(wv, dirs.ell) + dd * det2(wv, dirs.m) + c * dd * det2(dirs.m, dirs.ell)))
}

pub fn wedge_area_quad(
    v: Point,
    w: Point,
    dirs: EdgePair,
    h: &SupportFunction,
    d: Direction,
    tol: &ToleranceConfig,
) -> Result<f64> {
    quad_area_at(v, w, dirs, h.evaluate(d), d, tol)
}

/// Whether every sampled support point lies strictly inside `p` with margin
/// above `tol`. Samples on non-C¹ breakpoints are skipped.
pub fn hedgehog_inside(
    p: &ConvexPolygon,
    h: &SupportFunction,
    n_samples: usize,
    tol: &ToleranceConfig,
) -> bool {
    assert!(n_samples >= 3, "need at least three samples");
    (0..n_samples).all(|k| {
        let d = Direction::new(std::f64::consts::TAU * k as f64 / n_samples as f64);
        match h.support_point(d) {
            Ok(x) => p.inner_margin(x) > tol.geometric,
            Err(_) => true,
        }
    })
}
