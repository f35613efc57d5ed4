//! Strictly convex polygons in counterclockwise order.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::Point;
use crate::support_fn::Direction;

/// Default absolute tolerance for polygon predicates.
pub const GEOMETRIC_TOL: f64 = 1e-9;
/// Consecutive input vertices closer than this are merged.
const DUPLICATE_TOL: f64 = 1e-12;
/// Clipped pieces with smaller area are reported as empty.
pub const SLIVER_AREA: f64 = 1e-12;

/// Signed area by the shoelace formula; positive for counterclockwise input.
pub fn shoelace_area(pts: &[Point]) -> f64 {
    if pts.len() < 3 {
        return 0.0;
    }
    let mut twice = 0.0;
    for (i, &p) in pts.iter().enumerate() {
        twice += p.det(pts[(i + 1) % pts.len()]);
    }
    0.5 * twice
}

/// The edge `u + s ℓ`, `s ∈ [0, length]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub base: Point,
    pub dir: Point,
    pub length: f64,
}

impl Edge {
    pub fn end(&self) -> Point {
        self.base + self.dir * self.length
    }

    /// Signed distance of `x` to the edge's line, positive on the inner side.
    pub fn inner_distance(&self, x: Point) -> f64 {
        self.dir.det(x - self.base)
    }
}

/// Which side of `⟨x, ξ⟩ = offset` a clip keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Keep {
    /// `⟨x, ξ⟩ ≤ offset`
    Below,
    /// `⟨x, ξ⟩ ≥ offset`
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRepr", into = "PolygonRepr")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<Point>,
}

impl TryFrom<PolygonRepr> for ConvexPolygon {
    type Error = GeomError;
    fn try_from(r: PolygonRepr) -> Result<Self> {
        ConvexPolygon::from_vertices(&r.vertices)
    }
}

impl From<ConvexPolygon> for PolygonRepr {
    fn from(p: ConvexPolygon) -> Self {
        PolygonRepr {
            vertices: p.vertices,
        }
    }
}

fn dedup_cyclic(pts: &[Point], tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts {
        if out.last().is_none_or(|q| !q.approx_eq(p, tol)) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].approx_eq(*out.last().unwrap(), tol) {
        out.pop();
    }
    out
}

/// Rotates so the lexicographically smallest vertex comes first.
fn canonical_start(mut pts: Vec<Point>) -> Vec<Point> {
    let start = pts
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    pts.rotate_left(start);
    pts
}

fn turn(prev: Point, cur: Point, next: Point) -> f64 {
    (cur - prev).det(next - cur)
}

impl ConvexPolygon {
    /// Validates and canonicalizes: clockwise input is reversed, duplicate and
    /// straight-through collinear vertices are merged, and the chain must turn
    /// left by more than the tolerance at every vertex while winding once.
    pub fn from_vertices(pts: &[Point]) -> Result<Self> {
        Self::from_vertices_with(pts, GEOMETRIC_TOL)
    }

    pub fn from_vertices_with(pts: &[Point], tol: f64) -> Result<Self> {
        if pts.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(GeomError::Degenerate("non-finite coordinate".into()));
        }
        let mut v = dedup_cyclic(pts, DUPLICATE_TOL);
        if v.len() < 3 {
            return Err(GeomError::Degenerate(format!(
                "{} distinct vertices",
                v.len()
            )));
        }
        let area = shoelace_area(&v);
        if area.abs() <= tol {
            return Err(GeomError::Degenerate("zero area".into()));
        }
        if area < 0.0 {
            v.reverse();
        }

        // merge vertices where the chain continues straight on
        loop {
            let n = v.len();
            if n < 3 {
                return Err(GeomError::Degenerate("collinear vertices".into()));
            }
            let straight = (0..n).find(|&i| {
                let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                turn(a, b, c).abs() <= tol && (b - a).dot(c - b) > 0.0
            });
            match straight {
                Some(i) => {
                    v.remove(i);
                }
                None => break,
            }
        }

        let n = v.len();
        let mut winding = 0.0;
        for i in 0..n {
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            let t = turn(a, b, c);
            if t <= tol {
                return Err(GeomError::NotConvex { index: i, turn: t });
            }
            winding += t.atan2((b - a).dot(c - b));
        }
        if (winding - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(GeomError::NotConvex { index: 0, turn: winding });
        }

        Ok(Self {
            vertices: canonical_start(v),
        })
    }

    /// Builds from a chain already known to be convex and counterclockwise
    /// (e.g. a clip result). Near-duplicates and flat vertices are dropped;
    /// `None` when what is left has area below [`SLIVER_AREA`].
    pub(crate) fn from_convex_chain(pts: &[Point]) -> Option<Self> {
        let mut v = dedup_cyclic(pts, DUPLICATE_TOL);
        let mut i = 0;
        while v.len() >= 3 && i < v.len() {
            let n = v.len();
            let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
            if turn(a, b, c) <= 1e-14 {
                v.remove(i);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        if v.len() < 3 || shoelace_area(&v) < SLIVER_AREA {
            return None;
        }
        Some(Self {
            vertices: canonical_start(v),
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        shoelace_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let length = a.distance(b);
            Edge {
                base: a,
                dir: (b - a) * (1.0 / length),
                length,
            }
        })
    }

    /// `max ⟨v, ξ⟩` over the vertices.
    pub fn support(&self, d: Direction) -> f64 {
        let xi = d.unit();
        self.vertices
            .iter()
            .map(|v| v.dot(xi))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest signed distance from `x` to an edge line (positive inside).
    pub fn inner_margin(&self, x: Point) -> f64 {
        self.edges()
            .map(|e| e.inner_distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_point(&self, x: Point, strict: bool) -> bool {
        let m = self.inner_margin(x);
        if strict {
            m > GEOMETRIC_TOL
        } else {
            m >= -GEOMETRIC_TOL
        }
    }

    /// Point reflection through the origin.
    pub fn negate(&self) -> Self {
        Self {
            vertices: canonical_start(self.vertices.iter().map(|&v| -v).collect()),
        }
    }

    /// Set equality: same vertex count and some cyclic rotation matching
    /// every coordinate within `tol`.
    pub fn same_set(&self, other: &ConvexPolygon, tol: f64) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        (0..n).any(|shift| {
            (0..n).all(|i| self.vertices[i].approx_eq(other.vertices[(i + shift) % n], tol))
        })
    }

    pub fn is_origin_symmetric(&self) -> bool {
        self.same_set(&self.negate(), GEOMETRIC_TOL)
    }

    /// Intersection with `{⟨x, ξ⟩ ≤ offset}` or `{⟨x, ξ⟩ ≥ offset}`.
    pub fn clip_halfplane(&self, d: Direction, offset: f64, keep: Keep) -> Option<ConvexPolygon> {
        let raw = clip_chain(&self.vertices, d, offset, keep);
        Self::from_convex_chain(&raw)
    }

    /// Axis-aligned bounding box as `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }
}

/// Single half-plane Sutherland–Hodgman pass over a closed vertex chain.
///
/// Returns the raw chain; duplicates may appear where the line passes through
/// a vertex.
pub(crate) fn clip_chain(pts: &[Point], d: Direction, offset: f64, keep: Keep) -> Vec<Point> {
    let xi = d.unit();
    let sign = match keep {
        Keep::Below => 1.0,
        Keep::Above => -1.0,
    };
    let side = |p: Point| sign * (p.dot(xi) - offset);
    let n = pts.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let (sa, sb) = (side(a), side(b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            let t = sa / (sa - sb);
            out.push(a + (b - a) * t);
        }
    }
    out
}
