//! Seeded generators for randomized trials.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::error::{GeomError, Result};
use crate::geom::Point;
use crate::polygon::ConvexPolygon;
use crate::sections::hedgehog_inside;
use crate::support_fn::{SupportFunction, TrigPolynomial};
use crate::tolerance::ToleranceConfig;

const MAX_ATTEMPTS: usize = 10_000;
const CONTAINMENT_SAMPLES: usize = 512;

/// Counterclockwise convex hull (Andrew's monotone chain), collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Point, a: Point, b: Point| (a - o).det(b - o);
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn accept(pts: &[Point], h: &SupportFunction, tol: &ToleranceConfig) -> Option<ConvexPolygon> {
    let hull = convex_hull(pts);
    let p = ConvexPolygon::from_vertices(&hull).ok()?;
    (p.len() == hull.len() && hedgehog_inside(&p, h, CONTAINMENT_SAMPLES, tol)).then_some(p)
}

/// `k` random points on a circle of radius `R ∈ [2, 4]`, hulled; resampled
/// until the hull is strictly convex with `k` vertices and contains `h`.
pub fn circle_polygon<R: Rng>(rng: &mut R, k: usize, h: &SupportFunction, tol: &ToleranceConfig) -> Result<ConvexPolygon> {
    for _ in 0..MAX_ATTEMPTS {
        let r = rng.gen_range(2.0..=4.0);
        let pts: Vec<Point> = (0..k)
            .map(|_| {
                let a: f64 = rng.gen_range(0.0..TAU);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Some(p) = accept(&pts, h, tol) {
            return Ok(p);
        }
    }
    Err(GeomError::InvalidArgument(format!(
        "no {k}-gon containing the hedgehog after {MAX_ATTEMPTS} attempts"
    )))
}

/// Origin-symmetric `2·k_half`-gon with vertices `±v` on a circle of radius
/// `R ∈ [2, 4]`.
pub fn symmetric_polygon<R: Rng>(rng: &mut R, k_half: usize, h: &SupportFunction, tol: &ToleranceConfig) -> Result<ConvexPolygon> {
    for _ in 0..MAX_ATTEMPTS {
        let r = rng.gen_range(2.0..=4.0);
        let gens: Vec<Point> = (0..k_half)
            .map(|_| {
                let a: f64 = rng.gen_range(0.0..PI);
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let pts: Vec<Point> = gens.iter().copied().chain(gens.iter().map(|&g| -g)).collect();
        if let Some(p) = accept(&pts, h, tol) {
            return Ok(p);
        }
    }
    Err(GeomError::InvalidArgument(format!(
        "no symmetric {}-gon containing the hedgehog after {MAX_ATTEMPTS} attempts",
        2 * k_half
    )))
}

/// Moves vertex `index` by `delta`, keeping the vertex count.
pub fn displace_vertex(p: &ConvexPolygon, index: usize, delta: Point) -> Result<ConvexPolygon> {
    let mut pts = p.vertices().to_vec();
    pts[index] += delta;
    let q = ConvexPolygon::from_vertices(&pts)?;
    if q.len() != p.len() {
        return Err(GeomError::Degenerate("displacement merged a vertex".into()));
    }
    Ok(q)
}

/// A hexagon containing `h` and a copy with one vertex pushed by `step` in a
/// direction transversal to both adjacent edges (|sin| ≥ 0.2 against each).
pub fn perturbed_pair<R: Rng>(rng: &mut R, h: &SupportFunction, step: f64, tol: &ToleranceConfig) -> Result<(ConvexPolygon, ConvexPolygon)> {
    let p = circle_polygon(rng, 6, h, tol)?;
    let n = p.len();
    for _ in 0..MAX_ATTEMPTS {
        let i = rng.gen_range(0..n);
        let a: f64 = rng.gen_range(0.0..TAU);
        let dir = Point::new(a.cos(), a.sin());
        let v = p.vertices();
        let incoming = (v[i] - v[(i + n - 1) % n]).normalized().unwrap();
        let outgoing = (v[(i + 1) % n] - v[i]).normalized().unwrap();
        if dir.det(incoming).abs() < 0.2 || dir.det(outgoing).abs() < 0.2 {
            continue;
        }
        if let Ok(q) = displace_vertex(&p, i, dir * step) {
            if hedgehog_inside(&q, h, CONTAINMENT_SAMPLES, tol) {
                return Ok((p, q));
            }
        }
    }
    Err(GeomError::InvalidArgument("no admissible displacement".into()))
}

/// Two distinct origin-symmetric polygons, each with 2–4 vertex pairs.
pub fn symmetric_pair<R: Rng>(rng: &mut R, h: &SupportFunction, tol: &ToleranceConfig) -> Result<(ConvexPolygon, ConvexPolygon)> {
    for _ in 0..MAX_ATTEMPTS {
        let kp = rng.gen_range(2..=4);
        let kq = rng.gen_range(2..=4);
        let p = symmetric_polygon(rng, kp, h, tol)?;
        let q = symmetric_polygon(rng, kq, h, tol)?;
        if !p.same_set(&q, 1e-9) {
            return Ok((p, q));
        }
    }
    Err(GeomError::InvalidArgument("could not draw distinct polygons".into()))
}

/// A positive trigonometric polynomial with up to three small harmonics.
pub fn trig_support<R: Rng>(rng: &mut R) -> SupportFunction {
    let degree = rng.gen_range(0..=3);
    let cos = (1..=degree)
        .map(|k| rng.gen_range(-0.1..0.1) / (k * k) as f64)
        .collect();
    let sin = (1..=degree)
        .map(|k| rng.gen_range(-0.1..0.1) / (k * k) as f64)
        .collect();
    SupportFunction::analytic(TrigPolynomial::new(rng.gen_range(0.3..1.0), cos, sin))
}
