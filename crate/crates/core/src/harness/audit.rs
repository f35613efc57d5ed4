//! Directions where section or slab volumes can fail to be analytic.

use std::f64::consts::TAU;

use crate::error::{GeomError, Result};
use crate::geom::Point;
use crate::polygon::ConvexPolygon;
use crate::support_fn::{Direction, SupportFunction};

/// Breakpoints closer than this to a shared-point direction are rejected.
pub const COROLLARY_CLEARANCE: f64 = 1e-6;
const ROOT_SCAN: usize = 4096;

fn dedup_directions(mut dirs: Vec<Direction>, tol: f64) -> Vec<Direction> {
    dirs.sort_by(|a, b| a.theta().total_cmp(&b.theta()));
    let mut out: Vec<Direction> = Vec::with_capacity(dirs.len());
    for d in dirs {
        if out.iter().all(|o| o.angular_distance(d) > tol) {
            out.push(d);
        }
    }
    out
}

/// Breakpoints of `h` together with both normals of every edge of `P` and
/// `Q`: the directions at which a chord parameter `(h − ⟨u, ξ⟩)/⟨ℓ, ξ⟩` has
/// a vanishing denominator or `h` changes its analytic piece.
pub fn nonanalytic_direction_audit(p: &ConvexPolygon, q: &ConvexPolygon, h: &SupportFunction) -> Vec<Direction> {
    let mut dirs: Vec<Direction> = h.breakpoints().iter().map(|b| b.direction).collect();
    for e in p.edges().chain(q.edges()) {
        let n = Direction::from_vector(e.dir.perp());
        dirs.push(n);
        dirs.push(n.opposite());
    }
    dedup_directions(dirs, 1e-12)
}

/// Points where an edge of `P` crosses an edge of `Q` at a nonzero angle.
pub fn boundary_crossings(p: &ConvexPolygon, q: &ConvexPolygon, tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for e in p.edges() {
        for f in q.edges() {
            let denom = e.dir.det(f.dir);
            if denom.abs() <= tol {
                continue;
            }
            let offset = f.base - e.base;
            let s = offset.det(f.dir) / denom;
            let t = offset.det(e.dir) / denom;
            if (-tol..=e.length + tol).contains(&s) && (-tol..=f.length + tol).contains(&t) {
                let x = e.base + e.dir * s;
                if out.iter().all(|o| !o.approx_eq(x, tol)) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Directions `ξ` whose supporting line `⟨x, ξ⟩ = h(ξ)` passes through `u`,
/// i.e. the roots of `h(θ) − ⟨u, ξ(θ)⟩`, found by sign changes on a uniform
/// scan refined by bisection.
pub fn lines_through(h: &SupportFunction, u: Point) -> Vec<Direction> {
    let g = |t: f64| {
        let d = Direction::new(t);
        h.evaluate(d) - u.dot(d.unit())
    };
    let step = TAU / ROOT_SCAN as f64;
    let mut roots = Vec::new();
    for k in 0..ROOT_SCAN {
        let (mut a, mut b) = (k as f64 * step, (k + 1) as f64 * step);
        let (mut ga, gb) = (g(a), g(b));
        if ga == 0.0 {
            roots.push(Direction::new(a));
            continue;
        }
        if ga.signum() == gb.signum() {
            continue;
        }
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            let gm = g(m);
            if gm.signum() == ga.signum() {
                a = m;
                ga = gm;
            } else {
                b = m;
            }
        }
        roots.push(Direction::new(0.5 * (a + b)));
    }
    dedup_directions(roots, 1e-12)
}

/// All directions whose supporting line contains a common boundary point of
/// `P` and `Q`.
pub fn shared_point_directions(p: &ConvexPolygon, q: &ConvexPolygon, h: &SupportFunction, tol: f64) -> Vec<Direction> {
    let dirs = boundary_crossings(p, q, tol)
        .into_iter()
        .flat_map(|u| lines_through(h, u))
        .collect();
    dedup_directions(dirs, 1e-12)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryReport {
    pub crossings: Vec<Point>,
    pub shared_directions: Vec<Direction>,
    /// Smallest angular distance from a breakpoint to a shared direction.
    pub clearance: f64,
}

/// Checks that `h` is analytic at every direction whose supporting line
/// passes through a common boundary point of `P` and `Q`, which is what the
/// piecewise extension of the slab uniqueness statement requires.
pub fn validate_corollary(p: &ConvexPolygon, q: &ConvexPolygon, h: &SupportFunction, tol: f64) -> Result<CorollaryReport> {
    let crossings = boundary_crossings(p, q, tol);
    let shared = shared_point_directions(p, q, h, tol);
    let mut clearance = f64::INFINITY;
    for b in h.breakpoints() {
        for s in &shared {
            let gap = b.direction.angular_distance(*s);
            if gap <= COROLLARY_CLEARANCE {
                return Err(GeomError::BreakpointAtSharedPoint {
                    breakpoint: b.direction.theta(),
                    direction: s.theta(),
                });
            }
            clearance = clearance.min(gap);
        }
    }
    Ok(CorollaryReport {
        crossings,
        shared_directions: shared,
        clearance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support_fn::TrigPolynomial;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn poly(v: &[(f64, f64)]) -> ConvexPolygon {
        let pts: Vec<Point> = v.iter().map(|&p| p.into()).collect();
        ConvexPolygon::from_vertices(&pts).unwrap()
    }

    fn thetas(d: &[Direction]) -> Vec<f64> {
        d.iter().map(|d| d.theta()).collect()
    }

    #[test]
    fn square_audit_is_the_axes() {
        let s = poly(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]);
        let got = thetas(&nonanalytic_direction_audit(&s, &s, &SupportFunction::disk(0.5)));
        let want = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
        assert_eq!(got.len(), 4);
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn figure_q_audit_has_its_edge_normals() {
        let q = poly(&[(1.0, 4.0), (3.0, 2.0), (3.0, -4.0), (-3.0, -4.0), (-3.0, 4.0)]);
        let got = nonanalytic_direction_audit(&q, &q, &SupportFunction::disk(0.77));
        // five edges, two normals each; the axis-parallel pairs coincide
        assert_eq!(got.len(), 6);
        for e in q.edges() {
            let n = Direction::from_vector(e.dir.perp());
            for d in [n, n.opposite()] {
                assert!(got.iter().any(|g| g.angular_distance(d) < 1e-12));
            }
        }
        assert!(got.iter().any(|g| (g.theta() - FRAC_PI_4).abs() < 1e-12));
    }

    #[test]
    fn single_piece_adds_no_breakpoints() {
        let s = poly(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]);
        let h = SupportFunction::analytic(TrigPolynomial::sine(4, 0.1));
        assert_eq!(nonanalytic_direction_audit(&s, &s, &h).len(), 4);
    }

    #[test]
    fn tangent_lines_through_a_point() {
        // tangents from (2, 0) to the unit circle touch at θ = ±π/3
        let dirs = lines_through(&SupportFunction::disk(1.0), Point::new(2.0, 0.0));
        let got = thetas(&dirs);
        assert_eq!(got.len(), 2);
        assert!((got[0] - PI / 3.0).abs() < 1e-12);
        assert!((got[1] - 5.0 * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn crossings_of_square_and_diamond() {
        let s = poly(&[(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)]);
        let d = poly(&[(1.5, 0.0), (0.0, 1.5), (-1.5, 0.0), (0.0, -1.5)]);
        let x = boundary_crossings(&s, &d, 1e-9);
        assert_eq!(x.len(), 8);
        assert!(x.iter().any(|p| p.approx_eq(Point::new(1.0, 0.5), 1e-12)));
    }
}
