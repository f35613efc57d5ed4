//! Static SVG 1.1 rendering of hedgehog envelopes.

use std::fmt::Write as _;

use hedgehog_core::{Direction, Point, SupportFunction};

const STROKE: f64 = 0.004;
const MARGIN: f64 = 0.1;

/// Envelope branches, split at breakpoints where `h′` jumps. Each piece is
/// sampled with its own polynomial so that both one-sided limits appear.
pub fn envelope_branches(h: &SupportFunction, n: usize) -> Vec<Vec<Point>> {
    let n = n.max(8);
    let pieces = h.pieces();
    let total = pieces.last().unwrap().end - pieces[0].start;
    let mut branches: Vec<Vec<Point>> = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let arc = piece.end - piece.start;
        let m = ((n as f64 * arc / total).ceil() as usize).max(2);
        for k in 0..=m {
            let t = piece.start + arc * k as f64 / m as f64;
            let d = Direction::new(t);
            let (v, dv) = (piece.poly.eval(t), piece.poly.eval_derivative(t, 1));
            let x = d.unit() * v + d.perp() * dv;
            if k > 0 || current.is_empty() {
                current.push(x);
            }
        }
        let smooth_next = h.breakpoints().get((i + 1) % pieces.len()).is_none_or(|b| b.smooth);
        if !smooth_next {
            branches.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        branches.push(current);
    }
    // with a smooth wrap-around, the last run continues into the first
    if branches.len() > 1 && h.breakpoints().first().is_some_and(|b| b.smooth) {
        let mut head = branches.remove(0);
        let tail = branches.last_mut().unwrap();
        head.remove(0);
        tail.extend(head);
    }
    branches
}

fn bounds(points: impl Iterator<Item = Point>) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

fn fmt_point(out: &mut String, p: Point) {
    // y is flipped so that the plot reads with the usual orientation
    let _ = write!(out, "{:.6},{:.6}", p.x, -p.y);
}

/// Envelope of `h` sampled at `n` directions, with the supporting lines at
/// `lines` (angles in radians) drawn across the viewport.
pub fn render_envelope(h: &SupportFunction, n: usize, lines: &[f64]) -> String {
    let branches = envelope_branches(h, n);
    let (lo, hi) = bounds(branches.iter().flatten().copied());
    let size = (hi - lo).x.max((hi - lo).y).max(1e-3);
    let pad = MARGIN * size;
    let (lo, hi) = (lo - Point::new(pad, pad), hi + Point::new(pad, pad));
    let (w, hgt) = (hi.x - lo.x, hi.y - lo.y);
    let stroke = STROKE * size;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}" width="600" height="{:.0}">"#,
        lo.x,
        -hi.y,
        w,
        hgt,
        600.0 * hgt / w
    );
    let reach = 2.0 * (w + hgt);
    for &theta in lines {
        let line = h.supporting_line(Direction::new(theta));
        let (a, b) = (line.point_at(-reach), line.point_at(reach));
        out.push_str(r##"  <line x1=""##);
        let _ = write!(out, r#"{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}""#, a.x, -a.y, b.x, -b.y);
        let _ = writeln!(out, r##" stroke="#c03030" stroke-width="{:.6}" fill="none"/>"##, stroke * 0.5);
    }
    for branch in &branches {
        out.push_str("  <polyline points=\"");
        for (i, p) in branch.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            fmt_point(&mut out, *p);
        }
        let _ = writeln!(out, r##"" stroke="#202060" stroke-width="{stroke:.6}" fill="none"/>"##);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::kinked_disk;
    use hedgehog_core::TrigPolynomial;

    #[test]
    fn analytic_envelope_is_one_closed_branch() {
        let h = SupportFunction::analytic(TrigPolynomial::sine(4, 1.0));
        let b = envelope_branches(&h, 400);
        assert_eq!(b.len(), 1);
        assert!(b[0].first().unwrap().approx_eq(*b[0].last().unwrap(), 1e-12));
    }

    #[test]
    fn disk_envelope_is_a_circle() {
        let b = envelope_branches(&SupportFunction::disk(0.77), 64);
        assert!(b[0].iter().all(|p| (p.norm() - 0.77).abs() < 1e-12));
    }

    #[test]
    fn kinks_split_the_polyline() {
        let b = envelope_branches(&kinked_disk(), 400);
        assert_eq!(b.len(), 4);
        // the envelope jumps across each kink
        for w in 0..4 {
            let end = *b[w].last().unwrap();
            let start = b[(w + 1) % 4][0];
            assert!(end.distance(start) > 0.1);
        }
    }

    #[test]
    fn svg_has_one_polyline_per_branch_and_the_overlays() {
        let svg = render_envelope(&kinked_disk(), 200, &[0.0, 1.0]);
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
    }
}
