//! Pointwise identities used by the uniqueness arguments: the first-order
//! expansion of `h` in a rotated frame, the midpoint configuration, and the
//! three-way split of two overlapping slabs.

use crate::error::Result;
use crate::geom::Point;
use crate::polygon::{ConvexPolygon, Keep};
use crate::sections::{slab_clip, slab_region, Slab};
use crate::support_fn::{Direction, SupportFunction, TrigPolynomial};
use crate::tolerance::ToleranceConfig;

/// Scales at which the first-order remainder is measured.
pub const TAYLOR_SCALES: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Accepted range for the ratio of remainders at successive scales.
pub const QUADRATIC_RATIO: (f64, f64) = (50.0, 200.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaylorRegime {
    /// The remainder vanishes identically (e.g. a disk).
    Exact,
    /// `h″ ≠ 0` dominates: the remainder shrinks by ~100 per decade.
    Quadratic,
    /// `h″` is negligible at the frame; the remainder decays faster than
    /// quadratically and only the `O(φ²)` bound is checked.
    HigherOrder,
    /// A breakpoint lies within the largest scale of the frame.
    NotAnalytic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorReport {
    pub frame: Direction,
    pub regime: TaylorRegime,
    /// `|h(φ) − h(0) − h′(0) φ|` at each of [`TAYLOR_SCALES`].
    pub residuals: [f64; 3],
    /// `residual / φ²` at each scale.
    pub fitted_c: [f64; 3],
    /// `residual(φₖ) / residual(φₖ₊₁)`.
    pub ratios: [f64; 2],
    /// `dh/dφ(0)` from the analytic derivative.
    pub slope: f64,
    /// `|slope − central difference|`.
    pub derivative_error: f64,
    /// `|slope − ⟨X, dξ/dφ⟩|` with `X` the support point at the frame.
    pub chain_rule_error: f64,
    pub decay_ok: bool,
    pub derivative_ok: bool,
}

impl TaylorReport {
    pub fn applicable(&self) -> bool {
        self.regime != TaylorRegime::NotAnalytic
    }

    pub fn passed(&self) -> bool {
        self.applicable() && self.decay_ok && self.derivative_ok
    }
}

/// `Σ k² (|aₖ| + |bₖ|)`, an upper bound for `|p″|` on the whole circle.
fn second_derivative_bound(p: &TrigPolynomial) -> f64 {
    p.cos_coeffs()
        .iter()
        .zip(p.sin_coeffs())
        .enumerate()
        .map(|(i, (a, b))| ((i + 1) * (i + 1)) as f64 * (a.abs() + b.abs()))
        .sum()
}

/// Expands `h` about `frame` in the rotated coordinate `ξ(φ) = frame rotated
/// by −φ`, which for `frame = e₂` is `ξ(φ) = (sin φ, cos φ)`.
pub fn taylor_checks(h: &SupportFunction, frame: Direction, tol: &ToleranceConfig) -> TaylorReport {
    let theta0 = frame.theta();
    let reach = TAYLOR_SCALES[0] + tol.fd_step;
    let near_break = h
        .breakpoints()
        .iter()
        .any(|b| b.direction.angular_distance(frame) <= reach);
    let at = |phi: f64| h.evaluate(Direction::new(theta0 - phi));

    let mut report = TaylorReport {
        frame,
        regime: TaylorRegime::NotAnalytic,
        residuals: [f64::NAN; 3],
        fitted_c: [f64::NAN; 3],
        ratios: [f64::NAN; 2],
        slope: f64::NAN,
        derivative_error: f64::NAN,
        chain_rule_error: f64::NAN,
        decay_ok: false,
        derivative_ok: false,
    };
    if near_break {
        return report;
    }

    let h0 = at(0.0);
    // d/dφ h(θ₀ − φ) = −h′(θ₀)
    let d1 = h.derivative(frame).expect("no breakpoint near the frame");
    let slope = -d1;
    for (k, &phi) in TAYLOR_SCALES.iter().enumerate() {
        let r = (at(phi) - h0 - slope * phi).abs();
        report.residuals[k] = r;
        report.fitted_c[k] = r / (phi * phi);
    }
    for k in 0..2 {
        report.ratios[k] = report.residuals[k] / report.residuals[k + 1];
    }

    let curvature = h.nth_derivative(frame, 2).expect("analytic at frame");
    let third = h.nth_derivative(frame, 3).expect("analytic at frame");
    // cubic / quadratic term of the remainder at the largest scale
    let cubic_share = third.abs() * TAYLOR_SCALES[0] / (3.0 * curvature.abs());

    report.regime = if report.residuals.iter().all(|&r| r <= 1e-14) {
        TaylorRegime::Exact
    } else if cubic_share <= 0.1 {
        TaylorRegime::Quadratic
    } else {
        TaylorRegime::HigherOrder
    };
    report.decay_ok = match report.regime {
        TaylorRegime::Exact => true,
        TaylorRegime::Quadratic => report
            .ratios
            .iter()
            .all(|r| (QUADRATIC_RATIO.0..=QUADRATIC_RATIO.1).contains(r)),
        TaylorRegime::HigherOrder => {
            // Lagrange remainder: |r(φ)| ≤ ½ max|h″| φ²
            let poly = &h.pieces()[h.piece_index(frame)].poly;
            let bound = 0.5 * second_derivative_bound(poly);
            report.fitted_c.iter().all(|&c| c <= bound * (1.0 + 1e-9) + 1e-9)
        }
        TaylorRegime::NotAnalytic => false,
    };

    let step = tol.fd_step;
    let fd = (at(step) - at(-step)) / (2.0 * step);
    report.slope = slope;
    report.derivative_error = (slope - fd).abs();
    report.derivative_ok = report.derivative_error <= tol.finite_difference;

    // dξ/dφ at φ = 0 is −ξ⊥(θ₀); for the e₂ frame that is e₁
    let x = h.support_point(frame).expect("analytic at frame");
    report.chain_rule_error = (x.dot(-frame.perp()) - slope).abs();
    report
}

/// Whether the support point at `d` is the midpoint of `v` and `w`.
pub fn midpoint_obstruction(
    h: &SupportFunction,
    v: Point,
    w: Point,
    d: Direction,
    tol: &ToleranceConfig,
) -> Result<bool> {
    let x = h.support_point(d)?;
    Ok(x.distance(v.midpoint(w)) <= tol.geometric)
}

/// Areas of `P ∩ S(ξ) ∩ S(e)`, `P ∩ S(ξ) \ S(e)` and `P ∩ S(e) \ S(ξ)` next
/// to the two full slab areas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlabDecomposition {
    pub both: f64,
    pub only_xi: f64,
    pub only_reference: f64,
    pub total_xi: f64,
    pub total_reference: f64,
}

impl SlabDecomposition {
    /// `total_ξ − both − only_ξ`.
    pub fn xi_defect(&self) -> f64 {
        self.total_xi - self.both - self.only_xi
    }

    pub fn reference_defect(&self) -> f64 {
        self.total_reference - self.both - self.only_reference
    }
}

fn area(p: Option<ConvexPolygon>) -> f64 {
    p.map_or(0.0, |p| p.area())
}

/// Area of `region \ slab`, as the two convex pieces beyond either boundary.
fn outside_area(region: &Option<ConvexPolygon>, slab: &Slab) -> f64 {
    let Some(r) = region else { return 0.0 };
    area(r.clip_halfplane(slab.direction, slab.upper, Keep::Above))
        + area(r.clip_halfplane(slab.direction, slab.lower, Keep::Below))
}

pub fn slab_decomposition(
    p: &ConvexPolygon,
    h: &SupportFunction,
    xi: Direction,
    reference: Direction,
) -> Result<SlabDecomposition> {
    let s_xi = slab_region(h, xi)?;
    let s_ref = slab_region(h, reference)?;
    let in_xi = slab_clip(p, &s_xi);
    let in_ref = slab_clip(p, &s_ref);
    let both = in_xi.as_ref().and_then(|r| slab_clip(r, &s_ref));
    Ok(SlabDecomposition {
        both: area(both),
        only_xi: outside_area(&in_xi, &s_ref),
        only_reference: outside_area(&in_ref, &s_xi),
        total_xi: area(in_xi),
        total_reference: area(in_ref),
    })
}
