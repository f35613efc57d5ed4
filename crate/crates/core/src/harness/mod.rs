//! Verification sweeps and the configurations they run on.

mod audit;
mod identities;
mod profile;
pub mod random;

pub use audit::{
    boundary_crossings, lines_through, nonanalytic_direction_audit, shared_point_directions,
    validate_corollary, CorollaryReport, COROLLARY_CLEARANCE,
};
pub use identities::{
    midpoint_obstruction, slab_decomposition, taylor_checks, SlabDecomposition, TaylorRegime,
    TaylorReport, QUADRATIC_RATIO, TAYLOR_SCALES,
};
pub use profile::{
    section_profile, section_profile_in, slab_profile, slab_profile_in, sweep, DirectionWindow,
    DiscrepancyProfile, ProfileKind, ProfileSample, REFINED_MAXIMA,
};

use crate::geom::Point;
use crate::polygon::ConvexPolygon;
use crate::sections::hedgehog_inside;
use crate::support_fn::SupportFunction;
use crate::tolerance::ToleranceConfig;

/// Vertices of `Q` in the slab counterexample; `P = −Q`.
pub const FIGURE1_Q: [(f64, f64); 5] = [(1.0, 4.0), (3.0, 2.0), (3.0, -4.0), (-3.0, -4.0), (-3.0, 4.0)];
pub const FIGURE1_RADIUS: f64 = 0.77;

/// Two reflected, non-symmetric pentagons around a disk: equal slab areas in
/// every direction, different sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Figure1 {
    pub p: ConvexPolygon,
    pub q: ConvexPolygon,
    pub h: SupportFunction,
}

pub fn build_figure1() -> Figure1 {
    let pts = FIGURE1_Q.map(Point::from);
    let q = ConvexPolygon::from_vertices(&pts).expect("figure polygon is convex");
    let p = q.negate();
    let h = SupportFunction::disk(FIGURE1_RADIUS);
    let tol = ToleranceConfig::default();
    assert!(hedgehog_inside(&p, &h, 4096, &tol) && hedgehog_inside(&q, &h, 4096, &tol));
    assert!(!p.same_set(&q, 1e-9));
    Figure1 { p, q, h }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_properties() {
        let f = build_figure1();
        assert!(!f.p.same_set(&f.q, 1e-9));
        assert!(!f.p.is_origin_symmetric());
        assert!(!f.q.is_origin_symmetric());
        assert!(hedgehog_inside(&f.p, &f.h, 4096, &ToleranceConfig::default()));
        assert!(f.h.is_centrally_symmetric());
        assert!(!f.h.is_trivial());
    }
}
