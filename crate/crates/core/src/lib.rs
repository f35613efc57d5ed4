//! Hedgehog envelopes of trigonometric support functions, and the chords and
//! slabs they cut from convex polygons.
//!
//! - [`support_fn`]: directions, trigonometric polynomials, piecewise support
//!   functions, support points and supporting lines.
//! - [`polygon`]: validated convex polygons, shoelace area, half-plane clipping.
//! - [`sections`]: chords `P ∩ H(ξ)`, slabs `P ∩ S(ξ)`, closed-form wedge areas.
//! - [`harness`]: direction sweeps, expansion checks and randomized trials.

pub mod error;
pub mod geom;
pub mod harness;
pub mod polygon;
pub mod sections;
pub mod support_fn;
pub mod tolerance;

pub use error::{GeomError, Result};
pub use geom::{det2, Point};
pub use polygon::{shoelace_area, ConvexPolygon, Edge, Keep};
pub use sections::{
    chord, chord_by_clipping, chord_length, hedgehog_inside, slab_area, slab_clip, slab_region,
    wedge_area_quad, wedge_area_triangle, Chord, EdgePair, SectionConfig, Segment, Slab,
    VertexPolicy,
};
pub use support_fn::{Breakpoint, Direction, Piece, SupportFunction, SupportingLine, TrigPolynomial};
pub use tolerance::ToleranceConfig;
