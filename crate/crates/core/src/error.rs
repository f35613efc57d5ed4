use thiserror::Error;

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("support function is not differentiable at θ = {theta}")]
    NonDifferentiableAt { theta: f64 },

    #[error("invalid support function: {0}")]
    InvalidSupportFunction(String),

    #[error("polygon is not convex (turn {turn:e} at vertex {index})")]
    NotConvex { index: usize, turn: f64 },

    #[error("polygon is degenerate: {0}")]
    Degenerate(String),

    #[error("degenerate direction θ = {theta}")]
    DegenerateDirection { theta: f64 },

    #[error("inverted slab at θ = {theta}: lower {lower} > upper {upper}")]
    InvertedSlab { theta: f64, lower: f64, upper: f64 },

    #[error("hedgehog is not contained in the interior of polygon {0}")]
    ContainmentViolated(String),

    #[error("support function is not centrally symmetric")]
    NotCentrallySymmetric,

    #[error("polygon {0} is not origin-symmetric")]
    NotOriginSymmetric(String),

    #[error("breakpoint θ = {breakpoint} coincides with shared-point direction θ = {direction}")]
    BreakpointAtSharedPoint { breakpoint: f64, direction: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
