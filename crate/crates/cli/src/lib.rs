//! Command-line front end: scenes, verification sweeps, SVG envelopes.

pub mod app;
pub mod commands;
pub mod error;
pub mod scene;
pub mod svg;

pub use error::{CliError, Status};
pub use scene::Scene;
