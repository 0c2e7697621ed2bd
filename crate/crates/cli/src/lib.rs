//! Scene files, analysis reports, SVG rendering and the `isosum` command.

mod cli;
pub mod report;
pub mod scene;
pub mod svg;

pub use cli::{default_tolerance, run, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
