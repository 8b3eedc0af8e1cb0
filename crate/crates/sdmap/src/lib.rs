//! Command-line front end for `sdmap-core`: argument handling, CSV, JSON
//! and PPM writers, and parallel parameter and basin sweeps.
//!
//! Every sweep is assembled in canonical order, so results do not depend
//! on the number of threads.

pub mod cli;
pub mod error;
pub mod output;
pub mod render;
pub mod sweep;

pub use error::CliError;
