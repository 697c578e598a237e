//! Command-line front end for `gem-core`: JSON graph specs, CSV scans of the
//! graph-state families and the lattice-field scaling runs.

pub mod app;
pub mod commands;
pub mod csv;
pub mod error;
pub mod spec_file;

pub use app::run;
pub use error::CliError;
