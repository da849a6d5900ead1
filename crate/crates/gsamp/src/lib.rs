//! File formats, configuration and the experiment harness around
//! [`gsamp_core`].

pub mod config;
mod error;
pub mod experiment;
pub mod io;
pub mod registry;
pub mod report;

pub use error::{Error, Result, EXIT_CONFIG, EXIT_NUMERICAL};
