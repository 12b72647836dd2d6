//! File formats, experiment specs and the command-line runner built on
//! `shotnoise-core`.

pub mod error;
pub mod output;
pub mod run;
pub mod spec;
pub mod verify;

pub use error::{exit, CliError};
pub use output::Artifact;
pub use run::run;
pub use spec::{Command, ExperimentSpec, Format};
