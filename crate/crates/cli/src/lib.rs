//! File formats, job execution and verification suites behind the `stringy` binary.

pub mod io;
pub mod run;
pub mod verify;

pub use run::{run, Command, EstSource, Format, JobSpec, Outcome};
