//! File formats, reports, analyses and the verification suite for the
//! `qnorm` command line.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod input;
pub mod report;
pub mod verify;

pub use analysis::{run_group_analysis, run_vn_analysis, Overrides, RunError};
pub use input::InputError;
