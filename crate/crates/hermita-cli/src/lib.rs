//! Form-file IO, reports and the command implementations behind the
//! `hermita` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod report;
