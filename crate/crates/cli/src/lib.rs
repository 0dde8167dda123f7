//! Command-line front end: depth of a single point, benchmark runs and
//! depth landscapes, with CSV and JSON input/output.

pub mod args;
pub mod commands;
pub mod config;
pub mod io;
