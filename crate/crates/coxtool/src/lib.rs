//! Command-line front end for `coxeter-core`: diagram files in, text or JSON
//! reports out.

pub mod cli;
pub mod commands;
pub mod report;
mod suites;
