//! Command-line front end for `kummerlab-core`: element parsing, report
//! rendering and the reproduction suite.

pub mod commands;
pub mod parse;
pub mod report;
pub mod reproduce;
