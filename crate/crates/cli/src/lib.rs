//! Command-line front end for `toriq-core`: JSON problem files, bundled
//! examples, text and JSON reports and SVG slice plots.

#![allow(clippy::result_large_err)]

pub mod commands;
pub mod fixtures;
pub mod problem;
pub mod report;
pub mod slice;
