//! Command line, file formats and thread pools around `evolaut_core`.

pub mod cli;
pub mod fixtures;
pub mod graph_file;
pub mod json;
pub mod parallel;
