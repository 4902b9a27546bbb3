//! IO, file formats, report emission, and the verification harness around
//! the core coloring library.

pub mod commands;
pub mod formats;
pub mod report;
