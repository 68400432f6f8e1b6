//! Front end for the crossed-product engine: the description format, the
//! bundled gallery and the command implementations.

pub mod format;
pub mod gallery;
pub mod commands;
pub mod report;
