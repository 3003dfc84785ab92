//! Command-line front end: argument definitions, file loaders and emitters.

pub mod args;
pub mod commands;
pub mod error;
pub mod files;
pub mod output;
