//! File formats, report rendering, the randomized verification harness and
//! the subcommands of the `qgap` tool, on top of [`qgap_core`].

pub mod commands;
pub mod error;
pub mod formats;
pub mod harness;
pub mod render;

pub use error::{Error, Result};
