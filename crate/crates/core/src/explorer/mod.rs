//! The user surface: ideal-file parsing, command dispatch, JSON reports,
//! experiment grids, and the reproduction suite.

mod commands;
mod grid;
pub mod json;
mod parse;
pub mod random;
pub mod reproduce;

pub use commands::{run_command, Command, CommandArgs, GridArgs, Input};
pub use grid::{
    enumerate_hilbert_functions, explore_threshold, thread_pool, ExperimentGrid, GridMode, HfCount, HfEnumeration,
    ThresholdExploration, ThresholdRow, DEFAULT_CAP,
};
pub use json::{Report, ENGINE_VERSION};
pub use parse::{parse_file, parse_ideal_file, parse_polynomial, IdealFile};
pub use reproduce::{reproduce_paper, ItemResult, ReproduceOptions};
