//! Library surface of the `kforge` command-line tool: model file parsing,
//! report rendering, and the subcommand implementations.

pub mod commands;
pub mod model;
pub mod report;

pub use commands::{
    cmd_complexify, cmd_equivariance, cmd_lemma31, cmd_solve, cmd_validate, CommandError,
    Lemma31Input, SolveOptions, DEFAULT_GROUP_CAP,
};
pub use model::{ModelError, ModelFile};
pub use report::Report;
