//! Library surface of the command-line front end: the subcommand
//! implementations plus the writers and readers for the emitted formats.

pub mod commands;
pub mod output;
