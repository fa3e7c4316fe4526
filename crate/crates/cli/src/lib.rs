//! Library surface of the command-line tool: the property suite is exposed
//! so integration tests and the `check` subcommand run identical code.

pub mod suite;
