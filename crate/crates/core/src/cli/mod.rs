//! Text front end: parser, pretty-printer and command dispatch.

pub mod command;
pub mod parse;
pub mod print;
