//! Text formats, result documents and command implementations behind the
//! `tdroute` binary. Exposed as a library so integration tests can drive
//! the exact command surface without spawning processes.

pub mod commands;
pub mod doc;
pub mod fileio;
