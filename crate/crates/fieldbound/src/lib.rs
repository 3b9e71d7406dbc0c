//! Reports, configuration and the command-line front end for
//! [`fieldbound_core`].

pub mod cli;
pub mod config;
pub mod field_info;
pub mod report;
pub mod verify;
