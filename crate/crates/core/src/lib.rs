#![allow(clippy::needless_range_loop)]

pub mod arithhilbert;
pub mod cli;
pub mod error;
pub mod exact;
pub mod forms;
pub mod heights;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod schemes;
pub mod suite;
