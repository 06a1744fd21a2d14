//! Report, series registry and benchmark ladders behind the
//! `lattice-telescope` command.

pub mod bench;
pub mod report;
pub mod series;
