//! Harness library behind the `spider` command line tool: workload
//! generation, reference verification, timed benchmark runs, and result
//! output.

pub mod report;
pub mod runner;
pub mod verify;
pub mod workload;
