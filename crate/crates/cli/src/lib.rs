//! Library side of the `knc` command line tool: wire formats, the
//! count-table cache, deterministic batch sampling, the uniformity
//! histogram, and the selftest suites. The binary in `main.rs` is a thin
//! argument-parsing layer over these.

pub mod batch;
pub mod cache;
pub mod format;
pub mod hist;
pub mod selftest;
