//! Library surface of the CLI: report building, LMFDB ingestion, the
//! rich/cyclic statistics table, and the parallel batch driver. The `avfq`
//! binary in `main.rs` is a thin argument-parsing wrapper over these.

pub mod batch;
pub mod lmfdb;
pub mod report;
pub mod table1;
