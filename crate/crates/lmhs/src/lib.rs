//! Limiting mixed Hodge structures of one-parameter semistable degenerations,
//! computed exactly from stratum-level cohomology data.

pub mod asymptotics;
pub mod exactlinalg;
pub mod frames;
pub mod instances;
pub mod mhs;
pub mod nilpotent;
pub mod parallel;
pub mod period;
pub mod sample;
pub mod steenbrink;
