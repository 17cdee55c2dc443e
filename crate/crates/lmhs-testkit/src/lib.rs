//! Independent oracles used to cross-check the `lmhs` library in tests.

pub mod intersection;
pub mod jordan;
pub mod rank;
pub mod splitting;
