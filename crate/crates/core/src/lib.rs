//! Exact algebra for multipoint conformal partial waves.

pub mod counting;
pub mod cs;
pub mod elliptic;
pub mod exact;
pub mod gaudin;
pub mod laurent;
pub mod lie;
pub mod matrix;
pub mod report;
pub mod trees;
pub mod vertex;
pub mod wpoly;
