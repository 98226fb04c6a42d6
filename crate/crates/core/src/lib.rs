#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod counting;
pub mod embedding;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod relations;
pub mod rng;
pub mod spectral;
pub mod symmetry;
