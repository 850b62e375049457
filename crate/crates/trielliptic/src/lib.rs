pub mod linalg;
pub mod poly;
pub mod git;
pub mod qform;
pub mod lattice;
pub mod census;
pub mod geometry;
pub mod verify;
pub mod report;
pub mod cli;
