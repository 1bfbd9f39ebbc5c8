pub mod analyze;
pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod prm;
pub mod selftest;
pub mod sweep;
