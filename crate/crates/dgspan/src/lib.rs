//! Generators, file formats, pictures and the experiment runner built on
//! `dgspan-core`.

pub mod experiment;
pub mod formats;
pub mod generators;
pub mod parallel;
pub mod svg;
