pub mod config;
pub mod emit;
pub mod run;
pub mod svg;
