pub mod catspec;
pub mod commands;
pub mod output;
pub mod paper;
pub mod suite;
