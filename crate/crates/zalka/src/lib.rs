//! Experiment runner for the noisy-register Schrödinger solver: resolves a
//! configuration from defaults, an optional flat-JSON file, and CLI flags,
//! executes one of five recorded experiments, and emits the results as
//! CSV and/or a replayable JSON run record.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
