//! Solver settings resolved as: flag, then `BOXLAB_BUDGET`, then config file, then default.

use std::path::Path;

use anyhow::{Context, Result};
use boxlab_core::solver::SolverConfig;
use serde::Deserialize;

pub const DEFAULT_SEED: u64 = 0x0b0c_1c17;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub max_b: Option<usize>,
    pub refute_cap: Option<usize>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Flags as given on the command line; `budget` already includes the
/// environment override through clap.
#[derive(Debug, Default, Clone, Copy)]
pub struct SolverFlags {
    pub budget: Option<u64>,
    pub threads: Option<usize>,
    pub max_b: Option<usize>,
    pub refute_cap: Option<usize>,
}

pub fn resolve(flags: SolverFlags, file: &FileConfig) -> SolverConfig {
    let default = SolverConfig::default();
    SolverConfig {
        max_b: flags.max_b.or(file.max_b),
        budget: flags.budget.or(file.budget).unwrap_or(default.budget),
        threads: flags.threads.or(file.threads).unwrap_or(default.threads).max(1),
        refute_cap: flags.refute_cap.or(file.refute_cap).unwrap_or(default.refute_cap),
    }
}
