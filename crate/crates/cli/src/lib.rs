//! Verification suites and table emitters behind the `mfkit` binary.

pub mod emit;
pub mod report;
pub mod suites;

use mfkit::catalog::Catalog;
use mfkit::homology::HomologyConfig;
use mfkit::PrimeField;
use serde::Serialize;

/// Input the caller got wrong: unknown ids, bad rings, unreadable files.
/// The binary maps it to the usage exit code.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Global knobs shared by every command.
#[derive(Debug, Clone, Serialize)]
pub struct Params {
    pub field_char: u32,
    pub trunc_budget: u32,
    /// Overrides the per-suite window bound when set.
    pub window: Option<u32>,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            field_char: mfkit::field::DEFAULT_PRIME,
            trunc_budget: HomologyConfig::default().budget,
            window: None,
            seed: 0,
        }
    }
}

pub struct Context {
    pub params: Params,
    pub cat: Catalog,
    pub cfg: HomologyConfig,
}

impl Context {
    pub fn new(params: Params) -> anyhow::Result<Self> {
        let field = PrimeField::new(params.field_char).map_err(|e| usage(e.to_string()))?;
        if params.trunc_budget == 0 {
            return Err(usage("truncation budget must be positive"));
        }
        let cfg = HomologyConfig::default().with_budget(params.trunc_budget);
        Ok(Self {
            cat: Catalog::new(field),
            cfg,
            params,
        })
    }

    pub fn window_or(&self, default: u32) -> u32 {
        self.params.window.unwrap_or(default)
    }
}
