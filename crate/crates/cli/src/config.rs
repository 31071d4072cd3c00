use anyhow::{bail, Context};
use clap::ValueEnum;

/// Overrides the default search budgets.
pub const BUDGET_VAR: &str = "PCOVER_BUDGET";

const DEFAULT_ELEMENT_BUDGET: usize = 1 << 20;
const DEFAULT_COVER_BUDGET: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Param,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Largest ring that may be materialized.
    pub element_budget: usize,
    /// Default number of covers listed by `covers`.
    pub cover_budget: usize,
}

impl RunConfig {
    /// Reads `PCOVER_BUDGET`, which sets both budgets.
    pub fn from_env() -> anyhow::Result<Self> {
        let mut cfg = RunConfig {
            element_budget: DEFAULT_ELEMENT_BUDGET,
            cover_budget: DEFAULT_COVER_BUDGET,
        };
        if let Ok(v) = std::env::var(BUDGET_VAR) {
            let n: usize = v.trim().parse().with_context(|| format!("{BUDGET_VAR}={v:?} is not a number"))?;
            if n == 0 {
                bail!("{BUDGET_VAR} must be positive");
            }
            cfg.element_budget = n;
            cfg.cover_budget = n;
        }
        Ok(cfg)
    }
}
