//! Node budget shared by the exhaustive searches.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_SEARCH: u64 = 10_000_000;
pub const ENV_MAX_SEARCH: &str = "LAXCOMMA_MAX_SEARCH";

/// Counts search nodes and fails once the cap is reached.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// Cap taken from `LAXCOMMA_MAX_SEARCH`, falling back to 10^7.
    pub fn from_env() -> Self {
        let limit =
            std::env::var(ENV_MAX_SEARCH).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_SEARCH);
        Budget::new(limit)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
