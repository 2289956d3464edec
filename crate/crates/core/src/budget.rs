//! Resource limits for the exponential enumerations.

use std::env;

use thiserror::Error;

pub const BUDGET_ENV: &str = "PERIODICA_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("{what} needs {needed} but the budget allows {limit}")]
    Exceeded { what: &'static str, needed: u64, limit: u64 },
    #[error("cannot parse budget `{0}` (expected e.g. `states=16777216,crossings=24,kh_crossings=12`)")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Kauffman states enumerated by a single state sum.
    pub max_states: u64,
    /// Crossings of a diagram fed to a state sum.
    pub max_crossings: usize,
    /// Crossings of a diagram whose Khovanov complex is built.
    pub max_kh_crossings: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_states: 1 << 24,
            max_crossings: 24,
            max_kh_crossings: 12,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            max_states: u64::MAX,
            max_crossings: 63,
            max_kh_crossings: 63,
        }
    }

    /// Applies `key=value` overrides, comma separated.
    pub fn parse_overrides(&self, spec: &str) -> Result<Budget, BudgetError> {
        let mut out = *self;
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| BudgetError::Parse(part.into()))?;
            let value: u64 = value.trim().parse().map_err(|_| BudgetError::Parse(part.into()))?;
            if value == 0 {
                return Err(BudgetError::Parse(part.into()));
            }
            match key.trim() {
                "states" => out.max_states = value,
                "crossings" => out.max_crossings = value.min(63) as usize,
                "kh_crossings" => out.max_kh_crossings = value.min(63) as usize,
                _ => return Err(BudgetError::Parse(part.into())),
            }
        }
        Ok(out)
    }

    /// Defaults overridden by `PERIODICA_BUDGET` when set.
    pub fn from_env() -> Result<Budget, BudgetError> {
        match env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().parse_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    /// Checks a state sum over `crossings` crossings.
    pub fn check_states(&self, crossings: usize) -> Result<(), BudgetError> {
        if crossings > self.max_crossings {
            return Err(BudgetError::Exceeded {
                what: "state sum crossing count",
                needed: crossings as u64,
                limit: self.max_crossings as u64,
            });
        }
        let states = 1u64 << crossings;
        if states > self.max_states {
            return Err(BudgetError::Exceeded {
                what: "Kauffman state enumeration",
                needed: states,
                limit: self.max_states,
            });
        }
        Ok(())
    }

    pub fn check_kh(&self, crossings: usize) -> Result<(), BudgetError> {
        if crossings > self.max_kh_crossings {
            return Err(BudgetError::Exceeded {
                what: "Khovanov complex crossing count",
                needed: crossings as u64,
                limit: self.max_kh_crossings as u64,
            });
        }
        self.check_states(crossings)
    }
}
