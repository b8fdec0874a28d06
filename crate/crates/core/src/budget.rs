use crate::error::{Error, Result};

/// Caps that keep finite-field enumeration at desk scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_q: u32,
    pub max_conductor: u32,
    pub max_delta: usize,
    /// Cap on δ for exhaustive semimodule enumeration (2^δ subsets).
    pub max_semimodule_delta: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_q: 11,
            max_conductor: 16,
            max_delta: 8,
            max_semimodule_delta: 20,
        }
    }
}

pub const BUDGET_ENV: &str = "BRANCHFORGE_BUDGET";

impl Budget {
    /// Parses overrides such as `q=13,c=20,delta=10,semimodule_delta=24`.
    pub fn parse_overrides(mut self, text: &str) -> Result<Self> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget entry {item:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("budget value {value:?} is not an integer")))?;
            match key.trim() {
                "q" => self.max_q = value as u32,
                "c" | "conductor" => self.max_conductor = value as u32,
                "delta" => self.max_delta = value as usize,
                "semimodule_delta" => self.max_semimodule_delta = value as usize,
                other => return Err(Error::Parse(format!("unknown budget key {other:?}"))),
            }
        }
        Ok(self)
    }

    /// Defaults, overridden by `BRANCHFORGE_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(text) => Self::default().parse_overrides(&text),
            Err(_) => Ok(Self::default()),
        }
    }

    pub(crate) fn check(&self, what: &'static str, value: u64, cap: u64) -> Result<()> {
        if value > cap {
            Err(Error::BudgetExceeded { what, value, cap })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let b = Budget::default().parse_overrides("q=13, c=20").unwrap();
        assert_eq!((b.max_q, b.max_conductor, b.max_delta), (13, 20, 8));
        assert!(Budget::default().parse_overrides("r=1").is_err());
        assert!(Budget::default().parse_overrides("q").is_err());
    }
}
