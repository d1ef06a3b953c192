use serde::Serialize;

/// Node budget for a search. Every candidate tried costs one unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub used: u64,
    pub limit: u64,
}

/// Raised when a search runs out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("search budget of {limit} nodes exceeded")]
pub struct Exceeded {
    pub limit: u64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 2_000_000;

    pub fn new(limit: u64) -> Budget {
        Budget { used: 0, limit }
    }

    pub fn tick(&mut self) -> Result<(), Exceeded> {
        if self.used >= self.limit {
            return Err(Exceeded { limit: self.limit });
        }
        self.used += 1;
        Ok(())
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT_LIMIT)
    }
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The search space was exhausted without a solution.
    ProvedNone,
    Exceeded,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::ProvedNone => Search::ProvedNone,
            Search::Exceeded => Search::Exceeded,
        }
    }
}
