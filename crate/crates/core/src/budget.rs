//! Wall-clock and node budgets for the exact searches.

use std::time::{Duration, Instant};

/// Limits a search may not exceed. Exhaustion is reported as a distinct
/// outcome, never conflated with a definitive negative answer.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            time: None,
            nodes: None,
        }
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            time: Some(limit),
            nodes: None,
        }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget {
            time: None,
            nodes: Some(limit),
        }
    }

    pub fn start(&self) -> BudgetClock {
        BudgetClock {
            budget: *self,
            started: Instant::now(),
            nodes: 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// A running budget: counts nodes and watches the clock.
pub struct BudgetClock {
    budget: Budget,
    started: Instant,
    nodes: u64,
}

impl BudgetClock {
    /// Counts one search node; true while the budget still has room.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        !self.exhausted()
    }

    pub fn add_nodes(&mut self, k: u64) {
        self.nodes += k;
    }

    pub fn exhausted(&self) -> bool {
        if let Some(cap) = self.budget.nodes {
            if self.nodes > cap {
                return true;
            }
        }
        if let Some(limit) = self.budget.time {
            // checking the clock every few hundred nodes keeps the overhead down
            if self.nodes.is_multiple_of(256) && self.started.elapsed() > limit {
                return true;
            }
        }
        false
    }

    /// Like `exhausted` but always consults the clock.
    pub fn exhausted_strict(&self) -> bool {
        if let Some(cap) = self.budget.nodes {
            if self.nodes > cap {
                return true;
            }
        }
        if let Some(limit) = self.budget.time {
            if self.started.elapsed() > limit {
                return true;
            }
        }
        false
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}
