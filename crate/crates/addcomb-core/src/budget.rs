//! Node/evaluation budgets for the exhaustive searches.
//!
//! A budget bounds the number of search nodes (or polynomial evaluations) a
//! solver may visit. Exceeding a budget is reported separately from a
//! mathematical negative (`NoSolution` / `NotFound`): only the latter is a
//! claim about the search space.

/// A cap on the number of nodes or evaluations a search may spend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    max_nodes: Option<u64>,
}

impl Budget {
    /// No cap; the search runs to exhaustion.
    pub fn unlimited() -> Self {
        Budget { max_nodes: None }
    }

    /// Cap the search at `max_nodes` visited nodes.
    pub fn limited(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
        }
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }

    /// Starts a fresh counter against this budget.
    pub fn meter(&self) -> Meter {
        Meter {
            limit: self.max_nodes,
            used: 0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// Running node counter for one search.
#[derive(Debug, Clone)]
pub struct Meter {
    limit: Option<u64>,
    used: u64,
}

impl Meter {
    /// Counts one node. Returns `false` once the budget is exhausted.
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        match self.limit {
            Some(limit) => self.used <= limit,
            None => true,
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlimited_never_trips() {
        let mut meter = Budget::unlimited().meter();
        for _ in 0..10_000 {
            assert!(meter.tick());
        }
    }

    #[test]
    fn limited_trips_after_cap() {
        let mut meter = Budget::limited(3).meter();
        assert!(meter.tick());
        assert!(meter.tick());
        assert!(meter.tick());
        assert!(!meter.tick());
        assert_eq!(meter.used(), 4);
    }
}
