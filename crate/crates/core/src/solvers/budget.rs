use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgePair, RainbowMatching};

/// Limits for a search. Both limits must be positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    /// Stop as soon as a matching of this size is found.
    pub target: Option<usize>,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget {
            node_limit: 200_000_000,
            time_limit: Duration::from_secs(3600),
            target: None,
        }
    }
}

impl SolverBudget {
    pub fn nodes(node_limit: u64) -> Self {
        SolverBudget {
            node_limit,
            ..Self::default()
        }
    }

    pub fn with_target(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_time_limit(mut self, secs: f64) -> Self {
        self.time_limit = Duration::from_secs_f64(secs);
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.node_limit == 0 {
            return Err(Error::InvalidParameter("node limit must be positive".into()));
        }
        if self.time_limit.is_zero() {
            return Err(Error::InvalidParameter("time limit must be positive".into()));
        }
        Ok(())
    }
}

/// Why a search stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    ProvedOptimal,
    TargetReached,
    BudgetExhausted,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::ProvedOptimal => "proved-optimal",
            Reason::TargetReached => "target-reached",
            Reason::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub best: RainbowMatching,
    /// No larger rainbow matching exists.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub reason: Reason,
}

#[derive(Serialize, Deserialize)]
struct SolveRecord {
    size: usize,
    optimal: bool,
    nodes: u64,
    reason: Reason,
    pairs: Vec<EdgePair>,
    colours: Vec<Colour>,
}

impl SolveResult {
    pub fn size(&self) -> usize {
        self.best.len()
    }

    /// `size=.. optimal=.. nodes=.. reason=..` on one line.
    pub fn summary(&self) -> String {
        format!(
            "size={} optimal={} nodes={} reason={}",
            self.size(),
            self.optimal,
            self.nodes_explored,
            self.reason.as_str()
        )
    }

    /// JSON object with `size, optimal, nodes, reason, pairs, colours`.
    pub fn to_json(&self) -> String {
        let record = SolveRecord {
            size: self.size(),
            optimal: self.optimal,
            nodes: self.nodes_explored,
            reason: self.reason,
            pairs: self.best.pairs.clone(),
            colours: self.best.colours.clone(),
        };
        let mut s = serde_json::to_string(&record).expect("solve result serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: SolveRecord = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Ok(SolveResult {
            best: RainbowMatching::new(r.pairs, r.colours),
            optimal: r.optimal,
            nodes_explored: r.nodes,
            reason: r.reason,
        })
    }
}

/// Node and wall-clock accounting for one search.
pub(crate) struct Meter {
    start: Instant,
    pub(crate) nodes: u64,
    budget: SolverBudget,
    out_of_time: bool,
}

impl Meter {
    pub(crate) fn new(budget: SolverBudget) -> Self {
        Meter {
            start: Instant::now(),
            nodes: 0,
            budget,
            out_of_time: false,
        }
    }

    /// Counts one node; true once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return true;
        }
        if self.nodes & 0xfff == 0 && self.start.elapsed() >= self.budget.time_limit {
            self.out_of_time = true;
        }
        self.out_of_time
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.out_of_time || self.nodes >= self.budget.node_limit
    }
}
