use super::budget::{Meter, Reason, SolveResult, SolverBudget};
use crate::error::Result;
use crate::graph::{Colour, EdgePair, Instance, RainbowMatching};

struct Search<'a> {
    pairs: &'a [Vec<(u32, u32)>],
    used: Vec<u64>,
    current: Vec<(EdgePair, Colour)>,
    best: Vec<(EdgePair, Colour)>,
    target: usize,
    meter: Meter,
    stopped: bool,
    hit_target: bool,
}

impl Search<'_> {
    #[inline]
    fn is_used(&self, v: u32) -> bool {
        self.used[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    #[inline]
    fn flip(&mut self, v: u32) {
        self.used[(v >> 6) as usize] ^= 1 << (v & 63);
    }

    fn run(&mut self, level: usize) {
        if self.meter.tick() {
            self.stopped = true;
            return;
        }
        if self.current.len() > self.best.len() {
            self.best.clone_from(&self.current);
            if self.best.len() >= self.target {
                self.hit_target = true;
                self.stopped = true;
                return;
            }
        }
        let remaining = self.pairs.len() - level;
        if self.current.len() + remaining <= self.best.len() {
            return;
        }
        let colour_pairs = self.pairs;
        for &(a, b) in &colour_pairs[level] {
            if self.is_used(a) || self.is_used(b) {
                continue;
            }
            self.flip(a);
            self.flip(b);
            self.current.push((EdgePair::of(a, b), level as Colour));
            self.run(level + 1);
            self.current.pop();
            self.flip(a);
            self.flip(b);
            if self.stopped {
                return;
            }
        }
        self.run(level + 1);
    }
}

/// Depth-first branch and bound over colours in ascending order. At each
/// colour the search tries every free pair (canonical order) and then skips
/// the colour; a branch is cut when the current size plus the number of
/// colours left cannot beat the incumbent.
///
/// Running out of budget is a normal outcome with `optimal == false`.
pub fn exact_max(instance: &Instance, budget: SolverBudget) -> Result<SolveResult> {
    budget.check()?;
    let pairs: Vec<Vec<(u32, u32)>> = instance
        .classes()
        .iter()
        .map(|class| {
            class
                .sorted_pairs()
                .into_iter()
                .map(|p| (p.a(), p.b()))
                .collect()
        })
        .collect();
    let mut search = Search {
        pairs: &pairs,
        used: vec![0; instance.vertex_count().div_ceil(64).max(1)],
        current: Vec::with_capacity(instance.n()),
        best: Vec::new(),
        target: budget.target.unwrap_or(usize::MAX),
        meter: Meter::new(budget),
        stopped: false,
        hit_target: false,
    };
    search.run(0);

    let complete = !search.stopped || search.best.len() == instance.n();
    let reason = if search.hit_target {
        Reason::TargetReached
    } else if complete {
        Reason::ProvedOptimal
    } else {
        Reason::BudgetExhausted
    };
    let mut best = RainbowMatching::default();
    for (pair, colour) in search.best {
        best.push(pair, colour);
    }
    Ok(SolveResult {
        best,
        optimal: complete,
        nodes_explored: search.meter.nodes,
        reason,
    })
}
