use std::collections::{BTreeSet, HashSet, VecDeque};

use super::budget::{Meter, SolverBudget};
use crate::error::{Error, Result};
use crate::graph::{Colour, EdgePair, Instance, Maximality, RainbowMatching};

/// All single-edge switches bringing colour `c` into `m`: one edge `e` of
/// `m` is replaced by a `c`-coloured pair that touches `e` and avoids the
/// rest of `m`. Results are colour-sorted, ordered by the replaced edge's
/// position in `m` and then by the new pair.
///
/// No precondition is checked beyond `c` being unused.
pub fn switch_moves(instance: &Instance, m: &RainbowMatching, c: Colour) -> Vec<RainbowMatching> {
    let used = m.vertex_mask(instance.vertex_count());
    let mut out = Vec::new();
    for (i, e) in m.pairs.iter().enumerate() {
        let mut candidates = BTreeSet::new();
        for x in e.endpoints() {
            for &w in instance.clique_at(x, c) {
                if w != x && (!used.contains(w) || e.contains(w)) {
                    candidates.insert(EdgePair::of(x, w));
                }
            }
        }
        for f in candidates {
            let mut next = m.clone();
            next.pairs[i] = f;
            next.colours[i] = c;
            out.push(next.canonical());
        }
    }
    out
}

/// Colour switches of a maximal rainbow matching `m` towards the unused
/// colour `c`. Every output has the size of `m` and colour set
/// `C(m) - {c'} + {c}` for the colour `c'` it gave up.
pub fn colour_switch(instance: &Instance, m: &RainbowMatching, c: Colour) -> Result<Vec<RainbowMatching>> {
    if c as usize >= instance.n() {
        return Err(Error::ColourOutOfRange { colour: c, n: instance.n() });
    }
    if m.colours.contains(&c) {
        return Err(Error::ColourInUse(c));
    }
    if let Maximality::Extendable { pair, colour } = instance.is_maximal(m)? {
        return Err(Error::NotMaximal { pair, colour });
    }
    Ok(switch_moves(instance, m, c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SteerOutcome {
    /// A maximal matching of the original size whose unused colours all lie
    /// in the good set, reached after `moves` switches.
    Found {
        matching: RainbowMatching,
        moves: usize,
        nodes: u64,
    },
    BudgetExhausted {
        nodes: u64,
    },
    /// Every reachable matching was examined.
    SearchExhausted {
        nodes: u64,
    },
}

/// Breadth-first search over colour switches for a maximal rainbow matching
/// of the same size whose unused colours all belong to `good`. Each move
/// switches in an unused colour outside `good`.
pub fn steer_to_colour_set(
    instance: &Instance,
    m: &RainbowMatching,
    good: &BTreeSet<Colour>,
    budget: SolverBudget,
) -> Result<SteerOutcome> {
    budget.check()?;
    if let Maximality::Extendable { pair, colour } = instance.is_maximal(m)? {
        return Err(Error::NotMaximal { pair, colour });
    }
    let compliant = |rm: &RainbowMatching| -> bool {
        rm.unused_colours(instance).iter().all(|c| good.contains(c))
            && instance.is_maximal(rm).map(|x| x.is_maximal()).unwrap_or(false)
    };
    let start = m.canonical();
    let mut meter = Meter::new(budget);
    let mut seen: HashSet<RainbowMatching> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back((start, 0usize));
    while let Some((state, depth)) = queue.pop_front() {
        if meter.tick() {
            return Ok(SteerOutcome::BudgetExhausted { nodes: meter.nodes });
        }
        if compliant(&state) {
            return Ok(SteerOutcome::Found {
                matching: if depth == 0 { m.clone() } else { state },
                moves: depth,
                nodes: meter.nodes,
            });
        }
        for c in state.unused_colours(instance) {
            if good.contains(&c) {
                continue;
            }
            for next in switch_moves(instance, &state, c) {
                if seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    Ok(SteerOutcome::SearchExhausted { nodes: meter.nodes })
}
