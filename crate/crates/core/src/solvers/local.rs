use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::budget::{Meter, Reason, SolveResult, SolverBudget};
use super::greedy::greedy_extend;
use super::horn::horn_augment;
use super::switch::switch_moves;
use crate::error::Result;
use crate::graph::{Colour, Instance, RainbowMatching, VertexMask};

// Fixed seed for the plateau walk; results depend only on the instance and budget.
const WALK_SEED: u64 = 0x0072_6169_6e62_6f77;
const TABU_CAP: usize = 1 << 16;

fn greedy_in_order(instance: &Instance, order: &[Colour]) -> RainbowMatching {
    let mut blocked = VertexMask::new(instance.vertex_count());
    let mut rm = RainbowMatching::default();
    for &c in order {
        if let Some(pair) = instance.class(c).first_free_pair(&blocked) {
            blocked.insert(pair.a());
            blocked.insert(pair.b());
            rm.push(pair, c);
        }
    }
    rm.canonical()
}

/// Greedy start, then horn augmentations and colour-switch walks to leave
/// maximal matchings that are not maximum. Improving switch neighbours are
/// taken first; otherwise the walk moves to a random unvisited neighbour,
/// restarting greedily in a shuffled colour order when none is left.
///
/// The best size never decreases and is never above the exact optimum.
pub fn local_search(instance: &Instance, budget: SolverBudget) -> Result<SolveResult> {
    budget.check()?;
    let n = instance.n();
    let bound = n.min(instance.covered_vertices().len() / 2);
    let target = budget.target.unwrap_or(bound);
    let mut meter = Meter::new(budget);
    let mut rng = ChaCha8Rng::seed_from_u64(WALK_SEED);

    let mut current = greedy_extend(instance, &RainbowMatching::default())?.canonical();
    let mut best = current.clone();
    let mut tabu: HashSet<RainbowMatching> = HashSet::new();
    tabu.insert(current.clone());

    let reason = loop {
        if best.len() >= target {
            break if budget.target.is_some() {
                Reason::TargetReached
            } else {
                Reason::ProvedOptimal
            };
        }
        if meter.tick() {
            break Reason::BudgetExhausted;
        }
        if let Some(bigger) = horn_augment(instance, &current)? {
            current = greedy_extend(instance, &bigger)?.canonical();
            if current.len() > best.len() {
                best = current.clone();
            }
            continue;
        }
        let mut neighbours = Vec::new();
        for c in current.unused_colours(instance) {
            neighbours.extend(switch_moves(instance, &current, c));
        }
        let mut improved = None;
        let mut settled = Vec::with_capacity(neighbours.len());
        for nb in neighbours {
            if meter.tick() {
                break;
            }
            let ext = greedy_extend(instance, &nb)?.canonical();
            if ext.len() > current.len() {
                improved = Some(ext);
                break;
            }
            settled.push(ext);
        }
        if let Some(better) = improved {
            current = better;
            if current.len() > best.len() {
                best = current.clone();
            }
            continue;
        }
        if meter.exhausted() {
            break Reason::BudgetExhausted;
        }
        settled.retain(|s| !tabu.contains(s));
        current = if settled.is_empty() {
            let mut order: Vec<Colour> = instance.colours().collect();
            order.shuffle(&mut rng);
            greedy_in_order(instance, &order)
        } else {
            let pick = rng.gen_range(0..settled.len());
            settled.swap_remove(pick)
        };
        if tabu.len() >= TABU_CAP {
            tabu.clear();
        }
        tabu.insert(current.clone());
        if current.len() > best.len() {
            best = current.clone();
        }
    };

    debug_assert!(instance.verify_rainbow(&best).is_ok());
    Ok(SolveResult {
        optimal: best.len() >= bound,
        best,
        nodes_explored: meter.nodes,
        reason,
    })
}
