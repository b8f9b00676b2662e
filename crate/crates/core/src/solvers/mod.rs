//! Rainbow-matching solvers and the moves they are built from.

mod aux;
mod budget;
mod exact;
mod extract;
mod greedy;
mod horn;
mod local;
mod switch;

pub use aux::{find_aux_matching, AuxEdge, AuxiliaryMatching};
pub use budget::{Reason, SolveResult, SolverBudget};
pub use exact::exact_max;
pub use extract::extract_matching_triangles;
pub use greedy::greedy_extend;
pub use horn::horn_augment;
pub use local::local_search;
pub use switch::{colour_switch, steer_to_colour_set, switch_moves, SteerOutcome};

pub(crate) use greedy::greedy_fill;
pub(crate) use horn::outside_edges;
