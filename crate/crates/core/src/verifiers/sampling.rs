use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Colour, Instance, RainbowMatching, Vertex, VertexMask};
use crate::rng::{seeded, RNG_ALGORITHM};
use crate::solvers::{greedy_fill, local_search, SolverBudget};

/// Node budget for the local search on `G - S` in [`sampling_experiment`].
pub const SAMPLING_NODES: u64 = 16;

/// Tail bound `2 exp(-eps^2 E / (3 k^2))` for a sum of independent
/// variables in `[0, k]` with mean `E` deviating by more than `eps E`.
pub fn chernoff_bound(expectation: f64, k: f64, eps: f64) -> Result<f64> {
    if !(expectation >= 0.0 && expectation.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "expectation must be finite and non-negative, got {expectation}"
        )));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("summand bound must be positive, got {k}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0,1), got {eps}")));
    }
    Ok(2.0 * (-eps * eps * expectation / (3.0 * k * k)).exp())
}

/// Sampling probability `2 n^(-1/4)`, capped at 1.
pub fn sampling_probability(n: usize) -> f64 {
    (2.0 * (n as f64).powf(-0.25)).min(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColourSample {
    pub colour: Colour,
    /// Edges of the colour with both ends in `S`.
    pub e_c_s: u64,
    /// Vertices of the colour class in `S`.
    pub v_c_s: u64,
    pub cover: usize,
    /// Exact cover of the colour in `G - S`.
    pub survivor_cover: usize,
    /// `cover - 3 v_c(S)`, floored at zero.
    pub conservative_cover: usize,
    /// Chernoff estimate for `e_c(S) <= sqrt(n)`; 1 when uninformative.
    pub chernoff: f64,
    pub few_edges: bool,
    pub low_cover: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingReport {
    pub rng: String,
    pub seed: u64,
    pub n: usize,
    pub vertex_count: usize,
    pub p: f64,
    pub sample: Vec<Vertex>,
    pub sqrt_n: f64,
    pub min_cover: usize,
    /// `(1 - 6p) * min_cover`.
    pub cover_floor: f64,
    pub colours: Vec<ColourSample>,
    pub few_edge_events: usize,
    pub low_cover_events: usize,
    /// Sum of the per-colour Chernoff estimates.
    pub chernoff_expected_events: f64,
    /// Rainbow matching found in `G - S`.
    pub outside_size: usize,
    /// After completing greedily inside `G[S]`.
    pub combined_size: usize,
    pub combined: RainbowMatching,
}

impl SamplingReport {
    pub fn few_edge_rate(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.few_edge_events as f64 / self.n as f64
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "p={} |S|={} few_edges={} low_cover={} chernoff_expected={:.3e} combined={}/{}",
            self.p,
            self.sample.len(),
            self.few_edge_events,
            self.low_cover_events,
            self.chernoff_expected_events,
            self.combined_size,
            self.n
        )
    }
}

/// [`sampling_experiment_with`] using a local search of [`SAMPLING_NODES`] nodes.
pub fn sampling_experiment(instance: &Instance, seed: u64) -> Result<SamplingReport> {
    sampling_experiment_with(instance, seed, SolverBudget::nodes(SAMPLING_NODES))
}

/// Keeps each vertex with probability `p = 2 n^(-1/4)`, records per-colour
/// counts inside the sample `S`, solves `G - S` by local search and then
/// fills unused colours greedily inside `G[S]`.
pub fn sampling_experiment_with(instance: &Instance, seed: u64, budget: SolverBudget) -> Result<SamplingReport> {
    let n = instance.n();
    let vertex_count = instance.vertex_count();
    let p = sampling_probability(n);
    let mut rng = seeded(seed);
    let mut in_s = VertexMask::new(vertex_count);
    for v in 0..vertex_count as Vertex {
        if rng.gen_bool(p) {
            in_s.insert(v);
        }
    }
    let sqrt_n = (n as f64).sqrt();
    let min_cover = instance.min_cover();
    let cover_floor = (1.0 - 6.0 * p) * min_cover as f64;

    let mut colours = Vec::with_capacity(n);
    for class in instance.classes() {
        let (mut e_c_s, mut v_c_s, mut survivor, mut edges, mut k) = (0u64, 0u64, 0usize, 0u64, 0u64);
        for clique in class.cliques() {
            let inside = clique.iter().filter(|&&v| in_s.contains(v)).count() as u64;
            let size = clique.len() as u64;
            e_c_s += inside * inside.saturating_sub(1) / 2;
            v_c_s += inside;
            let left = clique.len() - inside as usize;
            if left >= 2 {
                survivor += left;
            }
            let pairs = size * (size - 1) / 2;
            edges += pairs;
            k = k.max(pairs);
        }
        let expectation = p * p * edges as f64;
        let chernoff = if expectation > sqrt_n {
            chernoff_bound(expectation, k as f64, 1.0 - sqrt_n / expectation)?.min(1.0)
        } else {
            1.0
        };
        colours.push(ColourSample {
            colour: class.colour(),
            e_c_s,
            v_c_s,
            cover: class.cover(),
            survivor_cover: survivor,
            conservative_cover: class.cover().saturating_sub(3 * v_c_s as usize),
            chernoff,
            few_edges: e_c_s as f64 <= sqrt_n,
            low_cover: (survivor as f64) < cover_floor,
        });
    }

    let outside = {
        let rest = instance.without_vertices(&in_s);
        local_search(&rest, budget)?.best
    };
    let mut blocked = VertexMask::new(vertex_count);
    for v in 0..vertex_count as Vertex {
        if !in_s.contains(v) {
            blocked.insert(v);
        }
    }
    let combined = greedy_fill(instance, &outside, blocked).canonical();
    debug_assert!(instance.verify_rainbow(&combined).is_ok());

    Ok(SamplingReport {
        rng: RNG_ALGORITHM.to_string(),
        seed,
        n,
        vertex_count,
        p,
        sample: in_s.iter().collect(),
        sqrt_n,
        min_cover,
        cover_floor,
        few_edge_events: colours.iter().filter(|c| c.few_edges).count(),
        low_cover_events: colours.iter().filter(|c| c.low_cover).count(),
        chernoff_expected_events: colours.iter().map(|c| c.chernoff).sum(),
        colours,
        outside_size: outside.len(),
        combined_size: combined.len(),
        combined,
    })
}
