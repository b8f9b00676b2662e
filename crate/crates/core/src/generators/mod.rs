//! Named constructions and seeded random instances.

mod latin;

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColourClass, Colour, Instance, RainbowMatching, Vertex};

pub use latin::{LatinSquare, ParsedSquare};

/// `n - 1` disjoint triangles, each repeated in all `n` colours. Every colour
/// covers `3n - 3` vertices and no rainbow matching has size `n`.
pub fn gen_triangle_extremal(n: usize) -> Result<Instance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("triangle-extremal needs n >= 2, got {n}")));
    }
    let triangles: Vec<Vec<Vertex>> = (0..n - 1)
        .map(|t| {
            let base = 3 * t as Vertex;
            vec![base, base + 1, base + 2]
        })
        .collect();
    let classes = (0..n)
        .map(|c| ColourClass::new(c as Colour, &triangles))
        .collect();
    Ok(Instance::new_unchecked(3 * (n - 1), classes))
}

/// Two vertex-disjoint copies of `K4` on `0..4` and `4..8`, each properly
/// 3-edge-coloured by its three perfect matchings.
pub fn gen_double_k4() -> Instance {
    const MATCHINGS: [[[Vertex; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];
    let classes = MATCHINGS
        .iter()
        .enumerate()
        .map(|(c, m)| {
            let cliques = m
                .iter()
                .flat_map(|&[x, y]| [[x, y], [x + 4, y + 4]]);
            ColourClass::new(c as Colour, cliques)
        })
        .collect();
    Instance::new_unchecked(8, classes)
}

/// Vertex of row `r` in the bridge layout.
pub fn bridge_row(r: usize) -> Vertex {
    r as Vertex
}

/// Vertex of column `c` in the bridge layout for a square of order `n`.
pub fn bridge_col(n: usize, c: usize) -> Vertex {
    (n + c) as Vertex
}

/// Centre of star `k`; its leaf for colour `j` is `centre + 1 + j`.
pub fn bridge_star_centre(n: usize, k: usize) -> Vertex {
    (2 * n + k * (n + 1)) as Vertex
}

/// Properly `n`-edge-coloured `K_{n,n}` read off a Latin square, plus `c/2`
/// disjoint stars `K_{1,n}` with one edge of each colour.
///
/// Rows are vertices `0..n`, columns `n..2n`; star `k` occupies a centre
/// followed by its `n` leaves in colour order. Every colour covers `2n + c`
/// vertices and every pair has multiplicity at most one.
pub fn gen_latin_bridge(square: &LatinSquare, c: usize) -> Result<Instance> {
    if c % 2 == 1 {
        return Err(Error::InvalidParameter(format!("star budget c must be even, got {c}")));
    }
    let n = square.order();
    let stars = c / 2;
    let mut cliques: Vec<Vec<[Vertex; 2]>> = vec![Vec::with_capacity(n + stars); n];
    for r in 0..n {
        for col in 0..n {
            let s = square.symbol(r, col) as usize;
            cliques[s].push([bridge_row(r), bridge_col(n, col)]);
        }
    }
    for k in 0..stars {
        let centre = bridge_star_centre(n, k);
        for (j, class) in cliques.iter_mut().enumerate() {
            class.push([centre, centre + 1 + j as Vertex]);
        }
    }
    let classes = cliques
        .into_iter()
        .enumerate()
        .map(|(j, cl)| ColourClass::new(j as Colour, cl))
        .collect();
    Ok(Instance::new_unchecked(2 * n + stars * (n + 1), classes))
}

/// A rainbow matching of a bridge instance read back as square cells and
/// star edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BridgeTransversal {
    /// `(row, column, symbol)`, by row.
    pub cells: Vec<(usize, usize, u32)>,
    /// `(star, symbol)`, by star.
    pub stars: Vec<(usize, u32)>,
}

impl BridgeTransversal {
    pub fn len(&self) -> usize {
        self.cells.len() + self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty() && self.stars.is_empty()
    }
}

/// Splits `rm`, a rainbow matching of `gen_latin_bridge(square, c)`, into
/// cells of the square and star edges.
pub fn read_bridge_matching(square: &LatinSquare, c: usize, rm: &RainbowMatching) -> Result<BridgeTransversal> {
    let n = square.order();
    let stars = c / 2;
    let mut out = BridgeTransversal::default();
    for e in rm.edges() {
        let (a, b) = (e.pair.a() as usize, e.pair.b() as usize);
        if a < n && (n..2 * n).contains(&b) {
            let col = b - n;
            if square.symbol(a, col) != e.colour {
                return Err(Error::InvalidRainbow(format!("cell ({a},{col}) does not hold symbol {}", e.colour)));
            }
            out.cells.push((a, col, e.colour));
        } else if a >= 2 * n && (a - 2 * n).is_multiple_of(n + 1) && (a - 2 * n) / (n + 1) < stars {
            let k = (a - 2 * n) / (n + 1);
            if b != a + 1 + e.colour as usize {
                return Err(Error::InvalidRainbow(format!("{} is not the colour {} edge of star {k}", e.pair, e.colour)));
            }
            out.stars.push((k, e.colour));
        } else {
            return Err(Error::InvalidRainbow(format!("{} is not an edge of the bridge", e.pair)));
        }
    }
    out.cells.sort_unstable();
    out.stars.sort_unstable();
    Ok(out)
}

/// Knobs for [`gen_random`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    /// Exact cover of every colour class.
    pub v: usize,
    pub max_multiplicity: usize,
    /// Chance that a new clique is a triangle rather than an edge.
    pub triangle_fraction: f64,
    pub seed: u64,
    /// Size of the vertex universe; see [`RandomSpec::vertex_budget`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_count: Option<usize>,
}

impl RandomSpec {
    pub fn new(n: usize, v: usize, max_multiplicity: usize, seed: u64) -> Self {
        RandomSpec {
            n,
            v,
            max_multiplicity,
            triangle_fraction: 0.5,
            seed,
            vertex_count: None,
        }
    }

    /// Explicit `vertex_count`, else `v` when the multiplicity cap is
    /// vacuous (`max_multiplicity >= n`) and `2v` otherwise.
    pub fn vertex_budget(&self) -> usize {
        self.vertex_count.unwrap_or(if self.max_multiplicity >= self.n {
            self.v
        } else {
            2 * self.v
        })
    }

    pub fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if self.v < 2 {
            return Err(Error::InvalidParameter(format!("v must be at least 2, got {}", self.v)));
        }
        if self.max_multiplicity == 0 {
            return Err(Error::InvalidParameter("max_multiplicity must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.triangle_fraction) {
            return Err(Error::InvalidParameter(format!(
                "triangle_fraction {} is outside [0, 1]",
                self.triangle_fraction
            )));
        }
        let budget = self.vertex_budget();
        if budget > u32::MAX as usize {
            return Err(Error::InvalidParameter("vertex budget too large".into()));
        }
        if self.v > budget {
            return Err(Error::Infeasible(format!(
                "cover v = {} exceeds the vertex budget {budget}",
                self.v
            )));
        }
        if self.max_multiplicity < self.n {
            // a class covering v vertices with K2/K3 cliques has at least v/2 pairs
            let needed = self.n as u128 * (self.v as u128 / 2);
            let available = self.max_multiplicity as u128 * (budget as u128 * (budget as u128 - 1) / 2);
            if needed > available {
                return Err(Error::Infeasible(format!(
                    "{} colours need at least {needed} pairs but multiplicity {} over {budget} vertices allows {available}",
                    self.n, self.max_multiplicity
                )));
            }
        }
        Ok(())
    }
}

const RETRIES_PER_COLOUR: usize = 200;

/// Size of the next clique given how many vertices the class still needs.
fn next_clique_size(remaining: usize, triangle_fraction: f64, rng: &mut ChaCha8Rng) -> usize {
    match remaining {
        2 | 4 => 2,
        3 => 3,
        _ => {
            if rng.gen_bool(triangle_fraction) {
                3
            } else {
                2
            }
        }
    }
}

/// Turns a flat list of cliques (given as chunk boundaries over `flat`) into
/// a canonical class: members sorted, cliques ordered by smallest vertex.
fn canonical_class(colour: Colour, vertex_count: usize, flat: &[Vertex], sizes: &[usize], slot: &mut [u32]) -> ColourClass {
    const NONE: u32 = u32::MAX;
    let mut starts_in = Vec::with_capacity(sizes.len());
    let mut at = 0;
    for (id, &s) in sizes.iter().enumerate() {
        starts_in.push(at);
        for &v in &flat[at..at + s] {
            slot[v as usize] = id as u32;
        }
        at += s;
    }
    let mut starts = Vec::with_capacity(sizes.len() + 1);
    let mut members = Vec::with_capacity(flat.len());
    starts.push(0);
    for v in 0..vertex_count {
        let id = slot[v];
        if id == NONE {
            continue;
        }
        let s = starts_in[id as usize];
        let mut clique: [Vertex; 3] = [0; 3];
        let size = sizes[id as usize];
        clique[..size].copy_from_slice(&flat[s..s + size]);
        clique[..size].sort_unstable();
        for &u in &clique[..size] {
            slot[u as usize] = NONE;
        }
        members.extend_from_slice(&clique[..size]);
        starts.push(members.len() as u32);
    }
    ColourClass::from_sorted_parts(colour, starts, members)
}

/// Seeded random instance: every colour class covers exactly `spec.v`
/// vertices with triangles and edges, and no pair exceeds the multiplicity
/// cap. Uses ChaCha8 seeded from `spec.seed`; identical specs give identical
/// instances.
pub fn gen_random(spec: &RandomSpec) -> Result<Instance> {
    spec.check()?;
    let vertex_count = spec.vertex_budget();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let capped = spec.max_multiplicity < spec.n;
    let mut counts: HashMap<(Vertex, Vertex), u32> = HashMap::new();
    let mut slot = vec![u32::MAX; vertex_count];
    let mut perm: Vec<Vertex> = (0..vertex_count as Vertex).collect();
    let mut classes = Vec::with_capacity(spec.n);

    for colour in 0..spec.n {
        let mut built = None;
        for _ in 0..RETRIES_PER_COLOUR {
            perm.shuffle(&mut rng);
            let mut flat: Vec<Vertex> = Vec::with_capacity(spec.v);
            let mut sizes: Vec<usize> = Vec::new();
            let mut remaining = spec.v;
            if !capped {
                let mut pos = 0;
                while remaining > 0 {
                    let size = next_clique_size(remaining, spec.triangle_fraction, &mut rng);
                    flat.extend_from_slice(&perm[pos..pos + size]);
                    sizes.push(size);
                    pos += size;
                    remaining -= size;
                }
                built = Some((flat, sizes));
                break;
            }
            let mut taken = vec![false; vertex_count];
            let mut ok = true;
            while remaining > 0 && ok {
                let size = next_clique_size(remaining, spec.triangle_fraction, &mut rng);
                let mut clique: Vec<Vertex> = Vec::with_capacity(size);
                for &v in &perm {
                    if taken[v as usize] {
                        continue;
                    }
                    let fits = clique.iter().all(|&u| {
                        let key = (u.min(v), u.max(v));
                        counts.get(&key).copied().unwrap_or(0) < spec.max_multiplicity as u32
                    });
                    if fits {
                        clique.push(v);
                        if clique.len() == size {
                            break;
                        }
                    }
                }
                if clique.len() < size {
                    ok = false;
                    break;
                }
                for &v in &clique {
                    taken[v as usize] = true;
                }
                flat.extend_from_slice(&clique);
                sizes.push(size);
                remaining -= size;
            }
            if ok {
                let mut start = 0;
                for &s in &sizes {
                    let cl = &flat[start..start + s];
                    for i in 0..s {
                        for j in i + 1..s {
                            let key = (cl[i].min(cl[j]), cl[i].max(cl[j]));
                            *counts.entry(key).or_insert(0) += 1;
                        }
                    }
                    start += s;
                }
                built = Some((flat, sizes));
                break;
            }
        }
        let Some((flat, sizes)) = built else {
            return Err(Error::Infeasible(format!(
                "colour {colour}: no class covering {} vertices under multiplicity {} after {RETRIES_PER_COLOUR} attempts",
                spec.v, spec.max_multiplicity
            )));
        };
        classes.push(canonical_class(colour as Colour, vertex_count, &flat, &sizes, &mut slot));
    }
    let inst = Instance::new_unchecked(vertex_count, classes);
    debug_assert!(vertex_count > 100_000 || inst.validate().is_empty());
    Ok(inst)
}
