//! Auxiliary matchings: pairs from outside `V(M)` into `V(M)`, each repeated
//! in at least `t` colours unused by `M`, touching distinct edges of `M`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgePair, Instance, Matching, RainbowMatching, Vertex};

/// One edge `v_e x_e` of an auxiliary matching together with the matching
/// edge `e` it touches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxEdge {
    /// `e`, the edge of `M` touched by this pair.
    pub m_edge: EdgePair,
    /// `c(e)`.
    pub m_colour: Colour,
    /// `x_e`: the endpoint of `e` in the pair.
    pub x: Vertex,
    /// `m(x_e)`: the other endpoint of `e`.
    pub m_x: Vertex,
    /// `v_e`: the endpoint outside `V(M)`.
    pub v: Vertex,
    /// Unused colours of `M` that contain the pair `v_e x_e`, ascending.
    pub witness: Vec<Colour>,
}

impl AuxEdge {
    pub fn pair(&self) -> EdgePair {
        EdgePair::of(self.v, self.x)
    }

    /// The pair `v_e m(x_e)`.
    pub fn cross_pair(&self) -> EdgePair {
        EdgePair::of(self.v, self.m_x)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuxiliaryMatching {
    pub t: usize,
    /// Ordered by the touched edge of `M`.
    pub edges: Vec<AuxEdge>,
}

impl AuxiliaryMatching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `N` as a plain matching.
    pub fn n_matching(&self) -> Result<Matching> {
        Matching::new(self.edges.iter().map(AuxEdge::pair))
    }

    /// `M_N`: the edges of `M` touched by `N`.
    pub fn m_n(&self) -> Vec<EdgePair> {
        self.edges.iter().map(|e| e.m_edge).collect()
    }

    /// `C_N = C(M_N)`.
    pub fn c_n(&self) -> BTreeSet<Colour> {
        self.edges.iter().map(|e| e.m_colour).collect()
    }

    /// The restriction to a subset of its edges, which is again auxiliary.
    pub fn restrict(&self, keep: impl Fn(&AuxEdge) -> bool) -> AuxiliaryMatching {
        AuxiliaryMatching {
            t: self.t,
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }
}

/// Maximum bipartite matching by repeated augmenting paths (Kuhn). `adj[l]`
/// lists right vertices; returns `right -> left` assignments.
pub(crate) fn max_bipartite(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|other| augment(other, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right_count];
    let mut seen = vec![false; right_count];
    for l in 0..adj.len() {
        seen.iter_mut().for_each(|s| *s = false);
        augment(l, adj, &mut seen, &mut owner);
    }
    owner
}

/// Candidate graph of auxiliary pairs: for each edge of `m` (by position),
/// the outside vertices `z` reachable through a pair repeated in at least
/// `t` unused colours, with the endpoint of the edge used and the witness.
pub(crate) fn candidate_graph(
    instance: &Instance,
    m: &RainbowMatching,
    t: usize,
) -> Vec<BTreeMap<Vertex, (Vertex, Vec<Colour>)>> {
    let used_vertices = m.vertex_mask(instance.vertex_count());
    let used_colours = m.colour_set();
    let mut out = Vec::with_capacity(m.len());
    for e in &m.pairs {
        let mut cands: BTreeMap<Vertex, (Vertex, Vec<Colour>)> = BTreeMap::new();
        for x in e.endpoints() {
            let mut outside: BTreeSet<Vertex> = BTreeSet::new();
            for &(c, ci) in instance.memberships(x) {
                if used_colours.contains(&c) {
                    continue;
                }
                for &z in instance.class(c).clique(ci as usize) {
                    if !used_vertices.contains(z) {
                        outside.insert(z);
                    }
                }
            }
            for z in outside {
                if cands.contains_key(&z) {
                    continue; // the smaller endpoint already qualifies
                }
                let witness: Vec<Colour> = instance
                    .pair_colours(EdgePair::of(x, z))
                    .into_iter()
                    .filter(|c| !used_colours.contains(c))
                    .collect();
                if witness.len() >= t {
                    cands.insert(z, (x, witness));
                }
            }
        }
        out.push(cands);
    }
    out
}

/// A maximum `t`-auxiliary matching for `m`, found as a maximum matching
/// between the edges of `m` and the vertices outside `V(m)`.
pub fn find_aux_matching(instance: &Instance, m: &RainbowMatching, t: usize) -> Result<AuxiliaryMatching> {
    instance
        .verify_rainbow(m)
        .map_err(|v| Error::InvalidRainbow(v.to_string()))?;
    if t == 0 {
        return Err(Error::InvalidParameter("threshold t must be at least 1".into()));
    }
    let cands = candidate_graph(instance, m, t);
    let mut right_ids: BTreeMap<Vertex, usize> = BTreeMap::new();
    for c in &cands {
        for &z in c.keys() {
            let next = right_ids.len();
            right_ids.entry(z).or_insert(next);
        }
    }
    let adj: Vec<Vec<usize>> = cands
        .iter()
        .map(|c| c.keys().map(|z| right_ids[z]).collect())
        .collect();
    let owner = max_bipartite(&adj, right_ids.len());
    let mut assigned: Vec<Option<Vertex>> = vec![None; m.len()];
    for (&z, &r) in &right_ids {
        if let Some(l) = owner[r] {
            assigned[l] = Some(z);
        }
    }
    let mut edges: Vec<AuxEdge> = assigned
        .iter()
        .enumerate()
        .filter_map(|(l, z)| {
            let z = (*z)?;
            let (x, witness) = cands[l][&z].clone();
            let e = m.pairs[l];
            Some(AuxEdge {
                m_edge: e,
                m_colour: m.colours[l],
                x,
                m_x: e.other(x).expect("x is an endpoint of e"),
                v: z,
                witness,
            })
        })
        .collect();
    edges.sort_by_key(|e| e.m_edge);
    Ok(AuxiliaryMatching { t, edges })
}
