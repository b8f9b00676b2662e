use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Colour, EdgePair, Instance, Vertex, VertexMask};
use crate::error::{Error, Result};

/// Vertex-disjoint set of pairs, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<EdgePair>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = EdgePair>) -> Result<Self> {
        let mut pairs: Vec<EdgePair> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut seen = BTreeSet::new();
        for p in &pairs {
            for v in p.endpoints() {
                if !seen.insert(v) {
                    return Err(Error::InvalidMatching(format!("vertex {v} is covered twice")));
                }
            }
        }
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().flat_map(|p| p.endpoints())
    }

    /// Opposite endpoint of `v` within the matching.
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.pairs.iter().find_map(|p| p.other(v))
    }

    pub fn partner_map(&self) -> BTreeMap<Vertex, Vertex> {
        self.pairs
            .iter()
            .flat_map(|p| [(p.a(), p.b()), (p.b(), p.a())])
            .collect()
    }

    pub fn vertex_mask(&self, vertex_count: usize) -> VertexMask {
        VertexMask::from_vertices(vertex_count, self.vertices().filter(|&v| (v as usize) < vertex_count))
    }
}

/// One coloured edge of a rainbow matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RainbowEdge {
    pub pair: EdgePair,
    pub colour: Colour,
}

/// Pairs with one colour each. Nothing is checked on construction; see
/// [`Instance::verify_rainbow`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RainbowMatching {
    pub pairs: Vec<EdgePair>,
    pub colours: Vec<Colour>,
}

impl RainbowMatching {
    pub fn new(pairs: Vec<EdgePair>, colours: Vec<Colour>) -> Self {
        RainbowMatching { pairs, colours }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn push(&mut self, pair: EdgePair, colour: Colour) {
        self.pairs.push(pair);
        self.colours.push(colour);
    }

    pub fn edges(&self) -> impl Iterator<Item = RainbowEdge> + '_ {
        self.pairs
            .iter()
            .zip(&self.colours)
            .map(|(&pair, &colour)| RainbowEdge { pair, colour })
    }

    /// Same edges, ordered by colour.
    pub fn canonical(&self) -> Self {
        let mut edges: Vec<RainbowEdge> = self.edges().collect();
        edges.sort_by_key(|e| (e.colour, e.pair));
        RainbowMatching {
            pairs: edges.iter().map(|e| e.pair).collect(),
            colours: edges.iter().map(|e| e.colour).collect(),
        }
    }

    pub fn colour_set(&self) -> BTreeSet<Colour> {
        self.colours.iter().copied().collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.pairs.iter().flat_map(|p| p.endpoints())
    }

    pub fn vertex_mask(&self, vertex_count: usize) -> VertexMask {
        VertexMask::from_vertices(vertex_count, self.vertices().filter(|&v| (v as usize) < vertex_count))
    }

    pub fn colour_of(&self, pair: EdgePair) -> Option<Colour> {
        self.edges().find(|e| e.pair == pair).map(|e| e.colour)
    }

    /// Drops the colours; fails if the pairs intersect.
    pub fn to_matching(&self) -> Result<Matching> {
        Matching::new(self.pairs.iter().copied())
    }

    /// Colours of `instance` not used here, ascending.
    pub fn unused_colours(&self, instance: &Instance) -> Vec<Colour> {
        let used = self.colour_set();
        instance.colours().filter(|c| !used.contains(c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RainbowViolation {
    LengthMismatch { pairs: usize, colours: usize },
    ColourOutOfRange(Colour),
    VertexOutOfRange(Vertex),
    DuplicateColour(Colour),
    SharedVertex(Vertex),
    PairNotInClass { pair: EdgePair, colour: Colour },
}

impl fmt::Display for RainbowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainbowViolation::LengthMismatch { pairs, colours } => {
                write!(f, "length mismatch: {pairs} pairs, {colours} colours")
            }
            RainbowViolation::ColourOutOfRange(c) => write!(f, "colour {c} out of range"),
            RainbowViolation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            RainbowViolation::DuplicateColour(c) => write!(f, "duplicate colour {c}"),
            RainbowViolation::SharedVertex(v) => write!(f, "pairs not disjoint at vertex {v}"),
            RainbowViolation::PairNotInClass { pair, colour } => {
                write!(f, "pair not in colour class: {pair} in colour {colour}")
            }
        }
    }
}

pub(super) fn verify(inst: &Instance, rm: &RainbowMatching) -> std::result::Result<(), RainbowViolation> {
    if rm.pairs.len() != rm.colours.len() {
        return Err(RainbowViolation::LengthMismatch {
            pairs: rm.pairs.len(),
            colours: rm.colours.len(),
        });
    }
    let mut colours = BTreeSet::new();
    let mut vertices = BTreeSet::new();
    for e in rm.edges() {
        if e.colour as usize >= inst.n() {
            return Err(RainbowViolation::ColourOutOfRange(e.colour));
        }
        for v in e.pair.endpoints() {
            if v as usize >= inst.vertex_count() {
                return Err(RainbowViolation::VertexOutOfRange(v));
            }
        }
        if !colours.insert(e.colour) {
            return Err(RainbowViolation::DuplicateColour(e.colour));
        }
        for v in e.pair.endpoints() {
            if !vertices.insert(v) {
                return Err(RainbowViolation::SharedVertex(v));
            }
        }
        if !inst.has_edge(e.pair, e.colour) {
            return Err(RainbowViolation::PairNotInClass {
                pair: e.pair,
                colour: e.colour,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_triangle_extremal;

    fn p(a: Vertex, b: Vertex) -> EdgePair {
        EdgePair::of(a, b)
    }

    #[test]
    fn one_edge_per_triangle() {
        let g = gen_triangle_extremal(4).unwrap();
        let rm = RainbowMatching::new(vec![p(0, 1), p(4, 5), p(6, 8)], vec![2, 0, 3]);
        assert_eq!(g.verify_rainbow(&rm), Ok(()));
    }

    #[test]
    fn repeated_colour() {
        let g = gen_triangle_extremal(4).unwrap();
        let rm = RainbowMatching::new(vec![p(0, 1), p(4, 5)], vec![1, 1]);
        let err = g.verify_rainbow(&rm).unwrap_err();
        assert_eq!(err, RainbowViolation::DuplicateColour(1));
        assert!(err.to_string().starts_with("duplicate colour"));
    }

    #[test]
    fn pair_outside_class() {
        let g = gen_triangle_extremal(4).unwrap();
        let rm = RainbowMatching::new(vec![p(0, 3)], vec![0]);
        let err = g.verify_rainbow(&rm).unwrap_err();
        assert!(err.to_string().starts_with("pair not in colour class"));
    }

    #[test]
    fn shared_vertex_and_ranges() {
        let g = gen_triangle_extremal(4).unwrap();
        let rm = RainbowMatching::new(vec![p(0, 1), p(1, 2)], vec![0, 1]);
        assert_eq!(g.verify_rainbow(&rm), Err(RainbowViolation::SharedVertex(1)));
        let rm = RainbowMatching::new(vec![p(0, 1)], vec![4]);
        assert_eq!(g.verify_rainbow(&rm), Err(RainbowViolation::ColourOutOfRange(4)));
        let rm = RainbowMatching::new(vec![p(0, 1)], vec![]);
        assert!(matches!(g.verify_rainbow(&rm), Err(RainbowViolation::LengthMismatch { .. })));
    }

    #[test]
    fn matching_rejects_shared_vertex() {
        assert!(Matching::new([p(0, 1), p(1, 2)]).is_err());
        let m = Matching::new([p(2, 3), p(0, 1)]).unwrap();
        assert_eq!(m.pairs(), &[p(0, 1), p(2, 3)]);
        assert_eq!(m.partner(3), Some(2));
        assert_eq!(m.partner(4), None);
    }
}
