//! Instance model: colour classes made of vertex-disjoint cliques, matchings
//! and rainbow matchings over them.

mod instance;
mod matching;
mod pair;
mod validate;

pub use instance::{ColourClass, Instance, Maximality};
pub use matching::{Matching, RainbowEdge, RainbowMatching, RainbowViolation};
pub use pair::EdgePair;
pub use validate::{Violation, ViolationKind};

/// Dense, zero-based vertex id. Only meaningful relative to one instance.
pub type Vertex = u32;

/// Colour id in `0..n`.
pub type Colour = u32;

/// Membership mask over the vertices of an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMask(Vec<bool>);

impl VertexMask {
    pub fn new(vertex_count: usize) -> Self {
        VertexMask(vec![false; vertex_count])
    }

    pub fn from_vertices(vertex_count: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut mask = Self::new(vertex_count);
        for v in vertices {
            mask.insert(v);
        }
        mask
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.0.get(v as usize).copied().unwrap_or(false)
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.0[v as usize] = true;
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.0[v as usize] = false;
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| v as Vertex)
    }
}
