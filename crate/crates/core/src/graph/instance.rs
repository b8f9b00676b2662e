use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::matching::RainbowMatching;
use super::validate::{self, Violation};
use super::{Colour, EdgePair, Vertex, VertexMask};
use crate::error::{Error, Result};

/// One colour class: a list of vertex-disjoint cliques.
///
/// Cliques are kept in a flat buffer. Vertices inside a clique are sorted
/// ascending and cliques are ordered by their smallest vertex, so two classes
/// with the same cliques compare equal regardless of input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourClass {
    colour: Colour,
    starts: Vec<u32>,
    members: Vec<Vertex>,
}

impl ColourClass {
    pub fn new<I, C>(colour: Colour, cliques: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[Vertex]>,
    {
        let mut sorted: Vec<Vec<Vertex>> = cliques
            .into_iter()
            .map(|c| {
                let mut c = c.as_ref().to_vec();
                c.sort_unstable();
                c
            })
            .collect();
        sorted.sort();
        let mut class = ColourClass {
            colour,
            starts: Vec::with_capacity(sorted.len() + 1),
            members: Vec::with_capacity(sorted.iter().map(Vec::len).sum()),
        };
        class.starts.push(0);
        for clique in sorted {
            class.members.extend_from_slice(&clique);
            class.starts.push(class.members.len() as u32);
        }
        class
    }

    /// Builds a class from cliques that are already sorted internally and
    /// ordered by first vertex. Skips the sort; used by the bulk generators.
    pub(crate) fn from_sorted_parts(colour: Colour, starts: Vec<u32>, members: Vec<Vertex>) -> Self {
        debug_assert_eq!(starts.first(), Some(&0));
        debug_assert_eq!(*starts.last().unwrap() as usize, members.len());
        ColourClass {
            colour,
            starts,
            members,
        }
    }

    pub fn empty(colour: Colour) -> Self {
        ColourClass {
            colour,
            starts: vec![0],
            members: Vec::new(),
        }
    }

    #[inline]
    pub fn colour(&self) -> Colour {
        self.colour
    }

    #[inline]
    pub fn clique_count(&self) -> usize {
        self.starts.len() - 1
    }

    #[inline]
    pub fn clique(&self, i: usize) -> &[Vertex] {
        &self.members[self.starts[i] as usize..self.starts[i + 1] as usize]
    }

    pub fn cliques(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.starts
            .windows(2)
            .map(move |w| &self.members[w[0] as usize..w[1] as usize])
    }

    /// Total number of vertices covered by the class.
    #[inline]
    pub fn cover(&self) -> usize {
        self.members.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    /// Number of pairs (edges) in the class.
    pub fn edge_count(&self) -> usize {
        self.cliques().map(|c| c.len() * c.len().saturating_sub(1) / 2).sum()
    }

    /// All pairs of the class in canonical (lexicographic) order.
    pub fn sorted_pairs(&self) -> Vec<EdgePair> {
        let mut pairs = Vec::with_capacity(self.edge_count());
        for clique in self.cliques() {
            for (i, &x) in clique.iter().enumerate() {
                for &y in &clique[i + 1..] {
                    if x != y {
                        pairs.push(EdgePair::of(x, y));
                    }
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// Smallest pair of the class with both endpoints outside `blocked`.
    pub fn first_free_pair(&self, blocked: &VertexMask) -> Option<EdgePair> {
        let mut best: Option<EdgePair> = None;
        for clique in self.cliques() {
            // cliques are sorted by their smallest vertex
            if best.is_some_and(|b| clique[0] > b.a()) {
                break;
            }
            let mut free = clique.iter().copied().filter(|&v| !blocked.contains(v));
            if let (Some(x), Some(y)) = (free.next(), free.next()) {
                let p = EdgePair::of(x, y);
                if best.is_none_or(|b| p < b) {
                    best = Some(p);
                }
            }
        }
        best
    }
}

/// Per-vertex list of `(colour, clique index)` memberships, sorted by colour.
#[derive(Debug)]
struct VertexIndex {
    starts: Vec<u64>,
    entries: Vec<(Colour, u32)>,
}

impl VertexIndex {
    fn build(vertex_count: usize, classes: &[ColourClass]) -> Self {
        let mut degree = vec![0u64; vertex_count + 1];
        for class in classes {
            for v in class.vertices() {
                if (v as usize) < vertex_count {
                    degree[v as usize + 1] += 1;
                }
            }
        }
        for i in 0..vertex_count {
            degree[i + 1] += degree[i];
        }
        let starts = degree;
        let mut fill = starts.clone();
        let mut entries = vec![(0, 0); starts[vertex_count] as usize];
        // classes are visited in colour order, so each vertex's entries stay sorted by colour
        for class in classes {
            for (ci, clique) in class.cliques().enumerate() {
                for &v in clique {
                    if (v as usize) < vertex_count {
                        let slot = &mut fill[v as usize];
                        entries[*slot as usize] = (class.colour(), ci as u32);
                        *slot += 1;
                    }
                }
            }
        }
        VertexIndex { starts, entries }
    }

    #[inline]
    fn of(&self, v: Vertex) -> &[(Colour, u32)] {
        &self.entries[self.starts[v as usize] as usize..self.starts[v as usize + 1] as usize]
    }
}

/// Outcome of a maximality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    /// A pair of an unused colour, disjoint from the matching.
    Extendable { pair: EdgePair, colour: Colour },
}

impl Maximality {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }
}

/// An `n`-edge-coloured multigraph whose colour classes are disjoint unions
/// of non-trivial cliques.
///
/// Instances are immutable once built. The per-vertex membership index used
/// by pair queries is built on first use.
#[derive(Debug)]
pub struct Instance {
    vertex_count: usize,
    classes: Vec<ColourClass>,
    normalized: bool,
    index: OnceLock<VertexIndex>,
}

impl Clone for Instance {
    fn clone(&self) -> Self {
        Instance {
            vertex_count: self.vertex_count,
            classes: self.classes.clone(),
            normalized: self.normalized,
            index: OnceLock::new(),
        }
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.classes == other.classes
    }
}

impl Eq for Instance {}

impl Instance {
    /// Builds and validates an instance; `classes[c]` must carry colour `c`.
    pub fn new(vertex_count: usize, classes: Vec<ColourClass>) -> Result<Self> {
        let inst = Self::new_unchecked(vertex_count, classes);
        match inst.validate().into_iter().next() {
            None => Ok(inst),
            Some(v) => Err(Error::InvalidInstance(v.to_string())),
        }
    }

    /// Builds an instance without checking invariants. Use [`Instance::validate`]
    /// to inspect the result.
    pub fn new_unchecked(vertex_count: usize, classes: Vec<ColourClass>) -> Self {
        let normalized = classes
            .iter()
            .all(|c| c.cliques().all(|q| q.len() == 2 || q.len() == 3));
        Instance {
            vertex_count,
            classes,
            normalized,
            index: OnceLock::new(),
        }
    }

    /// Convenience constructor from nested vectors, one entry per colour.
    pub fn from_cliques(vertex_count: usize, classes: Vec<Vec<Vec<Vertex>>>) -> Result<Self> {
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(c, cliques)| ColourClass::new(c as Colour, cliques))
            .collect();
        Self::new(vertex_count, classes)
    }

    /// Number of colours.
    #[inline]
    pub fn n(&self) -> usize {
        self.classes.len()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    #[inline]
    pub fn classes(&self) -> &[ColourClass] {
        &self.classes
    }

    #[inline]
    pub fn class(&self, c: Colour) -> &ColourClass {
        &self.classes[c as usize]
    }

    /// True when every clique is a `K2` or a `K3`.
    #[inline]
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn colours(&self) -> impl Iterator<Item = Colour> {
        0..self.classes.len() as Colour
    }

    pub fn cover(&self, c: Colour) -> usize {
        self.class(c).cover()
    }

    pub fn min_cover(&self) -> usize {
        self.classes.iter().map(ColourClass::cover).min().unwrap_or(0)
    }

    /// Largest pair multiplicity over the whole instance.
    pub fn max_multiplicity(&self) -> usize {
        let index = self.index();
        let mut best = 0;
        let mut counts = vec![0usize; self.vertex_count];
        for x in 0..self.vertex_count as Vertex {
            let mut touched = Vec::new();
            for &(c, ci) in index.of(x) {
                for &y in self.class(c).clique(ci as usize) {
                    if y > x {
                        if counts[y as usize] == 0 {
                            touched.push(y);
                        }
                        counts[y as usize] += 1;
                    }
                }
            }
            for y in touched {
                best = best.max(counts[y as usize]);
                counts[y as usize] = 0;
            }
        }
        best
    }

    fn index(&self) -> &VertexIndex {
        self.index
            .get_or_init(|| VertexIndex::build(self.vertex_count, &self.classes))
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self)
    }

    /// Splits every clique into edges plus at most one leading triangle.
    ///
    /// Odd cliques become `{v0,v1,v2}` followed by consecutive pairs; even
    /// cliques become consecutive pairs. The cover of every colour is unchanged.
    pub fn normalize(&self) -> Result<Instance> {
        if let Some(v) = self.validate().into_iter().next() {
            return Err(Error::InvalidInstance(v.to_string()));
        }
        let classes = self
            .classes
            .iter()
            .map(|class| {
                let mut parts: Vec<&[Vertex]> = Vec::new();
                for clique in class.cliques() {
                    let rest = if clique.len() % 2 == 1 {
                        parts.push(&clique[..3]);
                        &clique[3..]
                    } else {
                        clique
                    };
                    parts.extend(rest.chunks(2));
                }
                ColourClass::new(class.colour(), parts)
            })
            .collect();
        let mut out = Instance::new_unchecked(self.vertex_count, classes);
        out.normalized = true;
        Ok(out)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// `(colour, clique index)` for every class that covers `v`, by colour.
    pub fn memberships(&self, v: Vertex) -> &[(Colour, u32)] {
        self.index().of(v)
    }

    /// Index of the clique of colour `c` containing `v`.
    pub fn clique_of(&self, v: Vertex, c: Colour) -> Option<usize> {
        let list = self.index().of(v);
        list.binary_search_by_key(&c, |&(col, _)| col)
            .ok()
            .map(|i| list[i].1 as usize)
    }

    /// The clique of colour `c` containing `v` (including `v` itself), or empty.
    pub fn clique_at(&self, v: Vertex, c: Colour) -> &[Vertex] {
        match self.clique_of(v, c) {
            Some(i) => self.class(c).clique(i),
            None => &[],
        }
    }

    /// True when the pair lies inside one clique of colour `c`.
    pub fn has_edge(&self, pair: EdgePair, c: Colour) -> bool {
        match (self.clique_of(pair.a(), c), self.clique_of(pair.b(), c)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// Colours whose class contains the pair, ascending.
    pub fn pair_colours(&self, pair: EdgePair) -> Vec<Colour> {
        let index = self.index();
        let (xs, ys) = (index.of(pair.a()), index.of(pair.b()));
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < xs.len() && j < ys.len() {
            match xs[i].0.cmp(&ys[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if xs[i].1 == ys[j].1 {
                        out.push(xs[i].0);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Number of colours whose class contains both endpoints in one clique.
    pub fn pair_multiplicity(&self, pair: EdgePair) -> Result<usize> {
        self.check_vertex(pair.a())?;
        self.check_vertex(pair.b())?;
        Ok(self.pair_colours(pair).len())
    }

    /// Coloured pairs with one endpoint in `x` and the other in `y`, restricted
    /// to `colours`. Ordered by colour, then canonical pair.
    pub fn edges_between(
        &self,
        x: &[Vertex],
        y: &[Vertex],
        colours: &[Colour],
    ) -> Vec<(EdgePair, Colour)> {
        let xm = VertexMask::from_vertices(self.vertex_count, x.iter().copied().filter(|&v| (v as usize) < self.vertex_count));
        let ym = VertexMask::from_vertices(self.vertex_count, y.iter().copied().filter(|&v| (v as usize) < self.vertex_count));
        let wanted: BTreeSet<Colour> = colours
            .iter()
            .copied()
            .filter(|&c| (c as usize) < self.n())
            .collect();
        let mut out = Vec::new();
        for c in wanted {
            for p in self.class(c).sorted_pairs() {
                let (a, b) = (p.a(), p.b());
                if (xm.contains(a) && ym.contains(b)) || (xm.contains(b) && ym.contains(a)) {
                    out.push((p, c));
                }
            }
        }
        out
    }

    /// Checks every rainbow-matching invariant against this instance.
    pub fn verify_rainbow(&self, rm: &RainbowMatching) -> std::result::Result<(), super::RainbowViolation> {
        super::matching::verify(self, rm)
    }

    /// Looks for a pair of an unused colour that is disjoint from `rm`. The
    /// witness is the lowest colour, then the smallest pair.
    pub fn is_maximal(&self, rm: &RainbowMatching) -> Result<Maximality> {
        self.verify_rainbow(rm)
            .map_err(|v| Error::InvalidRainbow(v.to_string()))?;
        let used = rm.vertex_mask(self.vertex_count);
        let colours_used: BTreeSet<Colour> = rm.colours.iter().copied().collect();
        for c in self.colours() {
            if colours_used.contains(&c) {
                continue;
            }
            if let Some(pair) = self.class(c).first_free_pair(&used) {
                return Ok(Maximality::Extendable { pair, colour: c });
            }
        }
        Ok(Maximality::Maximal)
    }

    /// The sub-instance induced on the vertices outside `removed`. Vertex ids
    /// are kept; cliques that shrink below two vertices disappear.
    pub fn without_vertices(&self, removed: &VertexMask) -> Instance {
        let classes = self
            .classes
            .iter()
            .map(|class| {
                let mut starts = vec![0u32];
                let mut members = Vec::with_capacity(class.cover());
                for clique in class.cliques() {
                    let before = members.len();
                    members.extend(clique.iter().copied().filter(|&v| !removed.contains(v)));
                    if members.len() - before < 2 {
                        members.truncate(before);
                    } else {
                        starts.push(members.len() as u32);
                    }
                }
                // dropping vertices can reorder cliques by their first member
                let mut cliques: Vec<(u32, u32)> = starts.windows(2).map(|w| (w[0], w[1])).collect();
                if cliques.windows(2).any(|w| members[w[0].0 as usize] > members[w[1].0 as usize]) {
                    cliques.sort_by_key(|&(s, _)| members[s as usize]);
                    let mut s2 = vec![0u32];
                    let mut m2 = Vec::with_capacity(members.len());
                    for (s, e) in cliques {
                        m2.extend_from_slice(&members[s as usize..e as usize]);
                        s2.push(m2.len() as u32);
                    }
                    ColourClass::from_sorted_parts(class.colour(), s2, m2)
                } else {
                    ColourClass::from_sorted_parts(class.colour(), starts, members)
                }
            })
            .collect();
        Instance::new_unchecked(self.vertex_count, classes)
    }

    /// Vertices covered by at least one colour class.
    pub fn covered_vertices(&self) -> VertexMask {
        let mut mask = VertexMask::new(self.vertex_count);
        for class in &self.classes {
            for v in class.vertices() {
                if (v as usize) < self.vertex_count {
                    mask.insert(v);
                }
            }
        }
        mask
    }
}
