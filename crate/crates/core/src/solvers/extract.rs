use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{ColourClass, EdgePair, Matching, Vertex};

/// Builds a matching inside the clique union `h` whose pairs join
/// `V(M) - (A ∪ m(A))` to `A ∪ (V - V(M))`.
///
/// With `S = V(M) - A`, no clique of `h` has two vertices outside `S`, so
/// each vertex of `h` outside `S` has all its clique-mates in `S` and the
/// pairs chosen from distinct cliques are disjoint. Each such vertex is paired
/// with its smallest clique-mate in `S - m(A)`; vertices with no such mate
/// are dropped. At most `|A|` are dropped, so the result has at least `s`
/// pairs whenever `h` covers `2|M| + s` vertices. It is also the largest
/// matching satisfying the endpoint condition: every admissible pair uses
/// the unique outside vertex of its clique.
pub fn extract_matching_triangles(
    m: &Matching,
    a: &[Vertex],
    h: &ColourClass,
    s: usize,
) -> Result<Matching> {
    if s == 0 {
        return Err(Error::Precondition("target size s must be at least 1".into()));
    }
    let partner: BTreeMap<Vertex, Vertex> = m.partner_map();
    let a_set: BTreeSet<Vertex> = a.iter().copied().collect();
    let mut m_of_a = BTreeSet::new();
    for &x in &a_set {
        match partner.get(&x) {
            Some(&y) => {
                m_of_a.insert(y);
            }
            None => {
                return Err(Error::Precondition(format!("vertex {x} of A is not covered by M")));
            }
        }
    }
    if let Some(x) = a_set.intersection(&m_of_a).next() {
        return Err(Error::Precondition(format!(
            "A and m(A) intersect at vertex {x}"
        )));
    }
    let in_s = |v: Vertex| partner.contains_key(&v) && !a_set.contains(&v);

    let mut seen = BTreeSet::new();
    for (k, clique) in h.cliques().enumerate() {
        if clique.len() < 2 {
            return Err(Error::Precondition(format!("clique {k} of H is trivial")));
        }
        for &v in clique {
            if !seen.insert(v) {
                return Err(Error::Precondition(format!("vertex {v} lies in two cliques of H")));
            }
        }
        let outside: Vec<Vertex> = clique.iter().copied().filter(|&v| !in_s(v)).collect();
        if outside.len() >= 2 {
            return Err(Error::Precondition(format!(
                "H has the edge {} inside A ∪ (V - V(M))",
                EdgePair::of(outside[0], outside[1])
            )));
        }
    }
    let needed = 2 * m.len() + s;
    if h.cover() < needed {
        return Err(Error::Precondition(format!(
            "H covers {} vertices, fewer than 2|M| + s = {needed}",
            h.cover()
        )));
    }

    let mut pairs = Vec::new();
    for clique in h.cliques() {
        let Some(&u) = clique.iter().find(|&&v| !in_s(v)) else {
            continue;
        };
        if let Some(&w) = clique.iter().find(|&&w| in_s(w) && !m_of_a.contains(&w)) {
            pairs.push(EdgePair::of(u, w));
        }
    }
    debug_assert!(pairs.len() >= s);
    Matching::new(pairs)
}
