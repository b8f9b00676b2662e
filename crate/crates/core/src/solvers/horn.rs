use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Colour, EdgePair, Instance, Maximality, RainbowMatching, Vertex, VertexMask};

/// Coloured pairs from `x` to vertices outside `blocked`, restricted to
/// `colours`, ordered by colour then far endpoint.
pub(crate) fn outside_edges(
    instance: &Instance,
    x: Vertex,
    blocked: &VertexMask,
    colours: &BTreeSet<Colour>,
) -> Vec<(Colour, Vertex)> {
    let mut out = Vec::new();
    for &(c, ci) in instance.memberships(x) {
        if !colours.contains(&c) {
            continue;
        }
        for &z in instance.class(c).clique(ci as usize) {
            if z != x && !blocked.contains(z) {
                out.push((c, z));
            }
        }
    }
    out
}

/// Replaces one edge `e = xy` of `m` by two disjoint pairs `x z1`, `y z2`
/// into the unmatched vertices carrying two distinct unused colours, giving
/// a rainbow matching one larger.
///
/// `m` must be maximal. A maximal matching can still admit this move; a
/// maximum one never does. Returns `None` when no such horn exists.
pub fn horn_augment(instance: &Instance, m: &RainbowMatching) -> Result<Option<RainbowMatching>> {
    if let Maximality::Extendable { pair, colour } = instance.is_maximal(m)? {
        return Err(Error::NotMaximal { pair, colour });
    }
    let blocked = m.vertex_mask(instance.vertex_count());
    let unused: BTreeSet<Colour> = m.unused_colours(instance).into_iter().collect();
    if unused.len() < 2 {
        return Ok(None);
    }
    for (i, e) in m.pairs.iter().enumerate() {
        let at_a = outside_edges(instance, e.a(), &blocked, &unused);
        if at_a.is_empty() {
            continue;
        }
        let at_b = outside_edges(instance, e.b(), &blocked, &unused);
        for &(c1, z1) in &at_a {
            for &(c2, z2) in &at_b {
                if c1 != c2 && z1 != z2 {
                    let mut out = m.clone();
                    out.pairs[i] = EdgePair::of(e.a(), z1);
                    out.colours[i] = c1;
                    out.push(EdgePair::of(e.b(), z2), c2);
                    return Ok(Some(out.canonical()));
                }
            }
        }
    }
    Ok(None)
}
