//! Random small instances and brute-force oracles that only read raw
//! cliques, never the library's own queries.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rainbow_matching::{Colour, EdgePair, Instance, Matching, RainbowMatching, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each colour keeps a random subset of the vertices and splits it into
/// cliques of size `2..=max_clique`.
pub fn random_instance(seed: u64, max_n: usize, max_vertices: usize, max_clique: usize) -> Instance {
    let mut r = rng(seed);
    let n = r.gen_range(1..=max_n);
    let vc = r.gen_range(2..=max_vertices);
    let classes = (0..n)
        .map(|_| {
            let mut vs: Vec<Vertex> = (0..vc as Vertex).filter(|_| r.gen_bool(0.7)).collect();
            vs.shuffle(&mut r);
            let mut cliques = Vec::new();
            let mut rest = &vs[..];
            while rest.len() >= 2 {
                let size = r.gen_range(2..=max_clique.min(rest.len()));
                cliques.push(rest[..size].to_vec());
                rest = &rest[size..];
            }
            cliques
        })
        .collect();
    Instance::from_cliques(vc, classes).unwrap()
}

/// Colours mostly copy one base partition, so pairs repeat often and many
/// colours stay unused by a maximum matching.
pub fn repetitive_instance(seed: u64, max_n: usize, max_vertices: usize) -> Instance {
    let mut r = rng(seed);
    let n = r.gen_range(2..=max_n);
    let vc = r.gen_range(4..=max_vertices);
    let partition = |r: &mut ChaCha8Rng| {
        let mut vs: Vec<Vertex> = (0..vc as Vertex).filter(|_| r.gen_bool(0.6)).collect();
        vs.shuffle(r);
        let mut cliques = Vec::new();
        let mut rest = &vs[..];
        while rest.len() >= 2 {
            let size = r.gen_range(2..=3.min(rest.len()));
            cliques.push(rest[..size].to_vec());
            rest = &rest[size..];
        }
        cliques
    };
    let base = partition(&mut r);
    let classes = (0..n)
        .map(|_| if r.gen_bool(0.7) { base.clone() } else { partition(&mut r) })
        .collect();
    Instance::from_cliques(vc, classes).unwrap()
}

/// Every coloured edge `(a, b, colour)` with `a < b`.
pub fn coloured_edges(inst: &Instance) -> Vec<(Vertex, Vertex, Colour)> {
    let mut out = Vec::new();
    for (c, class) in inst.classes().iter().enumerate() {
        for clique in class.cliques() {
            for (i, &x) in clique.iter().enumerate() {
                for &y in &clique[i + 1..] {
                    out.push((x.min(y), x.max(y), c as Colour));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn has_coloured_edge(inst: &Instance, a: Vertex, b: Vertex, c: Colour) -> bool {
    (c as usize) < inst.n()
        && inst.classes()[c as usize]
            .cliques()
            .any(|k| k.contains(&a) && k.contains(&b) && a != b)
}

/// Definitional rainbow check.
pub fn oracle_is_rainbow(inst: &Instance, rm: &RainbowMatching) -> bool {
    if rm.pairs.len() != rm.colours.len() {
        return false;
    }
    let mut vs = BTreeSet::new();
    let mut cs = BTreeSet::new();
    for (p, &c) in rm.pairs.iter().zip(&rm.colours) {
        if !vs.insert(p.a()) || !vs.insert(p.b()) || !cs.insert(c) {
            return false;
        }
        if !has_coloured_edge(inst, p.a(), p.b(), c) {
            return false;
        }
    }
    true
}

/// Largest rainbow matching by trying every edge of every colour.
pub fn oracle_max_rainbow(inst: &Instance) -> usize {
    let edges = coloured_edges(inst);
    let by_colour: Vec<Vec<(Vertex, Vertex)>> = (0..inst.n())
        .map(|c| edges.iter().filter(|e| e.2 as usize == c).map(|e| (e.0, e.1)).collect())
        .collect();
    fn go(by_colour: &[Vec<(Vertex, Vertex)>], used: &mut BTreeSet<Vertex>) -> usize {
        let Some((first, rest)) = by_colour.split_first() else {
            return 0;
        };
        let mut best = go(rest, used);
        for &(a, b) in first {
            if !used.contains(&a) && !used.contains(&b) {
                used.insert(a);
                used.insert(b);
                best = best.max(1 + go(rest, used));
                used.remove(&a);
                used.remove(&b);
            }
        }
        best
    }
    go(&by_colour, &mut BTreeSet::new())
}

/// All horns `(e, e1, c1, e2, c2)` of `m` with colours in `colours`, by
/// scanning pairs of coloured edges.
pub fn oracle_horns(
    inst: &Instance,
    m: &[EdgePair],
    colours: &BTreeSet<Colour>,
) -> Vec<(EdgePair, EdgePair, Colour, EdgePair, Colour)> {
    let matched: BTreeSet<Vertex> = m.iter().flat_map(|p| [p.a(), p.b()]).collect();
    let edges = coloured_edges(inst);
    let mut out = Vec::new();
    for &e in m {
        for &(x1, y1, c1) in &edges {
            for &(x2, y2, c2) in &edges {
                if !colours.contains(&c1) || !colours.contains(&c2) {
                    continue;
                }
                let leaves = |x: Vertex, y: Vertex, end: Vertex| -> Option<Vertex> {
                    if x == end && !matched.contains(&y) {
                        Some(y)
                    } else if y == end && !matched.contains(&x) {
                        Some(x)
                    } else {
                        None
                    }
                };
                let (Some(z1), Some(z2)) = (leaves(x1, y1, e.a()), leaves(x2, y2, e.b())) else {
                    continue;
                };
                if z1 != z2 {
                    out.push((e, EdgePair::new(x1, y1).unwrap(), c1, EdgePair::new(x2, y2).unwrap(), c2));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Size of a maximum matching in a bipartite graph given by adjacency
/// lists, by trying every choice per left vertex.
pub fn oracle_bipartite(adj: &[Vec<usize>]) -> usize {
    fn go(adj: &[Vec<usize>], used: &mut BTreeSet<usize>) -> usize {
        let Some((first, rest)) = adj.split_first() else {
            return 0;
        };
        let mut best = go(rest, used);
        for &r in first {
            if used.insert(r) {
                best = best.max(1 + go(rest, used));
                used.remove(&r);
            }
        }
        best
    }
    go(adj, &mut BTreeSet::new())
}

/// Candidate graph of `t`-auxiliary pairs: for each edge of `m`, the
/// unmatched vertices joined to one of its endpoints in at least `t`
/// colours unused by `m`.
pub fn oracle_aux_candidates(inst: &Instance, m: &RainbowMatching, t: usize) -> Vec<Vec<usize>> {
    let matched: BTreeSet<Vertex> = m.pairs.iter().flat_map(|p| [p.a(), p.b()]).collect();
    let used: BTreeSet<Colour> = m.colours.iter().copied().collect();
    m.pairs
        .iter()
        .map(|e| {
            (0..inst.vertex_count())
                .filter(|&z| !matched.contains(&(z as Vertex)))
                .filter(|&z| {
                    [e.a(), e.b()].iter().any(|&x| {
                        (0..inst.n() as Colour)
                            .filter(|c| !used.contains(c) && has_coloured_edge(inst, x, z as Vertex, *c))
                            .count()
                            >= t
                    })
                })
                .collect()
        })
        .collect()
}

/// Largest matching inside the clique union `h` with one end in
/// `inner` and the other in `outer`.
pub fn oracle_constrained_matching(h: &[Vec<Vertex>], inner: &BTreeSet<Vertex>, outer: &BTreeSet<Vertex>) -> usize {
    let mut edges = Vec::new();
    for k in h {
        for &x in k {
            for &y in k {
                if inner.contains(&x) && outer.contains(&y) {
                    edges.push((x, y));
                }
            }
        }
    }
    fn go(edges: &[(Vertex, Vertex)], used: &mut BTreeSet<Vertex>) -> usize {
        let Some((&(x, y), rest)) = edges.split_first() else {
            return 0;
        };
        let mut best = go(rest, used);
        if !used.contains(&x) && !used.contains(&y) {
            used.insert(x);
            used.insert(y);
            best = best.max(1 + go(rest, used));
            used.remove(&x);
            used.remove(&y);
        }
        best
    }
    go(&edges, &mut BTreeSet::new())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest partial transversal: any one extends to a permutation of the
/// columns, which then holds one cell per distinct symbol it meets.
pub fn oracle_max_transversal(rows: &[Vec<u32>]) -> usize {
    permutations(rows.len())
        .into_iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(r, &c)| rows[r][c])
                .collect::<BTreeSet<_>>()
                .len()
        })
        .max()
        .unwrap_or(0)
}

/// Generator outputs and random instances with at most 24 vertices.
pub fn corpus() -> Vec<Instance> {
    use rainbow_matching::generators::{gen_double_k4, gen_latin_bridge, gen_triangle_extremal, LatinSquare};
    let mut out: Vec<Instance> = (2..=8).map(|n| gen_triangle_extremal(n).unwrap()).collect();
    out.push(gen_double_k4());
    for (order, c) in [(2, 0), (2, 2), (3, 0), (3, 2), (4, 0), (4, 2), (5, 0)] {
        out.push(gen_latin_bridge(&LatinSquare::cyclic(order), c).unwrap());
    }
    out.extend((0..200).map(|s| random_instance(s, 6, 24, 4)));
    out.extend((0..100).map(|s| repetitive_instance(s, 8, 16)));
    out
}

/// A random `(M, A, H, s)` meeting the triangle-extraction preconditions,
/// or `None` when the drawn `H` covers too little.
pub fn extraction_case(seed: u64) -> Option<(Matching, Vec<Vertex>, Vec<Vec<Vertex>>, usize)> {
    let mut r = rng(seed);
    let m_size = r.gen_range(0..=6);
    let outside = r.gen_range(1..=8) as Vertex;
    let pairs: Vec<EdgePair> = (0..m_size as Vertex).map(|i| EdgePair::new(2 * i, 2 * i + 1).unwrap()).collect();
    let a: Vec<Vertex> = pairs
        .iter()
        .filter_map(|p| match r.gen_range(0..3) {
            0 => Some(p.a()),
            1 => Some(p.b()),
            _ => None,
        })
        .collect();
    let a_set: BTreeSet<Vertex> = a.iter().copied().collect();
    let mut inside: Vec<Vertex> = (0..2 * m_size as Vertex).filter(|v| !a_set.contains(v)).collect();
    let mut free: Vec<Vertex> = a
        .iter()
        .copied()
        .chain(2 * m_size as Vertex..2 * m_size as Vertex + outside)
        .collect();
    inside.shuffle(&mut r);
    free.shuffle(&mut r);
    let mut h = Vec::new();
    while !inside.is_empty() {
        let take = r.gen_range(1..=2.min(inside.len()));
        let mut clique: Vec<Vertex> = inside.drain(..take).collect();
        if !free.is_empty() && r.gen_bool(0.85) {
            clique.push(free.pop().unwrap());
        }
        if clique.len() >= 2 {
            h.push(clique);
        }
    }
    let cover: usize = h.iter().map(Vec::len).sum();
    let s = cover.checked_sub(2 * m_size).filter(|&s| s >= 1)?;
    Some((Matching::new(pairs).unwrap(), a, h, s))
}
