use crate::error::{Error, Result};
use crate::graph::{Instance, RainbowMatching, VertexMask};

/// Extends `start` to a maximal rainbow matching: unused colours are taken
/// in ascending order, each adding its smallest pair that avoids the
/// matching so far.
///
/// When every unused colour covers at least `4n - 3` vertices this always
/// reaches size `n`: a matching of size at most `n - 1` covers at most
/// `2n - 2` vertices, each clique with at most one free vertex contains one
/// of them, so such cliques hold at most `4n - 4` vertices of the class.
pub fn greedy_extend(instance: &Instance, start: &RainbowMatching) -> Result<RainbowMatching> {
    instance
        .verify_rainbow(start)
        .map_err(|v| Error::InvalidRainbow(v.to_string()))?;
    let blocked = start.vertex_mask(instance.vertex_count());
    Ok(greedy_fill(instance, start, blocked))
}

/// Greedy extension that never uses a vertex of `blocked`. Vertices of
/// `start` must already be in `blocked`.
pub(crate) fn greedy_fill(instance: &Instance, start: &RainbowMatching, mut blocked: VertexMask) -> RainbowMatching {
    let mut rm = start.clone();
    for c in start.unused_colours(instance) {
        if let Some(pair) = instance.class(c).first_free_pair(&blocked) {
            blocked.insert(pair.a());
            blocked.insert(pair.b());
            rm.push(pair, c);
        }
    }
    rm
}
