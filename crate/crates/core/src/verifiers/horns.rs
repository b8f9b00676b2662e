use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::Verdict;
use crate::error::{Error, Result};
use crate::graph::{Colour, EdgePair, Instance, Matching};
use crate::solvers::outside_edges;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HornKind {
    /// Both witness edges have the same colour.
    Mono,
    /// The witness edges have distinct colours.
    Rainbow,
}

/// An edge `e` of a matching with disjoint witness edges `e1` (at `e.a()`)
/// and `e2` (at `e.b()`) leaving the matched vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HornCertificate {
    pub e: EdgePair,
    pub e1: EdgePair,
    pub c1: Colour,
    pub e2: EdgePair,
    pub c2: Colour,
}

impl HornCertificate {
    pub fn kind(&self) -> HornKind {
        if self.c1 == self.c2 {
            HornKind::Mono
        } else {
            HornKind::Rainbow
        }
    }
}

impl fmt::Display for HornCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} c{} / {} c{}", self.e, self.e1, self.c1, self.e2, self.c2)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HornCensus {
    /// Every certificate, ordered by matching edge, then colour and far
    /// endpoint at `e.a()`, then at `e.b()`.
    pub certificates: Vec<HornCertificate>,
    /// Number of monochromatic certificates per (edge, colour).
    pub counts: BTreeMap<(EdgePair, Colour), usize>,
}

impl HornCensus {
    /// Edges of the matching that are `c`-horns.
    pub fn horn_edges(&self, c: Colour) -> usize {
        self.counts.keys().filter(|&&(_, k)| k == c).count()
    }

    pub fn rainbow(&self) -> impl Iterator<Item = &HornCertificate> {
        self.certificates.iter().filter(|h| h.kind() == HornKind::Rainbow)
    }

    pub fn rainbow_at(&self, e: EdgePair) -> Option<&HornCertificate> {
        self.rainbow().find(|h| h.e == e)
    }

    pub fn is_empty(&self) -> bool {
        self.certificates.is_empty()
    }
}

/// Exhaustive horn enumeration for `m`, with witness colours in `colours`.
pub fn horn_census(instance: &Instance, m: &Matching, colours: &BTreeSet<Colour>) -> HornCensus {
    let blocked = m.vertex_mask(instance.vertex_count());
    let mut census = HornCensus::default();
    if colours.is_empty() {
        return census;
    }
    for &e in m.pairs() {
        let at_a = outside_edges(instance, e.a(), &blocked, colours);
        if at_a.is_empty() {
            continue;
        }
        let at_b = outside_edges(instance, e.b(), &blocked, colours);
        for &(c1, z1) in &at_a {
            for &(c2, z2) in &at_b {
                if z1 == z2 {
                    continue;
                }
                if c1 == c2 {
                    *census.counts.entry((e, c1)).or_default() += 1;
                }
                census.certificates.push(HornCertificate {
                    e,
                    e1: EdgePair::of(e.a(), z1),
                    c1,
                    e2: EdgePair::of(e.b(), z2),
                    c2,
                });
            }
        }
    }
    census
}

/// Horn counting: when every colour of `colours` has at least `k` horn edges
/// in `n_matching` and `k|C| > 2|N|`, a rainbow horn must exist.
pub fn check_horn_counting(
    instance: &Instance,
    n_matching: &Matching,
    colours: &BTreeSet<Colour>,
    k: usize,
) -> Verdict {
    if k * colours.len() <= 2 * n_matching.len() {
        return Verdict::Vacuous;
    }
    let census = horn_census(instance, n_matching, colours);
    if colours.iter().any(|&c| census.horn_edges(c) < k) {
        return Verdict::Vacuous;
    }
    let found = census.rainbow().next().cloned();
    match found {
        Some(h) => Verdict::Pass {
            witness: h.to_string(),
        },
        None => Verdict::Violation {
            detail: format!(
                "k={k}, |C|={}, |N|={} and every colour has k horns, but no rainbow horn",
                colours.len(),
                n_matching.len()
            ),
        },
    }
}

/// If `e` is a horn for two colours of the three in `colours` and a third
/// colour of them has an edge from `e` to the unmatched vertices, `e` is a
/// rainbow horn.
pub fn check_observation_horn(
    instance: &Instance,
    m: &Matching,
    e: EdgePair,
    colours: &BTreeSet<Colour>,
) -> Result<Verdict> {
    if colours.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "expected three colours, got {}",
            colours.len()
        )));
    }
    if !m.pairs().contains(&e) {
        return Err(Error::InvalidParameter(format!("{e} is not in the matching")));
    }
    let census = horn_census(instance, m, colours);
    let blocked = m.vertex_mask(instance.vertex_count());
    let horn_colours: BTreeSet<Colour> = census
        .counts
        .keys()
        .filter(|&&(f, _)| f == e)
        .map(|&(_, c)| c)
        .collect();
    let mut hypothesis = false;
    for &c in &horn_colours {
        for &d in horn_colours.range(c + 1..) {
            let third = colours.iter().find(|&&x| x != c && x != d).copied().unwrap();
            let tc = BTreeSet::from([third]);
            if !outside_edges(instance, e.a(), &blocked, &tc).is_empty()
                || !outside_edges(instance, e.b(), &blocked, &tc).is_empty()
            {
                hypothesis = true;
            }
        }
    }
    if !hypothesis {
        return Ok(Verdict::Vacuous);
    }
    Ok(match census.rainbow_at(e) {
        Some(h) => Verdict::Pass {
            witness: h.to_string(),
        },
        None => Verdict::Violation {
            detail: format!("{e} is a horn in two colours with a third-colour edge, but not rainbow"),
        },
    })
}
