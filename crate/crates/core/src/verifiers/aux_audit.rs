use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::horns::horn_census;
use crate::error::{Error, Result};
use crate::graph::{Colour, EdgePair, Instance, Matching, RainbowMatching};
use crate::solvers::{outside_edges, AuxiliaryMatching};

/// Threshold from which the structural audits apply.
pub const AUDIT_MIN_T: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuxClause {
    NotRainbow,
    UnknownMEdge,
    WrongMColour,
    BadEndpoints,
    VOutsideRange,
    VInsideM,
    SharedMEdge,
    SharedOutsideVertex,
    ShortWitness,
    UnsortedWitness,
    WitnessColourUsed,
    WitnessColourMissing,
    /// A colour of `C_0 ∪ C_N` has an edge avoiding `N ∪ (M - M_N)`.
    DisjointEdge,
    /// `N ∪ (M - M_N)` has a `(C_0 ∪ C_N)`-rainbow horn.
    RainbowHorn,
    /// An edge `v_e z` leaving the matching with `z != m(x_e)` in a colour
    /// other than `c(e)`.
    StrayEdge,
}

impl AuxClause {
    /// Clauses that only a maximum `M` guarantees.
    pub fn is_audit(&self) -> bool {
        matches!(self, AuxClause::DisjointEdge | AuxClause::RainbowHorn | AuxClause::StrayEdge)
    }

    fn label(&self) -> &'static str {
        match self {
            AuxClause::NotRainbow => "M is not a rainbow matching",
            AuxClause::UnknownMEdge => "M-edge not in M",
            AuxClause::WrongMColour => "wrong colour for M-edge",
            AuxClause::BadEndpoints => "x_e/m(x_e) inconsistent with M-edge",
            AuxClause::VOutsideRange => "v_e out of range",
            AuxClause::VInsideM => "v_e inside V(M)",
            AuxClause::SharedMEdge => "shared M-edge",
            AuxClause::SharedOutsideVertex => "N not a matching",
            AuxClause::ShortWitness => "fewer than t witness colours",
            AuxClause::UnsortedWitness => "witness colours not strictly ascending",
            AuxClause::WitnessColourUsed => "witness colour used by M",
            AuxClause::WitnessColourMissing => "witness colour does not contain the pair",
            AuxClause::DisjointEdge => "edge disjoint from N and M - M_N",
            AuxClause::RainbowHorn => "rainbow horn in N and M - M_N",
            AuxClause::StrayEdge => "edge at v_e leaves to a stray vertex",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxViolation {
    pub clause: AuxClause,
    pub detail: String,
}

impl fmt::Display for AuxViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.clause.label(), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuxReport {
    /// Whether the structural audits ran.
    pub audited: bool,
    pub violations: Vec<AuxViolation>,
}

impl AuxReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, clause: AuxClause, detail: impl Into<String>) {
        self.violations.push(AuxViolation {
            clause,
            detail: detail.into(),
        });
    }
}

/// Checks every defining property of `aux` against `m`. When `m` is known
/// to be a maximum rainbow matching and `t >= 5`, also checks that no
/// `(C_0 ∪ C_N)`-coloured edge avoids `P = N ∪ (M - M_N)`, that `P` has no
/// such rainbow horn, and that edges `v_e z` leaving `P` go to `m(x_e)` or
/// have colour `c(e)`. Any audit hit on a maximum `m` is a bug.
pub fn validate_aux(
    instance: &Instance,
    m: &RainbowMatching,
    aux: &AuxiliaryMatching,
    certified_maximum: bool,
) -> AuxReport {
    let mut report = AuxReport::default();
    if let Err(v) = instance.verify_rainbow(m) {
        report.push(AuxClause::NotRainbow, v.to_string());
        return report;
    }
    let used = m.colour_set();
    let in_m = m.vertex_mask(instance.vertex_count());
    let mut seen_edges = BTreeSet::new();
    let mut seen_v = BTreeSet::new();
    for a in &aux.edges {
        let at = format!("N-edge at {}", a.m_edge);
        match m.colour_of(a.m_edge) {
            None => report.push(AuxClause::UnknownMEdge, at.clone()),
            Some(c) if c != a.m_colour => report.push(
                AuxClause::WrongMColour,
                format!("{at}: recorded {}, actual {c}", a.m_colour),
            ),
            Some(_) => {}
        }
        if !a.m_edge.contains(a.x) || a.m_edge.other(a.x) != Some(a.m_x) {
            report.push(AuxClause::BadEndpoints, at.clone());
        }
        if a.v as usize >= instance.vertex_count() {
            report.push(AuxClause::VOutsideRange, format!("{at}: v_e = {}", a.v));
            continue;
        }
        if in_m.contains(a.v) {
            report.push(AuxClause::VInsideM, format!("{at}: v_e = {}", a.v));
        }
        if !seen_edges.insert(a.m_edge) {
            report.push(AuxClause::SharedMEdge, at.clone());
        }
        if !seen_v.insert(a.v) {
            report.push(AuxClause::SharedOutsideVertex, format!("{at}: v_e = {}", a.v));
        }
        if a.witness.len() < aux.t {
            report.push(
                AuxClause::ShortWitness,
                format!("{at}: {} < {}", a.witness.len(), aux.t),
            );
        }
        if a.witness.windows(2).any(|w| w[0] >= w[1]) {
            report.push(AuxClause::UnsortedWitness, at.clone());
        }
        for &c in &a.witness {
            if used.contains(&c) {
                report.push(AuxClause::WitnessColourUsed, format!("{at}: colour {c}"));
            } else if (c as usize) >= instance.n() || !instance.has_edge(a.pair(), c) {
                report.push(AuxClause::WitnessColourMissing, format!("{at}: colour {c}"));
            }
        }
    }
    if !report.passed() || !certified_maximum || aux.t < AUDIT_MIN_T {
        return report;
    }

    report.audited = true;
    let mut colours: BTreeSet<Colour> = m.unused_colours(instance).into_iter().collect();
    colours.extend(aux.c_n());
    let touched = aux.c_n();
    let p_pairs: Vec<EdgePair> = aux
        .edges
        .iter()
        .map(|a| a.pair())
        .chain(
            m.edges()
                .filter(|e| !touched.contains(&e.colour))
                .map(|e| e.pair),
        )
        .collect();
    let p = Matching::new(p_pairs).expect("N and M - M_N are disjoint");
    let blocked = p.vertex_mask(instance.vertex_count());

    for &c in &colours {
        for clique in instance.class(c).cliques() {
            let free: Vec<_> = clique.iter().filter(|&&v| !blocked.contains(v)).collect();
            if free.len() >= 2 {
                report.push(
                    AuxClause::DisjointEdge,
                    format!("{} in colour {c}", EdgePair::of(*free[0], *free[1])),
                );
            }
        }
    }
    if let Some(h) = horn_census(instance, &p, &colours).rainbow().next() {
        report.push(AuxClause::RainbowHorn, h.to_string());
    }
    for a in &aux.edges {
        for (c, z) in outside_edges(instance, a.v, &blocked, &colours) {
            if z != a.m_x && c != a.m_colour {
                report.push(
                    AuxClause::StrayEdge,
                    format!("{} in colour {c} at {}", EdgePair::of(a.v, z), a.m_edge),
                );
            }
        }
    }
    report
}

/// `N_α`: the edges of `aux` whose pair `v_e m(x_e)` lies in at most
/// `α |C_N|` colours of `C_N`.
pub fn compute_n_alpha(instance: &Instance, aux: &AuxiliaryMatching, alpha: f64) -> Result<AuxiliaryMatching> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let c_n = aux.c_n();
    let limit = alpha * c_n.len() as f64;
    Ok(aux.restrict(|a| {
        let repeats = c_n
            .iter()
            .filter(|&&c| instance.has_edge(a.cross_pair(), c))
            .count();
        repeats as f64 <= limit
    }))
}
