use std::fmt;

use super::{Colour, Instance, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `classes[i]` carries a different colour id than `i`.
    ColourMismatch { found: Colour },
    TrivialClique { size: usize },
    DuplicateVertex(Vertex),
    VertexOutOfRange(Vertex),
    /// `vertex` also lies in clique `other` of the same colour.
    OverlappingCliques { vertex: Vertex, other: usize },
}

/// One broken invariant, located by class position and clique index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub colour: Colour,
    pub clique: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::ColourMismatch { found } => write!(
                f,
                "class at position {} has colour id {found}",
                self.colour
            ),
            ViolationKind::TrivialClique { size } => write!(
                f,
                "trivial clique in colour {}, clique {} (size {size})",
                self.colour,
                self.clique.unwrap_or(0)
            ),
            ViolationKind::DuplicateVertex(v) => write!(
                f,
                "duplicate vertex {v} in colour {}, clique {}",
                self.colour,
                self.clique.unwrap_or(0)
            ),
            ViolationKind::VertexOutOfRange(v) => write!(
                f,
                "vertex {v} out of range in colour {}, clique {}",
                self.colour,
                self.clique.unwrap_or(0)
            ),
            ViolationKind::OverlappingCliques { vertex, other } => write!(
                f,
                "overlapping cliques in colour {}: vertex {vertex} is in cliques {other} and {}",
                self.colour,
                self.clique.unwrap_or(0)
            ),
        }
    }
}

pub(super) fn validate(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; inst.vertex_count()];
    let mut touched: Vec<usize> = Vec::new();
    for (pos, class) in inst.classes().iter().enumerate() {
        let colour = pos as Colour;
        if class.colour() != colour {
            out.push(Violation {
                colour,
                clique: None,
                kind: ViolationKind::ColourMismatch {
                    found: class.colour(),
                },
            });
        }
        for (ci, clique) in class.cliques().enumerate() {
            let at = |kind| Violation {
                colour,
                clique: Some(ci),
                kind,
            };
            if clique.len() < 2 {
                out.push(at(ViolationKind::TrivialClique { size: clique.len() }));
            }
            for (i, &v) in clique.iter().enumerate() {
                if i > 0 && clique[i - 1] == v {
                    out.push(at(ViolationKind::DuplicateVertex(v)));
                    continue;
                }
                let Some(slot) = owner.get_mut(v as usize) else {
                    out.push(at(ViolationKind::VertexOutOfRange(v)));
                    continue;
                };
                match *slot {
                    Some(other) => out.push(at(ViolationKind::OverlappingCliques { vertex: v, other })),
                    None => {
                        *slot = Some(ci);
                        touched.push(v as usize);
                    }
                }
            }
        }
        for v in touched.drain(..) {
            owner[v] = None;
        }
    }
    out
}
