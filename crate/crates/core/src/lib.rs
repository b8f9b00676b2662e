//! Rainbow matchings in edge-coloured multigraphs whose colour classes are
//! disjoint unions of cliques.
//!
//! The crate holds the instance model ([`Instance`]), generators for the
//! standard extremal constructions and seeded random ensembles, exact and
//! heuristic solvers, and executable checks of the horn and
//! auxiliary-matching machinery.

pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod rng;
pub mod solvers;
pub mod verifiers;

pub use error::{Error, Result};
pub use graph::{
    Colour, ColourClass, EdgePair, Instance, Matching, Maximality, RainbowEdge, RainbowMatching,
    RainbowViolation, Vertex, VertexMask, Violation, ViolationKind,
};
