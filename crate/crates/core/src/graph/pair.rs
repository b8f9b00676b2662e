use std::fmt;

use serde::{Deserialize, Serialize};

use super::Vertex;
use crate::error::{Error, Result};

/// Unordered vertex pair, stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[Vertex; 2]", try_from = "[Vertex; 2]")]
pub struct EdgePair {
    a: Vertex,
    b: Vertex,
}

impl EdgePair {
    pub fn new(x: Vertex, y: Vertex) -> Result<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(EdgePair { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(EdgePair { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(Error::LoopPair(x)),
        }
    }

    /// Panics when `x == y`; for call sites where distinctness is structural.
    pub(crate) fn of(x: Vertex, y: Vertex) -> Self {
        Self::new(x, y).expect("pair endpoints must differ")
    }

    #[inline]
    pub fn a(&self) -> Vertex {
        self.a
    }

    #[inline]
    pub fn b(&self) -> Vertex {
        self.b
    }

    #[inline]
    pub fn endpoints(&self) -> [Vertex; 2] {
        [self.a, self.b]
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint opposite `v`, if `v` is an endpoint.
    pub fn other(&self, v: Vertex) -> Option<Vertex> {
        if v == self.a {
            Some(self.b)
        } else if v == self.b {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn touches(&self, other: &EdgePair) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<EdgePair> for [Vertex; 2] {
    fn from(p: EdgePair) -> Self {
        [p.a, p.b]
    }
}

impl TryFrom<[Vertex; 2]> for EdgePair {
    type Error = Error;

    fn try_from(value: [Vertex; 2]) -> Result<Self> {
        EdgePair::new(value[0], value[1])
    }
}
