use thiserror::Error;

use crate::graph::{Colour, EdgePair, Vertex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range (vertex_count = {vertex_count})")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },

    #[error("colour {colour} out of range (n = {n})")]
    ColourOutOfRange { colour: Colour, n: usize },

    #[error("a pair needs two distinct endpoints, got {0} twice")]
    LoopPair(Vertex),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid rainbow matching: {0}")]
    InvalidRainbow(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("matching is not maximal: {pair} in colour {colour} extends it")]
    NotMaximal { pair: EdgePair, colour: Colour },

    #[error("colour {0} is already used by the matching")]
    ColourInUse(Colour),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible generator spec: {0}")]
    Infeasible(String),

    #[error("invalid latin square: {0}")]
    InvalidLatinSquare(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
