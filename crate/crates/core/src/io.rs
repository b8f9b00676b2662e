//! Text formats: the canonical instance file and matching files.
//!
//! Instance files are JSON objects with exactly the fields `n`,
//! `vertex_count` and `classes`; each class is `{"colour": c, "cliques":
//! [[v, ...], ...]}`. The writer emits one canonical layout, so equal
//! instances serialize to identical bytes.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{ColourClass, Colour, Instance, RainbowMatching, Vertex};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: u64,
    vertex_count: u64,
    classes: Vec<RawClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    colour: u64,
    cliques: Vec<Vec<u64>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        position: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn at(position: String, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

// Colour and vertex ids are u32 internally; reject anything larger up front.
const ID_LIMIT: u64 = u32::MAX as u64;
/// Largest `vertex_count` accepted from a file. Per-vertex tables are dense,
/// so a bigger count would allocate gigabytes for a few bytes of input.
pub const VERTEX_COUNT_LIMIT: u64 = 1 << 26;

/// Parses and validates an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(json_error)?;
    if raw.n > ID_LIMIT {
        return Err(at("n".into(), format!("n = {} is too large", raw.n)));
    }
    if raw.vertex_count > VERTEX_COUNT_LIMIT {
        return Err(at(
            "vertex_count".into(),
            format!(
                "vertex_count = {} exceeds the limit {VERTEX_COUNT_LIMIT}",
                raw.vertex_count
            ),
        ));
    }
    if raw.classes.len() as u64 != raw.n {
        return Err(at(
            "classes".into(),
            format!("expected {} classes, found {}", raw.n, raw.classes.len()),
        ));
    }
    let vertex_count = raw.vertex_count as usize;
    let mut owner: Vec<Option<usize>> = vec![None; vertex_count];
    let mut classes = Vec::with_capacity(raw.classes.len());
    for (i, class) in raw.classes.iter().enumerate() {
        if class.colour != i as u64 {
            return Err(at(
                format!("classes[{i}].colour"),
                format!("expected colour {i}, found {}", class.colour),
            ));
        }
        for (k, clique) in class.cliques.iter().enumerate() {
            let pos = || format!("classes[{i}].cliques[{k}]");
            if clique.len() < 2 {
                return Err(at(pos(), format!("trivial clique of size {}", clique.len())));
            }
            for &v in clique {
                if v >= raw.vertex_count {
                    return Err(at(
                        pos(),
                        format!("vertex {v} out of range (vertex_count = {})", raw.vertex_count),
                    ));
                }
                match owner[v as usize] {
                    Some(other) if other == k => {
                        return Err(at(pos(), format!("duplicate vertex {v}")));
                    }
                    Some(other) => {
                        return Err(at(
                            pos(),
                            format!("overlapping cliques in colour {i}: vertex {v} also in clique {other}"),
                        ));
                    }
                    None => owner[v as usize] = Some(k),
                }
            }
        }
        for clique in &class.cliques {
            for &v in clique {
                owner[v as usize] = None;
            }
        }
        let cliques = class
            .cliques
            .iter()
            .map(|c| c.iter().map(|&v| v as Vertex).collect::<Vec<_>>());
        classes.push(ColourClass::new(i as Colour, cliques));
    }
    let inst = Instance::new_unchecked(vertex_count, classes);
    // the positional checks above cover every invariant; this is the backstop
    if let Some(v) = inst.validate().into_iter().next() {
        return Err(at("classes".into(), v.to_string()));
    }
    Ok(inst)
}

/// Canonical text form of an instance, newline terminated.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::with_capacity(64 + inst.classes().iter().map(|c| c.cover() * 4).sum::<usize>());
    let _ = write!(
        out,
        "{{\n  \"n\": {},\n  \"vertex_count\": {},\n  \"classes\": [",
        inst.n(),
        inst.vertex_count()
    );
    for (i, class) in inst.classes().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "\n    {{\"colour\": {}, \"cliques\": [", class.colour());
        for (k, clique) in class.cliques().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push('[');
            for (j, v) in clique.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push(']');
        }
        out.push_str("]}");
    }
    if inst.n() > 0 {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

#[derive(Deserialize)]
struct RawRainbow {
    pairs: Vec<[u64; 2]>,
    colours: Vec<u64>,
}

/// Reads a rainbow matching from any JSON object with `pairs` and `colours`
/// arrays (solver result files qualify). Only the shape is checked here.
pub fn parse_rainbow(text: &str) -> Result<RainbowMatching> {
    let raw: RawRainbow = serde_json::from_str(text).map_err(json_error)?;
    let mut rm = RainbowMatching::default();
    for (i, [x, y]) in raw.pairs.iter().copied().enumerate() {
        if x > ID_LIMIT || y > ID_LIMIT {
            return Err(at(format!("pairs[{i}]"), "vertex id too large"));
        }
        let pair = crate::graph::EdgePair::new(x as Vertex, y as Vertex)
            .map_err(|e| at(format!("pairs[{i}]"), e.to_string()))?;
        rm.pairs.push(pair);
    }
    for (i, &c) in raw.colours.iter().enumerate() {
        if c > ID_LIMIT {
            return Err(at(format!("colours[{i}]"), "colour id too large"));
        }
        rm.colours.push(c as Colour);
    }
    Ok(rm)
}

pub fn write_rainbow(rm: &RainbowMatching) -> String {
    let mut s = serde_json::to_string(rm).expect("rainbow matching serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_double_k4, gen_triangle_extremal};

    #[test]
    fn huge_vertex_count_is_rejected() {
        let text = r#"{"n":0,"vertex_count":4000000000,"classes":[]}"#;
        match parse_instance(text) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, "vertex_count"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let g = gen_double_k4();
        let text = write_instance(&g);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn canonical_layout() {
        let g = gen_triangle_extremal(2).unwrap();
        assert_eq!(
            write_instance(&g),
            "{\n  \"n\": 2,\n  \"vertex_count\": 3,\n  \"classes\": [\n    {\"colour\": 0, \"cliques\": [[0,1,2]]},\n    {\"colour\": 1, \"cliques\": [[0,1,2]]}\n  ]\n}\n"
        );
    }

    #[test]
    fn unsorted_input_canonicalizes() {
        let text = r#"{"n":1,"vertex_count":6,"classes":[{"colour":0,"cliques":[[5,3],[2,0,1]]}]}"#;
        let g = parse_instance(text).unwrap();
        assert!(write_instance(&g).contains("[[0,1,2],[3,5]]"));
    }

    fn err_position(text: &str) -> String {
        match parse_instance(text) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn positional_errors() {
        assert_eq!(
            err_position(r#"{"n":1,"vertex_count":4,"classes":[{"colour":0,"cliques":[[0,1],[2]]}]}"#),
            "classes[0].cliques[1]"
        );
        assert_eq!(
            err_position(r#"{"n":1,"vertex_count":4,"classes":[{"colour":0,"cliques":[[0,1],[1,2]]}]}"#),
            "classes[0].cliques[1]"
        );
        assert_eq!(
            err_position(r#"{"n":1,"vertex_count":2,"classes":[{"colour":0,"cliques":[[0,2]]}]}"#),
            "classes[0].cliques[0]"
        );
        assert_eq!(
            err_position(r#"{"n":2,"vertex_count":2,"classes":[{"colour":0,"cliques":[[0,1]]}]}"#),
            "classes"
        );
        assert_eq!(
            err_position(r#"{"n":1,"vertex_count":2,"classes":[{"colour":3,"cliques":[[0,1]]}]}"#),
            "classes[0].colour"
        );
        assert_eq!(
            err_position(r#"{"n":1,"vertex_count":3,"classes":[{"colour":0,"cliques":[[0,1,1]]}]}"#),
            "classes[0].cliques[0]"
        );
        assert!(err_position("{\n  \"n\": 1,\n  \"bogus\": 2\n}").starts_with("line 3"));
        assert!(err_position("[1,2").starts_with("line 1"));
    }

    #[test]
    fn rainbow_files() {
        let rm = parse_rainbow(r#"{"size":1,"optimal":true,"pairs":[[3,1]],"colours":[0]}"#).unwrap();
        assert_eq!(rm.pairs[0].a(), 1);
        assert_eq!(parse_rainbow(&write_rainbow(&rm)).unwrap(), rm);
        assert!(parse_rainbow(r#"{"pairs":[[2,2]],"colours":[0]}"#).is_err());
        assert!(parse_rainbow(r#"{"pairs":[[1,2]]}"#).is_err());
    }
}
