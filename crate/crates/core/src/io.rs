//! File formats: strict JSON codecs for graphs, hypergraphs, shadows and
//! certificates, plus the graph6 format for graphs.
//!
//! Parsing is strict: duplicate edges, out-of-range vertices, self-loops
//! and cardinalities outside `R` are errors here, even where the in-memory
//! constructors would quietly absorb them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::embed::BergeEmbedding;
use crate::graph::Graph;
use crate::hypergraph::{Hypergraph, ShadowGraph};
use crate::Error;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    #[serde(rename = "R")]
    r: Vec<usize>,
    edges: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ShadowJson {
    n: usize,
    edges: Vec<(usize, usize)>,
    covers: Vec<Vec<usize>>,
}

/// Accepts JSON (`{"n": …, "edges": …}`) or a graph6 string.
pub fn parse_graph(text: &str) -> Result<Graph, Error> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        parse_graph_json(trimmed)
    } else {
        decode_graph6(trimmed)
    }
}

fn parse_graph_json(text: &str) -> Result<Graph, Error> {
    let raw: GraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    let mut seen = BTreeSet::new();
    for &(u, v) in &raw.edges {
        if u == v {
            return Err(Error::Parse(format!("self-loop at vertex {u}")));
        }
        if u >= raw.n || v >= raw.n {
            return Err(Error::Parse(format!(
                "edge ({u},{v}) out of range for n={}",
                raw.n
            )));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse(format!("duplicate edge ({u},{v})")));
        }
    }
    Graph::from_edges(raw.n, &raw.edges).map_err(|e| Error::Parse(e.to_string()))
}

/// Emits `{"n": …, "edges": …}` with edges sorted lexicographically.
pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphJson {
        n: g.n(),
        edges: g.edges(),
    })
    .expect("graph serialization cannot fail")
}

/// Strict hypergraph parser: `{"n": …, "R": […], "edges": […]}`.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, Error> {
    let raw: HypergraphJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("hypergraph JSON: {e}")))?;
    let r: BTreeSet<usize> = raw.r.iter().copied().collect();
    let mut seen = BTreeSet::new();
    for edge in &raw.edges {
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse(format!("repeated vertex in hyperedge {edge:?}")));
        }
        if let Some(&v) = sorted.iter().find(|&&v| v >= raw.n) {
            return Err(Error::Parse(format!(
                "hyperedge {edge:?} has vertex {v} out of range for n={}",
                raw.n
            )));
        }
        if !r.contains(&sorted.len()) {
            return Err(Error::Parse(format!(
                "hyperedge {edge:?} has cardinality {} outside R={:?}",
                sorted.len(),
                raw.r
            )));
        }
        if !seen.insert(sorted) {
            return Err(Error::Parse(format!("duplicate hyperedge {edge:?}")));
        }
    }
    Hypergraph::new(raw.n, r, raw.edges).map_err(|e| Error::Parse(e.to_string()))
}

/// Emits `{"n": …, "R": …, "edges": …}`, edges sorted lexicographically.
pub fn hypergraph_to_json(h: &Hypergraph) -> serde_json::Value {
    serde_json::to_value(HypergraphJson {
        n: h.n(),
        r: h.r().iter().copied().collect(),
        edges: h.edges().iter().map(|e| e.vertices().to_vec()).collect(),
    })
    .expect("hypergraph serialization cannot fail")
}

/// Shadow with covering lists, aligned index-by-index with `edges`.
pub fn shadow_to_json(s: &ShadowGraph) -> serde_json::Value {
    let edges: Vec<(usize, usize)> = s.covers().keys().copied().collect();
    let covers: Vec<Vec<usize>> = s.covers().values().cloned().collect();
    serde_json::to_value(ShadowJson {
        n: s.graph().n(),
        edges,
        covers,
    })
    .expect("shadow serialization cannot fail")
}

/// Certificate as `{"i": {gv: hv}, "f": {gedge: hyperedge}}` with string
/// keys (JSON objects require them). Graph edges are indexed in the
/// lexicographic order of [`Graph::edges`].
pub fn embedding_to_json(emb: &BergeEmbedding) -> serde_json::Value {
    let i: BTreeMap<String, usize> = emb
        .vertex_map
        .iter()
        .enumerate()
        .map(|(v, &x)| (v.to_string(), x))
        .collect();
    let f: BTreeMap<String, usize> = emb
        .edge_map
        .iter()
        .enumerate()
        .map(|(e, &x)| (e.to_string(), x))
        .collect();
    serde_json::json!({ "i": i, "f": f })
}

pub fn embedding_from_json(value: &serde_json::Value) -> Result<BergeEmbedding, Error> {
    #[derive(Deserialize)]
    struct EmbJson {
        i: BTreeMap<String, usize>,
        f: BTreeMap<String, usize>,
    }
    let raw: EmbJson = serde_json::from_value(value.clone())
        .map_err(|e| Error::Parse(format!("embedding JSON: {e}")))?;
    let dense = |m: &BTreeMap<String, usize>, what: &str| -> Result<Vec<usize>, Error> {
        let mut out = vec![usize::MAX; m.len()];
        for (k, &v) in m {
            let idx: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} key {k:?}")))?;
            if idx >= out.len() || out[idx] != usize::MAX {
                return Err(Error::Parse(format!("{what} keys are not dense")));
            }
            out[idx] = v;
        }
        Ok(out)
    };
    Ok(BergeEmbedding {
        vertex_map: dense(&raw.i, "vertex map")?,
        edge_map: dense(&raw.f, "edge map")?,
    })
}

const G6_MAX_SHORT: usize = 62;
const G6_MAX_LONG: usize = 258047;

/// Encodes in graph6 (short or 4-byte size form; larger graphs error).
pub fn encode_graph6(g: &Graph) -> Result<String, Error> {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= G6_MAX_SHORT {
        bytes.push(63 + n as u8);
    } else if n <= G6_MAX_LONG {
        bytes.push(b'~');
        bytes.push(63 + ((n >> 12) & 63) as u8);
        bytes.push(63 + ((n >> 6) & 63) as u8);
        bytes.push(63 + (n & 63) as u8);
    } else {
        return Err(Error::Validation(format!(
            "graph6 encoding supports at most {G6_MAX_LONG} vertices, got {n}"
        )));
    }
    let mut bits: Vec<bool> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    while !bits.len().is_multiple_of(6) {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                value |= 1 << (5 - k);
            }
        }
        bytes.push(63 + value);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are ASCII"))
}

/// Decodes graph6, accepting the optional `>>graph6<<` header. Strict:
/// the byte count must match and padding bits must be zero.
pub fn decode_graph6(text: &str) -> Result<Graph, Error> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    let value = |b: u8, pos: usize| -> Result<usize, Error> {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!(
                "invalid graph6 byte 0x{b:02x} at position {pos}"
            )));
        }
        Ok((b - 63) as usize)
    };
    let (n, body) = if bytes[0] == b'~' {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        if bytes[1] == b'~' {
            return Err(Error::Parse(
                "graph6 8-byte size form is not supported".into(),
            ));
        }
        let n = (value(bytes[1], 1)? << 12) | (value(bytes[2], 2)? << 6) | value(bytes[3], 3)?;
        (n, &bytes[4..])
    } else {
        (value(bytes[0], 0)?, &bytes[1..])
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let expected_bytes = bit_count.div_ceil(6);
    if body.len() != expected_bytes {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expected_bytes} for n={n}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(body.len() * 6);
    for (pos, &b) in body.iter().enumerate() {
        let v = value(b, pos)?;
        for k in 0..6 {
            bits.push(v >> (5 - k) & 1 == 1);
        }
    }
    if bits[bit_count..].iter().any(|&b| b) {
        return Err(Error::Parse("nonzero padding bits in graph6 body".into()));
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                g.add_edge(i, j);
            }
            idx += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_json_round_trip() {
        let text = r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g, Graph::complete(3));
        let emitted = graph_to_json(&g).to_string();
        assert_eq!(parse_graph(&emitted).unwrap(), g);
        assert_eq!(emitted, r#"{"edges":[[0,1],[0,2],[1,2]],"n":3}"#);
    }

    #[test]
    fn graph_json_rejects_bad_input() {
        assert!(matches!(
            parse_graph(r#"{"n":3,"edges":[[0,0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_graph(r#"{"n":3,"edges":[[0,1],[1,0]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_graph(r#"{"n":2,"edges":[[0,5]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_graph(r#"{"n":}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn hypergraph_json_round_trip_and_strictness() {
        let text = r#"{"n":4,"R":[3],"edges":[[0,1,2],[0,1,3]]}"#;
        let h = parse_hypergraph(text).unwrap();
        assert_eq!(h.edge_count(), 2);
        let emitted = hypergraph_to_json(&h).to_string();
        assert_eq!(parse_hypergraph(&emitted).unwrap(), h);

        // duplicates are an error at the I/O boundary
        assert!(parse_hypergraph(r#"{"n":4,"R":[3],"edges":[[0,1,2],[2,1,0]]}"#).is_err());
        assert!(parse_hypergraph(r#"{"n":4,"R":[3],"edges":[[0,1]]}"#).is_err());
        assert!(parse_hypergraph(r#"{"n":4,"R":[3],"edges":[[0,1,1]]}"#).is_err());
        assert!(parse_hypergraph(r#"{"n":4,"R":[3],"edges":[[0,1,9]]}"#).is_err());
    }

    #[test]
    fn graph6_known_string() {
        // "D?{" is the 5-vertex star at vertex 4
        let g = decode_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(encode_graph6(&g).unwrap(), "D?{");
    }

    #[test]
    fn graph6_header_and_small_cases() {
        assert_eq!(decode_graph6(">>graph6<<A_").unwrap().edge_count(), 1);
        assert_eq!(encode_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(decode_graph6("?").unwrap().n(), 0);
        let k1 = decode_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn graph6_strictness() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("D?").is_err()); // truncated body
        assert!(decode_graph6("D?{?").is_err()); // trailing bytes
        assert!(decode_graph6("A").is_err()); // missing body
        assert!(decode_graph6("B!").is_err()); // byte below 63
                                               // n=2 has one bit; a body byte with padding bits set is rejected
        assert!(decode_graph6("A?").is_ok());
        assert!(decode_graph6("A~").is_err());
    }

    #[test]
    fn graph6_long_form() {
        let g = Graph::path(100);
        let s = encode_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(decode_graph6(&s).unwrap(), g);
    }

    #[test]
    fn embedding_json_round_trip() {
        let emb = BergeEmbedding {
            vertex_map: vec![4, 0, 2],
            edge_map: vec![1, 0],
        };
        let v = embedding_to_json(&emb);
        assert_eq!(v["i"]["0"], 4);
        assert_eq!(embedding_from_json(&v).unwrap(), emb);
    }
}
