//! graph6 and JSON edge-list serialisation, and the run report schema.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Parses one graph6 record. Accepts an optional `>>graph6<<` header and a
/// single trailing newline.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let mut pos = if text.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let mut end = bytes.len();
    if bytes[..end].ends_with(b"\r\n") {
        end -= 2;
    } else if bytes[..end].ends_with(b"\n") {
        end -= 1;
    }
    let body = &bytes[..end];

    let sextet = |i: usize| -> Result<u64> {
        match body.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
            Some(&b) => Err(parse_err(
                i,
                format!("byte 0x{b:02x} outside graph6 range 63..=126"),
            )),
            None => Err(parse_err(i, "unexpected end of input")),
        }
    };

    let first = sextet(pos)?;
    let order = if first < 63 {
        pos += 1;
        first
    } else if sextet(pos + 1)? < 63 {
        let mut n = 0;
        for i in 1..=3 {
            n = (n << 6) | sextet(pos + i)?;
        }
        pos += 4;
        n
    } else {
        let mut n = 0;
        for i in 2..=7 {
            n = (n << 6) | sextet(pos + i)?;
        }
        pos += 8;
        n
    } as usize;

    let bits = order * order.saturating_sub(1) / 2;
    let data_len = bits.div_ceil(6);
    if body.len() < pos + data_len {
        return Err(parse_err(
            body.len(),
            format!("expected {data_len} data bytes for {order} vertices"),
        ));
    }
    if body.len() > pos + data_len {
        return Err(parse_err(
            pos + data_len,
            "trailing bytes after graph6 record",
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            let byte = sextet(pos + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = sextet(pos + k / 6)?;
        let pad_mask = (1u64 << (6 - k % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(parse_err(pos + k / 6, "non-zero padding bits"));
        }
    }
    Graph::from_edges(order, edges)
}

/// Canonical graph6 text: no header, one trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out.push(b'\n');
    String::from_utf8(out).expect("graph6 is printable ascii")
}

/// JSON edge-list document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeListDocument {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<BTreeMap<String, serde_json::Value>>,
}

impl EdgeListDocument {
    pub fn from_graph(g: &Graph) -> Self {
        EdgeListDocument {
            n: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(<[String]>::to_vec),
            meta: None,
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.meta
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_owned(), value.into());
        self
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let schema = |field: String, message: String| Error::Schema { field, message };
        let mut seen = std::collections::HashSet::new();
        for (i, &[u, v]) in self.edges.iter().enumerate() {
            let field = format!("edges[{i}]");
            if u == v {
                return Err(schema(field, format!("self-loop at vertex {u}")));
            }
            if u > v {
                return Err(schema(field, format!("expected u < v, got [{u}, {v}]")));
            }
            if v >= self.n {
                return Err(schema(
                    field,
                    format!("vertex {v} out of range for n = {}", self.n),
                ));
            }
            if !seen.insert((u, v)) {
                return Err(schema(field, format!("duplicate edge [{u}, {v}]")));
            }
        }
        let g = Graph::from_edges(self.n, self.edges.iter().map(|&[u, v]| (u, v)))?;
        match &self.labels {
            Some(l) if l.len() != self.n => Err(schema(
                "labels".into(),
                format!("expected {} labels, got {}", self.n, l.len()),
            )),
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }
}

pub fn parse_edgelist_json(text: &str) -> Result<Graph> {
    let doc: EdgeListDocument = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.contains("field"))
            .unwrap_or("document")
            .to_owned();
        Error::Schema {
            field,
            message: msg,
        }
    })?;
    doc.to_graph()
}

/// Compact JSON with edges in lexicographic order.
pub fn write_edgelist_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeListDocument::from_graph(g)).expect("edge list serialises")
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_edgelist_json(text)
    } else {
        parse_graph6(text)
    }
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph_text(&text)
}

/// Persistent record of one CLI run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command_line: Vec<String>,
    /// Input name to SHA-256 hex digest.
    pub input_digests: BTreeMap<String, String>,
    pub entries: Vec<serde_json::Value>,
    pub timings_ms: BTreeMap<String, u64>,
}
