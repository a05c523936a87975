//! graph6 text encoding (short form, order below 63).
//!
//! Format reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>

use std::io::BufRead;

use thiserror::Error;

use super::{Graph, MAX_ORDER};

const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed graph6: {0}")]
    MalformedEncoding(String),
    #[error("graph6 order {0} is not supported (maximum {MAX_ORDER})")]
    UnsupportedOrder(usize),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
    #[error("read failed: {0}")]
    Io(String),
}

fn malformed(msg: impl Into<String>) -> Graph6Error {
    Graph6Error::MalformedEncoding(msg.into())
}

/// Parses a single graph6 record. A leading `>>graph6<<` header and
/// surrounding whitespace are accepted.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let text = text.trim_ascii();
    let (&first, body) = text.split_first().ok_or_else(|| malformed("empty input"))?;
    if !(63..=126).contains(&first) {
        return Err(malformed(format!("byte {first} outside 63..=126")));
    }
    if first == 126 {
        // long form: order follows in 3 (or 6) more bytes, always >= 63
        let n = body
            .get(..3)
            .filter(|b| b.iter().all(|c| (63..=125).contains(c)))
            .map(|b| b.iter().fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize))
            .unwrap_or(usize::MAX);
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let n = (first - 63) as usize;
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(format!(
            "order {n} needs {expected} edge bytes, found {}",
            body.len()
        )));
    }
    if let Some(&bad) = body.iter().find(|c| !(63..=126).contains(*c)) {
        return Err(malformed(format!("byte {bad} outside 63..=126")));
    }
    let mut g = Graph::empty(n).map_err(|_| Graph6Error::UnsupportedOrder(n))?;
    let bit = |k: usize| ((body[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.set_edge(u, v);
            }
            k += 1;
        }
    }
    if (bit_count..expected * 6).any(bit) {
        return Err(malformed("non-zero padding bits"));
    }
    Ok(g)
}

/// Encodes under the graph's own labelling.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(63 + n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// One successfully parsed record of a batch file.
#[derive(Debug, Clone)]
pub struct Graph6Line {
    /// 1-based line number in the source.
    pub line: usize,
    pub graph: Graph,
}

/// Reads a graph6 file, one graph per line; blank lines are skipped and a
/// header is allowed on the first line.
///
/// With `lenient`, unparseable lines are returned in the second vector
/// instead of aborting the read.
pub fn read_graph6_lines<R: BufRead>(
    reader: R,
    lenient: bool,
) -> Result<(Vec<Graph6Line>, Vec<Graph6Error>), Graph6Error> {
    let mut graphs = Vec::new();
    let mut skipped = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Graph6Error::Io(e.to_string()))?;
        let mut text = line.as_bytes();
        if i == 0 {
            text = text.strip_prefix(HEADER).unwrap_or(text);
        }
        if text.trim_ascii().is_empty() {
            continue;
        }
        match parse_graph6(text) {
            Ok(graph) => graphs.push(Graph6Line { line: i + 1, graph }),
            Err(e) => {
                let err = Graph6Error::Line {
                    line: i + 1,
                    source: Box::new(e),
                };
                if lenient {
                    skipped.push(err);
                } else {
                    return Err(err);
                }
            }
        }
    }
    Ok((graphs, skipped))
}
