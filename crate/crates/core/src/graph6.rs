//! Short-form graph6 encoding (graphs with at most 62 vertices).
//!
//! The header byte is `n + 63`; the upper triangle of the adjacency matrix
//! follows column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six
//! bits per byte, most significant bit first, zero-padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 62;

fn byte_count(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::TooLarge(n));
    }
    let mut bytes = vec![0u8; byte_count(n)];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                bytes[bit / 6] |= 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    let mut out = String::with_capacity(bytes.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(bytes.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let raw = text.as_bytes();
    let Some((&header, body)) = raw.split_first() else {
        return Err(Error::MalformedGraph6("empty input".into()));
    };
    for &b in raw {
        if !(63..=126).contains(&b) {
            return Err(Error::MalformedGraph6(format!(
                "byte {b:#04x} outside the printable range 63..=126"
            )));
        }
    }
    if header == 126 {
        return Err(Error::MalformedGraph6(
            "long-form headers (n > 62) are not supported".into(),
        ));
    }
    let n = (header - 63) as usize;
    let expected = byte_count(n);
    if body.len() != expected {
        return Err(Error::MalformedGraph6(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut pairs = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if (body[bit / 6] - 63) >> (5 - bit % 6) & 1 == 1 {
                pairs.push((i, j));
            }
            bit += 1;
        }
    }
    // padding bits must be zero, otherwise two strings would decode to one graph
    while bit < expected * 6 {
        if (body[bit / 6] - 63) >> (5 - bit % 6) & 1 == 1 {
            return Err(Error::MalformedGraph6("non-zero padding bits".into()));
        }
        bit += 1;
    }
    Graph::new(n, &pairs)
}
