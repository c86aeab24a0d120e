//! Edge-list text format.
//!
//! ```text
//! n m
//! u v
//! ...
//! ```
//!
//! Vertex ids are 0-based and whitespace separated; blank lines are ignored.
//! A weights file holds one positive integer per line, line `i` being the
//! weight of vertex `i`.

use std::io::{BufRead, Write};

use super::{Graph, WeightedGraph};
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse().map_err(|_| parse_err(line, format!("`{tok}` is not a vertex count/id")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(line, format!("unexpected trailing field `{extra}`")));
    }
    Ok((a, b))
}

/// Line-by-line edge reader. The header is parsed eagerly; edges are yielded
/// one at a time without buffering the edge set.
pub struct EdgeReader<R> {
    lines: std::io::Lines<R>,
    line_no: usize,
    n: usize,
    m: usize,
    seen: usize,
}

impl<R: BufRead> EdgeReader<R> {
    pub fn new(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let mut line_no = 0;
        loop {
            line_no += 1;
            let line = lines.next().ok_or_else(|| parse_err(line_no, "missing `n m` header"))??;
            if line.trim().is_empty() {
                continue;
            }
            let (n, m) = parse_pair(&line, line_no)?;
            return Ok(Self { lines, line_no, n, m, seen: 0 });
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count announced by the header.
    pub fn m(&self) -> usize {
        self.m
    }
}

impl<R: BufRead> Iterator for EdgeReader<R> {
    type Item = Result<(usize, usize)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = match self.lines.next() {
                None if self.seen != self.m => {
                    let msg = format!("header announces {} edges, found {}", self.m, self.seen);
                    self.seen = self.m;
                    return Some(Err(parse_err(self.line_no, msg)));
                }
                None => return None,
                Some(Err(e)) => return Some(Err(e.into())),
                Some(Ok(line)) => line,
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            let edge = parse_pair(&line, self.line_no).and_then(|(u, v)| {
                if u >= self.n || v >= self.n {
                    Err(Error::VertexOutOfRange { u, v, n: self.n })
                } else {
                    Ok((u, v))
                }
            });
            self.seen += 1;
            return Some(edge);
        }
    }
}

pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph> {
    let edges = EdgeReader::new(reader)?;
    let n = edges.n();
    let edges = edges.collect::<Result<Vec<_>>>()?;
    Graph::new(n, &edges)
}

pub fn read_weights<R: BufRead>(reader: R) -> Result<Vec<u64>> {
    let mut weights = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let w: u64 = text
            .parse()
            .map_err(|_| parse_err(i + 1, format!("`{text}` is not a positive integer")))?;
        if w == 0 {
            return Err(parse_err(i + 1, "weights must be positive"));
        }
        weights.push(w);
    }
    Ok(weights)
}

/// Writes the canonical form: header, then edges sorted with `u < v`.
pub fn write_graph<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_weights<W: Write>(wg: &WeightedGraph, mut out: W) -> Result<()> {
    for w in wg.weights() {
        writeln!(out, "{w}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;

    #[test]
    fn canonical_roundtrip() {
        let g = petersen();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("10 15\n0 1\n0 4\n0 5\n"));
        assert_eq!(read_graph(&buf[..]).unwrap(), g);
    }

    #[test]
    fn reader_rejects_bad_input() {
        assert!(matches!(read_graph(&b"3 1\n0 3\n"[..]), Err(Error::VertexOutOfRange { .. })));
        assert!(matches!(read_graph(&b"3 2\n0 1\n"[..]), Err(Error::Parse { .. })));
        assert!(matches!(read_graph(&b"3 1\n0 x\n"[..]), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_graph(&b""[..]), Err(Error::Parse { .. })));
        assert!(matches!(read_graph(&b"2 1\n1 1\n"[..]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn blank_lines_are_ignored() {
        let g = read_graph(&b"\n3 2\n0 1\n\n1 2\n"[..]).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn weights_file() {
        assert_eq!(read_weights(&b"3\n1\n\n7\n"[..]).unwrap(), vec![3, 1, 7]);
        assert!(read_weights(&b"3\n0\n"[..]).is_err());
        assert!(read_weights(&b"-2\n"[..]).is_err());
    }
}
